"""Typing maps, typed atlases, atlas words, and automorphisms extended from a chamber.

A typed atlas is given lazily by three operations: ``tau(C)`` (standard
type to t-type inside C), ``letter(C1, C2)`` for adjacent chambers and
``step(C, i, g)``, its inverse.  Labeled atlases store, per rank-1 level
class, a labeling of the class's columns by the group of its t-type; the
group acts on labels by left multiplication.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .automorphisms import (
    Automorphism, GraphTwist, Perm, Translation, apply_perm, compose, identity_perm, inverse,
    inversion_twist, is_graph_automorphism,
)
from .building import BVertex, Building, Chamber, Gallery, LevelClassId
from .errors import DomainError, InputError, InternalError
from .graph_product import DefiningGraph, Element, element_to_json
from .groupoids import Groupoid
from .report import Report

AtlasLetter = tuple[int, int]
AtlasWord = tuple[AtlasLetter, ...]


def _same_group(g: DefiningGraph, a: int, b: int) -> bool:
    Ga, Gb = g.groups[a], g.groups[b]
    if Ga.order != Gb.order:
        return False
    n = Ga.order
    return all(Ga.mul(x, y) == Gb.mul(x, y) for x in range(n) for y in range(n))


class TypedAtlas:
    B: Building

    def tau(self, C: Chamber) -> Perm:
        raise NotImplementedError

    def letter(self, C1: Chamber, C2: Chamber) -> AtlasLetter:
        raise NotImplementedError

    def step(self, C: Chamber, i: int, g: int) -> Chamber:
        raise NotImplementedError

    def ttype(self, v: BVertex, chamber: Chamber | None = None) -> tuple[int, ...]:
        C = chamber if chamber is not None else Chamber(v.rep)
        return apply_perm(self.tau(C), v.type)

    def column_labels(self, cls: LevelClassId) -> list[int]:
        """Labels of the columns relative to the class base chamber (base gets the identity)."""
        g = self.B.g
        (i,) = cls.type
        C0 = Chamber(cls.rep)
        out = [0]
        for e in range(1, g.orders[i]):
            out.append(self.letter(C0, Chamber(g.multiply(cls.rep, ((i, e),))))[1])
        return out

    def to_json(self, radius: int) -> dict:
        B = self.B
        chambers = B.ball(radius)
        classes = sorted({B.level_class(B.vertex(C.label, (i,)))
                          for C in chambers for i in range(B.g.n)})
        return {
            "radius": radius,
            "typing": [{"chamber": element_to_json(C.label), "sigma": list(self.tau(C))}
                       for C in chambers],
            "actions": [{"class": {"rep": element_to_json(c.rep), "type": list(c.type)},
                         "t_type": self.ttype(B.vertex(c.rep, c.type))[0],
                         "column_labels": self.column_labels(c)} for c in classes],
        }


class LabeledAtlas(TypedAtlas):
    """An atlas from a typing rule and a column labeling per rank-1 class.

    ``label(cls, a)`` is the G_{t-type} label of the column reached from
    the class base chamber by the letter (i, a) (a = 0 is the base column).
    """

    def __init__(self, B: Building, tau: Callable[[Chamber], Perm] | None,
                 label: Callable[[LevelClassId, int], int], name: str = "atlas"):
        self.B = B
        self._tau = tau
        self._label = label
        self.name = name
        self._id = identity_perm(B.g.n)
        self._inv_cache: dict = {}

    def tau(self, C):
        return self._id if self._tau is None else self._tau(C)

    def _class_at(self, C: Chamber, i: int) -> tuple[LevelClassId, int]:
        B = self.B
        g = B.g
        cls = B.level_class(B.vertex(C.label, (i,)))
        x = g.retract(g.multiply(g.invert(cls.rep), C.label), (i,))
        return cls, (x[0][1] if x else 0)

    def _column_of_label(self, cls: LevelClassId, target: int) -> int:
        table = self._inv_cache.get(cls)
        if table is None:
            (i,) = cls.type
            table = {self._label(cls, a): a for a in range(self.B.g.orders[i])}
            if len(table) != self.B.g.orders[i]:
                raise DomainError(f"column labeling of {cls} is not a bijection")
            self._inv_cache[cls] = table
        return table[target]

    def letter(self, C1, C2):
        B = self.B
        i = B.adjacency(C1, C2)
        if i is None:
            raise DomainError("atlas letters need adjacent chambers")
        ti = self.tau(C1)[i]
        G = B.g.groups[ti]
        cls, a1 = self._class_at(C1, i)
        _, a2 = self._class_at(C2, i)
        l1, l2 = self._label(cls, a1), self._label(cls, a2)
        return ti, G.mul(l2, G.inv(l1))

    def step(self, C, ti, h):
        B = self.B
        g = B.g
        if not 0 < h < g.orders[ti]:
            raise InputError(f"atlas letter ({ti}, {h}) is not a nonidentity element")
        i = inverse(self.tau(C))[ti]
        cls, a1 = self._class_at(C, i)
        G = g.groups[ti]
        a2 = self._column_of_label(cls, G.mul(h, self._label(cls, a1)))
        d = g.multiply(((i, a2),), g.invert(((i, a1),)) if a1 else ())
        return Chamber(g.multiply(cls.rep, g.multiply(d, g.multiply(g.invert(cls.rep), C.label))))


class PushforwardAtlas(TypedAtlas):
    """``f_*(t, A)``: types and actions carried along the automorphism f."""

    def __init__(self, inner: TypedAtlas, f: Automorphism):
        self.B = inner.B
        self.inner = inner
        self.f = f
        self._finv = f.inverse()

    def tau(self, D):
        C = self._finv(D)
        return compose(self.inner.tau(C), inverse(self.f.sigma(C)))

    def letter(self, D1, D2):
        return self.inner.letter(self._finv(D1), self._finv(D2))

    def step(self, D, i, h):
        return self.f(self.inner.step(self._finv(D), i, h))


def standard_atlas(B: Building) -> LabeledAtlas:
    """The Γ-invariant atlas: g acts on a class by C_x -> C_{x g^-1}."""
    g = B.g

    def label(cls, a):
        (i,) = cls.type
        return g.groups[i].inv(a)

    return LabeledAtlas(B, None, label, "standard")


def inversion_atlas(B: Building, vertices: Iterable[int] | None = None) -> LabeledAtlas:
    """The standard atlas with A'(g) := A(g^-1) on classes of the chosen types (default: order 3)."""
    g = B.g
    chosen = set(vertices) if vertices is not None else {m for m in range(g.n) if g.orders[m] == 3}
    for m in chosen:
        if not g.groups[m].is_abelian():
            raise InputError(f"inversion on vertex {m} needs an abelian group")

    def label(cls, a):
        (i,) = cls.type
        return a if i in chosen else g.groups[i].inv(a)

    return LabeledAtlas(B, None, label, "inversion")


def atlas_from_groupoid(phi: Groupoid, twist: Perm | None = None,
                        seeds: Callable[[LevelClassId, int], int] | None = None) -> LabeledAtlas:
    """Typing tau_C = twist . sigma(phi: C -> base), with column labels from ``seeds``.

    By default a class of standard type {i} and t-type {i'} is labeled as
    in the standard atlas, identifying G_i with G_i' by element index
    (allowed only when the two tables coincide).
    """
    B = phi.B
    g = B.g
    if set(phi.J) != set(range(g.n)):
        raise DomainError("typing needs a groupoid on the whole building")
    tw = tuple(twist) if twist is not None else identity_perm(g.n)
    if not is_graph_automorphism(g, tw):
        raise DomainError(f"twist {tw} is not an order-preserving graph automorphism")
    base = phi.base

    def tau(C):
        return compose(tw, phi.sigma(C, base))

    def label(cls, a):
        if seeds is not None:
            return seeds(cls, a)
        (i,) = cls.type
        ti = tau(Chamber(cls.rep))[i]
        if not _same_group(g, i, ti):
            raise DomainError(f"no default identification of G_{i} with G_{ti}; give seeds")
        return g.groups[i].inv(a)

    return LabeledAtlas(B, tau, label, "groupoid")


# -- words ----------------------------------------------------------------------

def atlas_word(G: Gallery, atlas: TypedAtlas) -> AtlasWord:
    chambers = atlas.B.gallery_chambers(G)
    return tuple(atlas.letter(a, b) for a, b in zip(chambers, chambers[1:]))


def word_chambers(w: Sequence[AtlasLetter], C: Chamber, atlas: TypedAtlas) -> list[Chamber]:
    out = [C]
    for i, h in w:
        out.append(atlas.step(out[-1], i, h))
    return out


def gallery_from_word(w: Sequence[AtlasLetter], C: Chamber, atlas: TypedAtlas) -> Gallery:
    B = atlas.B
    chambers = word_chambers(w, C, atlas)
    letters = []
    for a, b in zip(chambers, chambers[1:]):
        (s,) = B.delta(a, b)
        letters.append(s)
    return Gallery(C, tuple(letters))


def transfer_gallery(atlas1: TypedAtlas, atlas2: TypedAtlas, G: Gallery, start2: Chamber) -> Chamber:
    return word_chambers(atlas_word(G, atlas1), start2, atlas2)[-1]


def random_gallery(g: DefiningGraph, rng: random.Random, start: Element = (), max_len: int = 5) -> Gallery:
    letters = g.letters()
    n = rng.randint(0, max_len)
    return Gallery(Chamber(start), tuple(rng.choice(letters) for _ in range(n)))


def rewrite_gallery(g: DefiningGraph, G: Gallery, rng: random.Random, steps: int = 6,
                    max_len: int = 9) -> Gallery:
    """Apply random moves and inverse moves; the end chamber never changes."""
    from .oracles import move_neighbors
    w = tuple(G.letters)
    for _ in range(steps):
        options = list(move_neighbors(g, w, max(max_len, len(w))))
        if options:
            w = rng.choice(options)
    return Gallery(G.start, w)


# -- extension ----------------------------------------------------------------------

def seed_sigma(atlas1: TypedAtlas, C: Chamber, atlas2: TypedAtlas, Cprime: Chamber) -> Perm:
    """The type-matching chamber map: the vertex of t-type T in C goes to t'-type T in C'."""
    return compose(inverse(atlas2.tau(Cprime)), atlas1.tau(C))


class AtlasExtension(Automorphism):
    """The automorphism taking (C, atlas1) to (C', atlas2), evaluated by word transfer.

    Construction checks, on the gallery ball of the given radius, that
    every adjacent pair maps to an adjacent pair with matching transfer
    (consistency when a chamber is reached twice) and that shared vertices
    receive the same image from both chambers.
    """

    def __init__(self, f_sigma: Perm | None, C: Chamber, Cprime: Chamber, atlas1: TypedAtlas,
                 atlas2: TypedAtlas, radius: int | None = None):
        self.B = atlas1.B
        self.C, self.Cprime = C, Cprime
        self.atlas1, self.atlas2 = atlas1, atlas2
        expected = seed_sigma(atlas1, C, atlas2, Cprime)
        if f_sigma is not None and tuple(f_sigma) != expected:
            raise DomainError("seed does not match t-types of the two atlases")
        self.f_sigma = expected
        self._cache: dict[Chamber, Chamber] = {C: Cprime}
        self.radius = radius
        self.table: dict[Chamber, Chamber] = {}
        if radius is not None:
            self._build(radius)

    def _image(self, D: Chamber) -> Chamber:
        hit = self._cache.get(D)
        if hit is None:
            hit = transfer_gallery(self.atlas1, self.atlas2, self.B.gallery_between(self.C, D),
                                   self.Cprime)
            self._cache[D] = hit
        return hit

    def apply(self, D):
        E = self._image(D)
        return E, compose(inverse(self.atlas2.tau(E)), self.atlas1.tau(D))

    def _build(self, radius: int) -> None:
        B = self.B
        g = B.g
        ball = [Chamber(g.multiply(self.C.label, x)) for x in g.enumerate_ball(radius)]
        inball = set(ball)
        # breadth-first: the first visit fixes the image; later visits must agree
        table = {self.C: self.Cprime}
        frontier = [self.C]
        while frontier:
            nxt = []
            for E in frontier:
                for s in g.letters():
                    D = Chamber(g.multiply(E.label, (s,)))
                    if D not in inball:
                        continue
                    img = self.atlas2.step(table[E], *self.atlas1.letter(E, D))
                    if D in table:
                        if table[D] != img:
                            raise InternalError(f"extension inconsistent at {D}: {table[D]} vs {img}")
                    else:
                        table[D] = img
                        nxt.append(D)
            frontier = nxt
        for D, img in table.items():
            if self._image(D) != img:
                raise InternalError(f"normal-form transfer disagrees with the table at {D}")
        for D in ball:
            for s in g.letters():
                E = Chamber(g.multiply(D.label, (s,)))
                if E in inball:
                    hit = B.chamber_intersection(D, E)
                    for v in hit[1]:
                        a = self._vertex_via(D, v)
                        b = self._vertex_via(E, v)
                        if a != b:
                            raise InternalError(f"vertex {v} has two images {a}, {b}")
        self.table = table

    def _vertex_via(self, D: Chamber, v: BVertex) -> BVertex:
        E, s = self.apply(D)
        return self.B.vertex(E.label, apply_perm(s, v.type))

    def inverse(self):
        return AtlasExtension(None, self.Cprime, self.C, self.atlas2, self.atlas1)

    def __repr__(self):
        return f"AtlasExtension({self.C} -> {self.Cprime})"


def extend_automorphism(f_sigma: Perm | None, C: Chamber, Cprime: Chamber, atlas1: TypedAtlas,
                        atlas2: TypedAtlas, radius: int) -> AtlasExtension:
    return AtlasExtension(f_sigma, C, Cprime, atlas1, atlas2, radius)


# -- validation ---------------------------------------------------------------------

def validate_atlas(atlas: TypedAtlas, radius: int = 1) -> Report:
    """Typing map and local-action properties on the radius ball."""
    B = atlas.B
    g = B.g
    rep = Report("atlas", box={"radius": radius})
    ball = B.ball(radius)
    for C in ball:
        t = atlas.tau(C)
        rep.check("typing_isomorphism", is_graph_automorphism(g, t, check_orders=False), C)
        rep.check("lower_degree", all(g.orders[t[m]] == g.orders[m] for m in range(g.n)), C)
        for s in g.letters():
            D = Chamber(g.multiply(C.label, (s,)))
            td = atlas.tau(D)
            shared = B.chamber_intersection(C, D)[1]
            rep.check("typing_consistent", all(apply_perm(t, v.type) == apply_perm(td, v.type)
                                               for v in shared), (C, D))
            i = s[0]
            for j in B.perp((i,)):
                # level-adjacent rank-1 vertices share their t-type
                rep.check("typing_constant_on_classes", t[j] == td[j], (C, D, j))
    classes = sorted({B.level_class(B.vertex(C.label, (i,))) for C in ball for i in range(g.n)})
    for cls in classes:
        (i,) = cls.type
        C0 = Chamber(cls.rep)
        ti = atlas.tau(C0)[i]
        G = g.groups[ti]
        rep.check("column_count", G.order == g.orders[i], cls)
        labels = atlas.column_labels(cls)
        rep.check("labels_bijective", sorted(labels) == list(range(G.order)), cls)
        column = [Chamber(g.multiply(cls.rep, ((i, e),) if e else ())) for e in range(g.orders[i])]
        for C in column:
            rep.check("class_t_type", atlas.tau(C)[i] == ti, (cls, C))
            for h in range(1, G.order):
                D = atlas.step(C, ti, h)
                rep.check("letter_inverts_step", atlas.letter(C, D) == (ti, h), (cls, C, h))
                rep.check("moves_in_first_factor", B.adjacency(C, D) == i, (cls, C, h))
                for k in range(1, G.order):
                    rep.check("group_action", atlas.step(D, ti, k) == atlas.step(C, ti, G.mul(k, h))
                              if G.mul(k, h) else atlas.step(D, ti, k) == C, (cls, C, h, k))
                for j in B.perp((i,)):
                    for e in range(1, g.orders[j]):
                        s = ((j, e),)
                        Cs = Chamber(g.multiply(C.label, s))
                        tj = atlas.tau(C)[i]
                        rep.check("trivial_on_second_factor",
                                  atlas.step(Cs, tj, h) == Chamber(g.multiply(D.label, s)),
                                  (cls, C, h, s))
    return rep


def letters_agree(a1: TypedAtlas, a2: TypedAtlas, chambers: Iterable[Chamber]) -> Report:
    """Do two atlases have the same typing and letters around the given chambers?"""
    B = a1.B
    rep = Report("atlas_agreement")
    for C in chambers:
        rep.check("typing", a1.tau(C) == a2.tau(C), C)
        for s in B.g.letters():
            D = Chamber(B.g.multiply(C.label, (s,)))
            rep.check("letter", a1.letter(C, D) == a2.letter(C, D), (C, D))
    return rep


def preserves_atlas(lam: Automorphism, atlas: TypedAtlas, chambers: Iterable[Chamber]) -> Report:
    return letters_agree(PushforwardAtlas(atlas, lam), atlas, chambers)


def chamber_holonomy(phi: Groupoid, lam: Automorphism) -> Perm:
    """The chamber automorphism phi(lam C -> C) . lam, as a permutation of vertex ids."""
    C = phi.base
    return compose(phi.sigma(lam(C), C), lam.sigma(C))


# -- commensuration demo ------------------------------------------------------------

@dataclass
class DemoReport:
    name: str
    radius: int
    ball: int
    conjugator: dict
    samples: list[dict] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return bool(self.samples) and all(s["ok"] for s in self.samples) and self.conjugator["ok"]

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok,
                "conjugator_ball": {"radius": self.radius, "chambers": self.ball, **self.conjugator},
                "samples": self.samples, "notes": self.notes}


def twisted_atlas(B: Building, twist: str) -> tuple[TypedAtlas, Automorphism]:
    """The named twisted atlas and the automorphism that produces it from the standard one."""
    g = B.g
    if twist == "none":
        return standard_atlas(B), Translation(B, ())
    if twist == "inversion":
        return inversion_atlas(B), inversion_twist(B)
    if twist == "rotation":
        rot = tuple((m + 1) % g.n for m in range(g.n))
        f = GraphTwist(B, rot)
        return PushforwardAtlas(standard_atlas(B), f), f
    raise InputError(f"unknown twist {twist!r}; expected none, inversion or rotation")


def commensuration_demo(B: Building, twist: str, radius: int = 3, samples: int = 10,
                        seed: int = 0, lattice: Sequence[Element] | None = None) -> DemoReport:
    """Conjugate elements preserving a twisted atlas into Γ.

    The conjugator g takes the twisted atlas at C_* to the standard one at
    C_*.  Each sampled lambda (a translation preserving the twisted atlas,
    checked on the ball) is conjugated and compared with the translation
    by gamma, where C_gamma is the image of C_*, on every chamber of the
    ball (image and vertex permutation).
    """
    g = B.g
    atlas, _ = twisted_atlas(B, twist)
    std = standard_atlas(B)
    star = Chamber(())
    gmap = extend_automorphism(None, star, star, atlas, std, radius)
    ginv = extend_automorphism(None, star, star, std, atlas, radius)
    ball = B.ball(radius)
    # construction above raised on any inconsistency, so reaching here certifies the ball
    conj = {"ok": True, "twist": twist,
            "differs_from_translation": any(gmap.apply(C) != Translation(B, gmap(star).label).apply(C)
                                            for C in ball)}
    if lattice is None:
        rng = random.Random(seed)
        pool = [x for x in g.enumerate_ball(3) if x]
        lattice = rng.sample(pool, min(samples, len(pool)))
    out = DemoReport(f"commensuration:{twist}", radius, len(ball), conj)
    for x in lattice:
        lam = Translation(B, x)
        pres = preserves_atlas(lam, atlas, B.ball(1))
        conjugate = gmap * lam * ginv
        gamma = conjugate(star).label
        T = Translation(B, gamma)
        bad = next((C for C in ball if conjugate.apply(C) != T.apply(C)), None)
        out.samples.append({"lambda": element_to_json(x), "gamma": element_to_json(gamma),
                            "preserves_atlas": pres.ok, "ok": bad is None and pres.ok,
                            "witness": None if bad is None else element_to_json(bad.label)})
    return out
