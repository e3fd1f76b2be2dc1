"""Residue-groupoids, the class order and ascent, and hierarchies of groupoids.

A chamber map between two chambers is encoded by a permutation ``sigma``
of the vertex ids: the vertex of standard type J goes to the vertex of
standard type sigma(J).  A groupoid on a connected residue is stored as a
section: for each chamber the permutation of the map to the base chamber.
Lazy groupoids (translations, rule-driven, transported, extended) compute
maps on demand and work on infinite residues.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .automorphisms import (
    Automorphism, Perm, Translation, apply_perm, compose, graph_automorphisms, identity_perm,
    inverse, is_graph_automorphism,
)
from .building import BVertex, Building, Chamber, LevelClassId
from .errors import DomainError, InternalError, ValidationError
from .graph_product import Element, element_to_json
from .report import Report

AdjacentRule = Callable[[Chamber, Chamber], Perm]


@dataclass(frozen=True)
class ChamberMap:
    frm: Chamber
    to: Chamber
    sigma: Perm

    def vertex(self, B: Building, v: BVertex) -> BVertex:
        if not B.contains(self.frm, v):
            raise DomainError("vertex is not in the source chamber")
        return B.vertex(self.to.label, apply_perm(self.sigma, v.type))

    def to_json(self) -> dict:
        return {"from": element_to_json(self.frm.label), "to": element_to_json(self.to.label),
                "sigma": list(self.sigma)}


def vertex_table(B: Building, cm: ChamberMap) -> dict[BVertex, BVertex]:
    """The explicit vertex bijection encoded by a chamber map."""
    return {v: cm.vertex(B, v) for v in B.chamber_vertices(cm.frm)}


def encoding_report(B: Building, chamber: Chamber | None = None) -> Report:
    """Check that permutations encode exactly the center-preserving cubical isomorphisms.

    Every permutation of the vertex ids is tried on one chamber: the induced
    vertex map is a cubical isomorphism fixing the center iff the
    permutation is a graph automorphism.
    """
    g = B.g
    C = chamber or Chamber(())
    rep = Report("encoding", box={"chamber": element_to_json(C.label)})
    cubes = B.chamber_cubes(C)
    cube_sets = {frozenset(B.cube_vertices(Q)) for Q in cubes}
    verts = B.chamber_vertices(C)
    by_type = {v.type: v for v in verts}
    for p in itertools.permutations(range(g.n)):
        auto = is_graph_automorphism(g, p, check_orders=False)
        images = {}
        ok = True
        for v in verts:
            t = apply_perm(p, v.type)
            if t not in by_type:
                ok = False
                break
            images[v] = by_type[t]
        if ok:
            ok = (len(set(images.values())) == len(verts)
                  and images[B.center(C)] == B.center(C)
                  and all(frozenset(images[x] for x in s) in cube_sets for s in cube_sets))
        rep.check("cubical_iso_iff_graph_automorphism", ok == auto, p)
    return rep


# -- groupoids ----------------------------------------------------------------------

class Groupoid:
    """Common interface: ``sigma(C1, C2)`` for chambers of one residue."""

    B: Building
    J: tuple[int, ...]
    base: Chamber

    def contains(self, C: Chamber) -> bool:
        return self.B.residue_contains(self.J, self.base, C)

    def _need(self, *chambers: Chamber) -> None:
        for C in chambers:
            if not self.contains(C):
                raise DomainError(f"{C} is not in the residue of {self.base} of type {self.J}")

    def sigma(self, C1: Chamber, C2: Chamber) -> Perm:
        raise NotImplementedError

    def chamber_map(self, C1: Chamber, C2: Chamber) -> ChamberMap:
        return ChamberMap(C1, C2, self.sigma(C1, C2))

    def transported(self, lam: Automorphism) -> "Groupoid":
        return TransportedGroupoid(self, lam)

    def key(self, chambers: Sequence[Chamber]) -> tuple[Perm, ...]:
        """Maps out of the first chamber; two groupoids agree on ``chambers`` iff keys match."""
        return tuple(self.sigma(chambers[0], C) for C in chambers)


class ResidueGroupoid(Groupoid):
    """A groupoid on an explicitly enumerated (possibly truncated) residue."""

    def __init__(self, B: Building, J: Iterable[int], base: Chamber, to_base: Mapping[Chamber, Perm],
                 radius: int | None = None, report: Report | None = None):
        self.B = B
        self.J = tuple(sorted(set(J)))
        self.base = base
        self.to_base = dict(to_base)
        self.chambers = sorted(self.to_base, key=lambda C: (len(C.label), C.label))
        self.radius = radius
        self.report = report

    def sigma(self, C1, C2):
        try:
            a, b = self.to_base[C1], self.to_base[C2]
        except KeyError as exc:
            raise DomainError(f"{exc.args[0]} is outside the enumerated residue") from None
        return compose(inverse(b), a)

    def adjacent_maps(self) -> dict[tuple[Chamber, Chamber], Perm]:
        out = {}
        for C1 in self.chambers:
            for C2 in self.chambers:
                if self.B.adjacency(C1, C2) is not None:
                    out[(C1, C2)] = self.sigma(C1, C2)
        return out

    def to_json(self) -> dict:
        return {"J": list(self.J), "base": element_to_json(self.base.label), "radius": self.radius,
                "maps": [ChamberMap(a, b, s).to_json()
                         for (a, b), s in sorted(self.adjacent_maps().items())]}


class TranslationGroupoid(Groupoid):
    """The groupoid induced by Γ: every map is a translation, so sigma is the identity."""

    def __init__(self, B: Building, J: Iterable[int], base: Chamber):
        self.B = B
        self.J = tuple(sorted(set(J)))
        self.base = base
        self._id = identity_perm(B.g.n)

    def sigma(self, C1, C2):
        self._need(C1, C2)
        return self._id


class RuleGroupoid(Groupoid):
    """Maps given on adjacent pairs by a rule and composed along normal-form galleries.

    Only meaningful once the rule has been validated (see ``extend_groupoid``).
    """

    def __init__(self, B: Building, J: Iterable[int], base: Chamber, rule: AdjacentRule):
        self.B = B
        self.J = tuple(sorted(set(J)))
        self.base = base
        self.rule = rule
        self._cache: dict = {}

    def sigma(self, C1, C2):
        hit = self._cache.get((C1, C2))
        if hit is not None:
            return hit
        self._need(C1, C2)
        g = self.B.g
        s = identity_perm(g.n)
        x = C1.label
        for syl in self.B.delta(C1, C2):
            y = g.multiply(x, (syl,))
            s = compose(self.rule(Chamber(x), Chamber(y)), s)
            x = y
        self._cache[(C1, C2)] = s
        return s


class TransportedGroupoid(Groupoid):
    """``lam . phi``: the maps lam o phi o lam^-1 on the image residue."""

    def __init__(self, inner: Groupoid, lam: Automorphism):
        self.B = inner.B
        self.inner = inner
        self.lam = lam
        self._inv = lam.inverse()
        base_img, s = lam.apply(inner.base)
        self.base = base_img
        self.J = apply_perm(s, inner.J)

    def contains(self, C):
        return self.inner.contains(self._inv(C))

    def sigma(self, D1, D2):
        C1, C2 = self._inv(D1), self._inv(D2)
        s1 = self.lam.sigma(C1)
        s2 = self.lam.sigma(C2)
        return compose(s2, compose(self.inner.sigma(C1, C2), inverse(s1)))


# -- validation ---------------------------------------------------------------------

def _fixes_above(B: Building, sigma: Perm, K: Iterable[int]) -> bool:
    """Does sigma fix every vertex type containing K (the shared vertices)?"""
    K = set(K)
    return all(apply_perm(sigma, L) == L for L in B.spherical if K <= set(L))


def validate_groupoid(G: Groupoid, chambers: Sequence[Chamber], report: Report | None = None,
                      max_triples: int = 20000) -> Report:
    """Check the four groupoid properties on the given chambers."""
    B = G.B
    g = B.g
    rep = report or Report("groupoid")
    chambers = list(chambers)
    rep.box.setdefault("chambers", len(chambers))
    table = {(a, b): G.sigma(a, b) for a in chambers for b in chambers}
    for (a, b), s in table.items():
        rep.check("cubical_isomorphism", is_graph_automorphism(g, s, check_orders=False), (a, b, s))
        rep.check("lower_degree", all(g.orders[s[m]] == g.orders[m] for m in range(g.n)), (a, b, s))
        hit = B.chamber_intersection(a, b)
        if hit is not None:
            rep.check("intersection", _fixes_above(B, s, hit[0]), (a, b, s))
    for a in chambers:
        rep.check("identity", table[(a, a)] == identity_perm(g.n), a)
    n = len(chambers)
    if n ** 3 <= max_triples:
        triples = itertools.product(chambers, repeat=3)
    else:
        # the section form makes composition exact; spot-check through the base
        triples = ((chambers[0], b, c) for b in chambers for c in chambers)
    for a, b, c in triples:
        rep.check("commutativity", compose(table[(b, c)], table[(a, b)]) == table[(a, c)], (a, b, c))
    return rep


def _residue_chambers(B: Building, J, base: Chamber, radius: int | None) -> list[Chamber]:
    if radius is None and not B.g.is_spherical(J):
        raise DomainError(f"residue of type {tuple(J)} is infinite; give a radius")
    return B.residue(J, base, radius)


def extend_groupoid(B: Building, J: Iterable[int], base: Chamber,
                    adjacent: Mapping[tuple[Chamber, Chamber], Perm] | AdjacentRule,
                    radius: int | None = None) -> ResidueGroupoid:
    """Extend maps on adjacent pairs to a groupoid, checking (1')-(5').

    Raises ValidationError naming the failing condition and the witness.
    With a radius, the residue is truncated to that many syllables from
    the base and every check is restricted to the truncation.
    """
    g = B.g
    J = tuple(sorted(set(J)))
    chambers = _residue_chambers(B, J, base, radius)
    cset = set(chambers)
    rule = adjacent if callable(adjacent) else (lambda a, b: adjacent[(a, b)])
    letters = [s for s in g.letters() if s[0] in J]

    adj: dict[tuple[Chamber, Chamber], Perm] = {}
    nbrs: dict[Chamber, list[Chamber]] = {C: [] for C in chambers}
    for C in chambers:
        for s in letters:
            D = Chamber(g.multiply(C.label, (s,)))
            if D in cset:
                try:
                    adj[(C, D)] = tuple(rule(C, D))
                except KeyError:
                    raise ValidationError("missing", (C, D), f"no map given for adjacent pair {C}, {D}")
                nbrs[C].append(D)

    for (C, D), s in adj.items():
        if not is_graph_automorphism(g, s, check_orders=False):
            raise ValidationError("(1')", (C, D, s), "map is not a center-preserving cubical isomorphism")
        if any(g.orders[s[m]] != g.orders[m] for m in range(g.n)):
            raise ValidationError("(1')", (C, D, s), "map does not preserve lower degrees")
    for (C, D), s in adj.items():
        if adj[(D, C)] != inverse(s):
            raise ValidationError("(2')", (C, D), "maps of an adjacent pair are not mutually inverse")
    for C in chambers:
        for i in J:
            R = [D for D in B.residue((i,), C) if D in cset]
            for a, b, c in itertools.permutations(R, 3):
                if compose(adj[(b, c)], adj[(a, b)]) != adj[(a, c)]:
                    raise ValidationError("(3')", (a, b, c), "rank-1 cocycle fails")
    for C1 in chambers:
        for i, j in itertools.permutations(J, 2):
            if not g.adjacent(i, j):
                continue
            for ei in range(1, g.orders[i]):
                for ej in range(1, g.orders[j]):
                    C2 = Chamber(g.multiply(C1.label, ((i, ei),)))
                    D1 = Chamber(g.multiply(C1.label, ((j, ej),)))
                    D2 = Chamber(g.multiply(C2.label, ((j, ej),)))
                    if not {C2, D1, D2} <= cset:
                        continue
                    top = compose(adj[(C2, D2)], adj[(C1, C2)])
                    bottom = compose(adj[(D1, D2)], adj[(C1, D1)])
                    if top != bottom:
                        raise ValidationError("(4')", (C1, C2, D1, D2), "square does not commute")
    for (C, D), s in adj.items():
        i = B.adjacency(C, D)
        if not _fixes_above(B, s, (i,)):
            raise ValidationError("(5')", (C, D, s), "map moves a vertex of the intersection")

    # section by breadth-first search; then every adjacent map must match it
    to_base = {base: identity_perm(g.n)}
    frontier = [base]
    while frontier:
        nxt = []
        for C in frontier:
            for D in nbrs[C]:
                if D not in to_base:
                    to_base[D] = compose(to_base[C], adj[(D, C)])
                    nxt.append(D)
        frontier = nxt
    if len(to_base) != len(chambers):
        raise ValidationError("connected", len(to_base), "truncated residue is not gallery-connected")
    G = ResidueGroupoid(B, J, base, to_base, radius)
    for (C, D), s in adj.items():
        if G.sigma(C, D) != s:
            raise ValidationError("path-independence", (C, D),
                                  "composition along galleries depends on the gallery")
    rep = Report("extend_groupoid", box={"J": list(J), "radius": radius, "chambers": len(chambers),
                                         "adjacent_pairs": len(adj)})
    validate_groupoid(G, chambers, rep)
    if not rep.ok:
        raise ValidationError("groupoid", rep.witnesses[:1], "extension fails a groupoid property")
    G.report = rep
    return G


def gamma_groupoid(B: Building, J: Iterable[int], base: Chamber,
                   radius: int | None = None) -> ResidueGroupoid:
    """The groupoid induced by translations, validated through ``extend_groupoid``."""
    ident = identity_perm(B.g.n)
    return extend_groupoid(B, J, base, lambda a, b: ident, radius)


def section_groupoid(B: Building, J: Iterable[int], chambers: Sequence[Chamber],
                     to_base: Sequence[Perm]) -> ResidueGroupoid:
    """Build a groupoid from a section (maps to ``chambers[0]``), no validation."""
    return ResidueGroupoid(B, J, chambers[0], dict(zip(chambers, to_base)))


def residue_groupoids(B: Building, v: BVertex) -> tuple[list[Chamber], list[ResidueGroupoid]]:
    """All groupoids on the finite residue of chambers through ``v``.

    Returned with a canonical chamber list; groupoids are in a fixed order.
    """
    g = B.g
    chambers = sorted(B.vertex_chambers(v), key=lambda C: (len(C.label), C.label))
    autos = graph_automorphisms(g, with_orders=True)
    jmin = {}
    for a, b in itertools.combinations(range(len(chambers)), 2):
        jmin[(a, b)] = B.chamber_intersection(chambers[a], chambers[b])[0]
    allowed = {K: [s for s in autos if _fixes_above(B, s, K)] for K in set(jmin.values())}
    allowed_sets = {K: set(v_) for K, v_ in allowed.items()}
    out = []

    def rec(k: int, sec: list[Perm]):
        if k == len(chambers):
            out.append(ResidueGroupoid(B, v.type, chambers[0], dict(zip(chambers, sec))))
            return
        for s in autos:
            if all(compose(inverse(s), sec[a]) in allowed_sets[jmin[(a, k)]] for a in range(k)):
                sec.append(s)
                rec(k + 1, sec)
                sec.pop()

    rec(1, [identity_perm(g.n)])
    return chambers, out


# -- class order and ascent --------------------------------------------------------

def _type_label(v: BVertex) -> Hashable:
    return v.type[0]


def _type_orbit(v: BVertex) -> Hashable:
    return v.type


@dataclass
class ClassOrder:
    """Total order on rank-1 orbit labels, extended to classes by the symmetric-difference rule.

    ``q`` labels rank-1 vertices; ``orbit`` names the orbit of a class of
    any rank.  Both default to the standard type, which is right for Γ.
    """

    base_order: tuple
    q: Callable[[BVertex], Hashable] = _type_label
    orbit: Callable[[BVertex], Hashable] = _type_orbit
    _pos: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.base_order = tuple(self.base_order)
        if len(set(self.base_order)) != len(self.base_order):
            raise DomainError("base order has repeated labels")
        self._pos = {x: k for k, x in enumerate(self.base_order)}

    def pos(self, label: Hashable) -> int:
        return self._pos[label]

    def label_less(self, a: Hashable, b: Hashable) -> bool:
        return self._pos[a] < self._pos[b]

    def qset(self, B: Building, v: BVertex) -> frozenset:
        if v.rank == 0:
            return frozenset()
        C = Chamber(v.rep)
        return frozenset(self.q(u) for u in B.one_downset(v, C))

    def set_leq(self, S1: frozenset, S2: frozenset) -> bool:
        if S1 == S2:
            return True
        return max(S1 ^ S2, key=self.pos) in S2

    def weight(self, B: Building, v: BVertex) -> int:
        return sum(1 << self.pos(x) for x in self.qset(B, v))

    def leq(self, B: Building, v1: BVertex, v2: BVertex) -> bool:
        if self.orbit(v1) == self.orbit(v2):
            return True
        return self.set_leq(self.qset(B, v1), self.qset(B, v2))

    def less(self, B: Building, v1: BVertex, v2: BVertex) -> bool:
        return self.orbit(v1) != self.orbit(v2) and self.leq(B, v1, v2)

    def validate(self, B: Building, radius: int = 0) -> Report:
        """Rank-1 vertices of adjacent types in one chamber get distinct labels."""
        rep = Report("class_order", box={"radius": radius})
        g = B.g
        for C in B.ball(radius):
            for i, j in g.edges:
                a, b = B.vertex(C.label, (i,)), B.vertex(C.label, (j,))
                rep.check("adjacent_types_distinct_labels", self.q(a) != self.q(b), (C, i, j))
        return rep


def class_order_for_gamma(B: Building, vertex_order: Sequence[int] | None = None) -> ClassOrder:
    """For Γ, rank-1 orbits are the standard types, so q is the type itself."""
    g = B.g
    order = tuple(vertex_order) if vertex_order is not None else tuple(range(g.n))
    if sorted(order) != list(range(g.n)):
        raise DomainError("vertex order must be a permutation of the vertex ids")
    out = ClassOrder(order)
    rep = out.validate(B, 0)
    if not rep.ok:
        raise InternalError("adjacent types received equal labels")
    return out


def common_chamber(B: Building, u: BVertex, v: BVertex) -> Chamber | None:
    for C in B.vertex_chambers(v):
        if B.contains(C, u):
            return C
    return None


def ascent(B: Building, v: BVertex, u: BVertex, order: ClassOrder,
           chamber: Chamber | None = None) -> BVertex:
    """The ascent of ``v`` by the rank-1 vertex ``u``."""
    if u.rank != 1:
        raise DomainError("ascent needs a rank-1 vertex to ascend by")
    (i,) = u.type
    if i in v.type or i not in B.g.perp_closed(v.type):
        raise DomainError(f"type {u.type} is not orthogonal to {v.type}")
    C = chamber if chamber is not None else common_chamber(B, u, v)
    if C is None or not (B.contains(C, u) and B.contains(C, v)):
        raise DomainError("vertices do not share a chamber")
    qu = order.q(u)
    T = {i}
    for w in B.one_downset(v, C):
        if order.label_less(qu, order.q(w)):
            T.update(w.type)
    return B.vertex(C.label, T)


# -- hierarchies -------------------------------------------------------------------

class Hierarchy:
    """Groupoids on class residues, built on demand and cached per class."""

    def __init__(self, B: Building, order: ClassOrder,
                 make: Callable[["Hierarchy", LevelClassId], Groupoid]):
        self.B = B
        self.order = order
        self._make = make
        self._cache: dict[LevelClassId, Groupoid] = {}
        self.report: Report | None = None

    def groupoid(self, cls: LevelClassId) -> Groupoid:
        G = self._cache.get(cls)
        if G is None:
            G = self._make(self, cls)
            self._cache[cls] = G
        return G

    def for_vertex(self, v: BVertex) -> Groupoid:
        return self.groupoid(self.B.level_class(v))

    def adjacent_sigma(self, J: tuple[int, ...], C1: Chamber, C2: Chamber) -> Perm:
        """The restriction rule on a J-perp residue: use the class of the ascent."""
        B = self.B
        i = B.adjacency(C1, C2)
        if i is None:
            raise DomainError("restriction rule needs adjacent chambers")
        u = B.vertex(C1.label, (i,))
        x = B.vertex(C1.label, J)
        w = ascent(B, x, u, self.order, C1)
        return self.for_vertex(w).sigma(C1, C2)


def class_residue(B: Building, cls: LevelClassId) -> tuple[tuple[int, ...], Chamber]:
    return B.perp_closed(cls.type), Chamber(cls.rep)


def _translation_class_groupoid(H: Hierarchy, cls: LevelClassId) -> Groupoid:
    K, C = class_residue(H.B, cls)
    return TranslationGroupoid(H.B, K, C)


class BarPsiGroupoid(Groupoid):
    """The unique class groupoid extending ``psi`` by the hierarchy maps on J-perp residues.

    Closed form: project both chambers to the residue of ``psi`` along
    J-perp residues, and compose  phi(P2 -> D2) . psi(P1 -> P2) . phi(D1 -> P1).
    """

    def __init__(self, B: Building, Jtype: tuple[int, ...], psi: Groupoid, H: Hierarchy):
        self.B = B
        self.Jtype = tuple(Jtype)
        self.psi = psi
        self.H = H
        self.base = psi.base
        self.J = B.perp_closed(self.Jtype)
        self.Jp = B.perp(self.Jtype)
        self._phi: dict[Chamber, RuleGroupoid] = {}

    def project(self, D: Chamber) -> Chamber:
        return self.B.split(self.Jtype, self.base, D)[0]

    def phi(self, P: Chamber) -> RuleGroupoid:
        G = self._phi.get(P)
        if G is None:
            G = RuleGroupoid(self.B, self.Jp, P,
                             lambda a, b: self.H.adjacent_sigma(self.Jtype, a, b))
            self._phi[P] = G
        return G

    def sigma(self, D1, D2):
        self._need(D1, D2)
        P1, P2 = self.project(D1), self.project(D2)
        return compose(self.phi(P2).sigma(P2, D2),
                       compose(self.psi.sigma(P1, P2), self.phi(P1).sigma(D1, P1)))


def _barpsi_class_groupoid(H: Hierarchy, cls: LevelClassId) -> Groupoid:
    B = H.B
    C = Chamber(cls.rep)
    psi = TranslationGroupoid(B, cls.type, C)
    return BarPsiGroupoid(B, cls.type, psi, H)


def hierarchy_report(H: Hierarchy, radius: int = 2, gammas: Sequence[Element] = (),
                     reference: Hierarchy | None = None) -> Report:
    """Equivariance and restriction on the radius ball (and agreement with ``reference``)."""
    B = H.B
    g = B.g
    rep = Report("hierarchy", box={"radius": radius, "translations": len(gammas)})
    ball = B.ball(radius)
    for C in ball:
        verts = B.chamber_vertices(C)
        for v in verts:
            for i in B.perp(v.type):
                u = B.vertex(C.label, (i,))
                w = ascent(B, v, u, H.order, C)
                Gv, Gw = H.for_vertex(v), H.for_vertex(w)
                for e in range(1, g.orders[i]):
                    D = Chamber(g.multiply(C.label, ((i, e),)))
                    rep.check("restriction", Gv.sigma(C, D) == Gw.sigma(C, D), (C, v, u, D))
            if reference is not None:
                Gv, Rv = H.for_vertex(v), reference.for_vertex(v)
                for s in g.letters():
                    D = Chamber(g.multiply(C.label, (s,)))
                    if Gv.contains(D):
                        rep.check("matches_reference", Gv.sigma(C, D) == Rv.sigma(C, D), (C, v, D))
    star = B.chamber_vertices(Chamber(()))
    for gamma in gammas:
        T = Translation(B, gamma)
        for v in star:
            Gv = H.for_vertex(v)
            moved = Gv.transported(T)
            target = H.for_vertex(T.vertex(v))
            C = Chamber(())
            for s in g.letters():
                D = Chamber(g.multiply(C.label, (s,)))
                if Gv.contains(D):
                    rep.check("equivariance", moved.sigma(T(C), T(D)) == target.sigma(T(C), T(D)),
                              (gamma, v, D))
    return rep


def build_gamma_hierarchy(B: Building, order: ClassOrder, radius: int = 2,
                          gammas: Sequence[Element] = (), inductive: bool = False) -> Hierarchy:
    """The hierarchy of Γ-groupoids, verified on the radius ball.

    With ``inductive`` each class groupoid is produced by the top-down
    construction (J-perp maps from higher classes, then the square
    extension of the translation groupoid on the class section) instead of
    being assigned directly.  Raises InternalError on any violation.
    """
    make = _barpsi_class_groupoid if inductive else _translation_class_groupoid
    H = Hierarchy(B, order, make)
    ref = Hierarchy(B, order, _translation_class_groupoid) if inductive else None
    rep = hierarchy_report(H, radius, gammas, ref)
    H.report = rep
    if not rep.ok:
        raise InternalError(f"hierarchy verification failed: {rep.witnesses[:2]}")
    return H


def phi_from_hierarchy(B: Building, J: Iterable[int], Cprime: Chamber, H: Hierarchy,
                       radius: int | None = None) -> ResidueGroupoid:
    """Groupoid on the J-perp residue of ``Cprime`` from the restriction rule, validated."""
    J = tuple(sorted(set(J)))
    Jp = B.perp(J)
    if radius is None and not B.g.is_spherical(Jp):
        raise DomainError("J-perp residue is infinite; give a radius")
    return extend_groupoid(B, Jp, Cprime, lambda a, b: H.adjacent_sigma(J, a, b), radius)


def barpsi_extend(B: Building, psi: Groupoid, v: BVertex, H: Hierarchy, radius: int | None = None,
                  phi: Callable[[Chamber], Groupoid] | None = None) -> ResidueGroupoid:
    """Extend a groupoid on the chambers through ``v`` to the class residue of ``v``.

    Adjacent maps follow the two defining rules (the commuting square for
    letters in J, the J-perp maps otherwise); the result is validated by
    ``extend_groupoid`` on the truncated class residue.
    """
    Jt = v.type
    if not B.contains(psi.base, v):
        raise DomainError("psi must be based at a chamber through v")
    base = psi.base
    K = B.perp_closed(Jt)
    phis: dict[Chamber, Groupoid] = {}

    def phi_at(P: Chamber) -> Groupoid:
        G = phis.get(P)
        if G is None:
            G = phi(P) if phi is not None else phi_from_hierarchy(B, Jt, P, H, radius)
            phis[P] = G
        return G

    def rule(C1: Chamber, C2: Chamber) -> Perm:
        i = B.adjacency(C1, C2)
        P1 = B.split(Jt, base, C1)[0]
        if i in Jt:
            P2 = B.split(Jt, base, C2)[0]
            return compose(phi_at(P2).sigma(P2, C2),
                           compose(psi.sigma(P1, P2), phi_at(P1).sigma(C1, P1)))
        return phi_at(P1).sigma(C1, C2)

    return extend_groupoid(B, K, base, rule, radius)


# -- groupoid holonomy ----------------------------------------------------------------

@dataclass
class Holonomy:
    chambers: list[Chamber]
    groupoids: list[ResidueGroupoid]
    perms: list[tuple[int, ...]]
    report: Report

    def is_trivial(self, k: int) -> bool:
        return self.perms[k] == tuple(range(len(self.groupoids)))


def _as_automorphism(B: Building, x) -> Automorphism:
    return x if isinstance(x, Automorphism) else Translation(B, x)


def holonomy_perm(B: Building, lam: Automorphism, v: BVertex, H: Hierarchy,
                  chambers: list[Chamber], groupoids: list[ResidueGroupoid]) -> tuple[int, ...]:
    index = {G.key(chambers): k for k, G in enumerate(groupoids)}
    cls = B.level_class(v)
    if B.level_class(lam.vertex(v)) != cls:
        raise DomainError(f"{lam!r} does not stabilize the class of {v}")
    out = []
    for psi in groupoids:
        bar = BarPsiGroupoid(B, v.type, psi, H)
        moved = bar.transported(lam)
        key = moved.key(chambers)
        if key not in index:
            raise InternalError("transported groupoid restricts to an unknown groupoid")
        out.append(index[key])
    return tuple(out)


def groupoid_holonomy(B: Building, elements: Sequence, v: BVertex, H: Hierarchy) -> Holonomy:
    """Permutations of the groupoids on the chambers through ``v`` induced by class stabilizers.

    ``elements`` are Elements (acting by translation) or Automorphisms.  The
    homomorphism identity is checked on all ordered pairs of the sample.
    """
    chambers, groupoids = residue_groupoids(B, v)
    lams = [_as_automorphism(B, x) for x in elements]
    perms = [holonomy_perm(B, lam, v, H, chambers, groupoids) for lam in lams]
    rep = Report("holonomy", box={"elements": len(lams), "groupoids": len(groupoids)})
    for a, b in itertools.product(range(len(lams)), repeat=2):
        prod = holonomy_perm(B, lams[a] * lams[b], v, H, chambers, groupoids)
        rep.check("homomorphism", compose(perms[a], perms[b]) == prod, (a, b))
    return Holonomy(chambers, groupoids, perms, rep)
