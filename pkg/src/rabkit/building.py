"""The right-angled building of a graph product, built lazily from words.

Every object carries an algebraic identity (a minimal coset representative
plus type data), so equality and incidence never depend on a truncation.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from .errors import DomainError, InputError
from .graph_product import DefiningGraph, Element, SphericalSet, Syllable, element_to_json


class Chamber(NamedTuple):
    label: Element


class BVertex(NamedTuple):
    rep: Element
    type: SphericalSet

    @property
    def rank(self) -> int:
        return len(self.type)


class Cube(NamedTuple):
    rep: Element
    J1: SphericalSet
    J2: SphericalSet

    @property
    def dim(self) -> int:
        return len(self.J2) - len(self.J1)


class LevelClassId(NamedTuple):
    rep: Element
    type: SphericalSet


@dataclass(frozen=True)
class Gallery:
    start: Chamber
    letters: tuple[Syllable, ...] = ()


CHAMBER_STAR = Chamber(())


def _stype(J: Iterable[int]) -> SphericalSet:
    return tuple(sorted(set(J)))


class Building:
    """Lazy model of the building of ``g``.

    >>> from rabkit.graph_product import running_example
    >>> B = Building(running_example())
    >>> len(B.chamber_vertices(CHAMBER_STAR))
    7
    """

    def __init__(self, g: DefiningGraph):
        self.g = g
        self.spherical = g.spherical_sets()
        self._spherical_set = set(self.spherical)
        self._perp_closed = {J: g.perp_closed(J) for J in self.spherical}
        self._perp = {J: g.perp(J) for J in self.spherical}

    # -- basic identities -------------------------------------------------
    def is_spherical(self, J: Iterable[int]) -> bool:
        return _stype(J) in self._spherical_set

    def _spherical_or_raise(self, J: Iterable[int]) -> SphericalSet:
        J = _stype(J)
        if J not in self._spherical_set:
            raise InputError(f"{J} is not a spherical subset")
        return J

    def perp(self, J: Iterable[int]) -> SphericalSet:
        return self._perp[self._spherical_or_raise(J)]

    def perp_closed(self, J: Iterable[int]) -> SphericalSet:
        return self._perp_closed[self._spherical_or_raise(J)]

    def chamber(self, word: Iterable[Sequence[int]]) -> Chamber:
        return Chamber(self.g.normal_form(word))

    def vertex(self, label: Element, J: Iterable[int]) -> BVertex:
        J = self._spherical_or_raise(J)
        return BVertex(self.g.coset_min_rep(label, J), J)

    def chamber_vertices(self, C: Chamber) -> list[BVertex]:
        cm = self.g.coset_min_rep
        return [BVertex(cm(C.label, J), J) for J in self.spherical]

    def vertex_of_type(self, C: Chamber, J: Iterable[int]) -> BVertex:
        return self.vertex(C.label, J)

    def center(self, C: Chamber) -> BVertex:
        return BVertex(C.label, ())

    def contains(self, C: Chamber, v: BVertex) -> bool:
        return self.g.coset_min_rep(C.label, v.type) == v.rep

    def vertex_chambers(self, v: BVertex) -> list[Chamber]:
        """All chambers containing ``v``; finite because types are spherical."""
        return [Chamber(self.g.multiply(v.rep, h)) for h in self.g.subgroup_elements(v.type)]

    # -- the group action ---------------------------------------------------
    def translate_chamber(self, gamma: Element, C: Chamber) -> Chamber:
        return Chamber(self.g.multiply(gamma, C.label))

    def translate_vertex(self, gamma: Element, v: BVertex) -> BVertex:
        return BVertex(self.g.coset_min_rep(self.g.multiply(gamma, v.rep), v.type), v.type)

    def translate_cube(self, gamma: Element, Q: Cube) -> Cube:
        return Cube(self.g.coset_min_rep(self.g.multiply(gamma, Q.rep), Q.J1), Q.J1, Q.J2)

    def translate_class(self, gamma: Element, c: LevelClassId) -> LevelClassId:
        pc = self._perp_closed[c.type]
        return LevelClassId(self.g.coset_min_rep(self.g.multiply(gamma, c.rep), pc), c.type)

    # -- intersections and adjacency ------------------------------------------
    def delta(self, C1: Chamber, C2: Chamber) -> Element:
        return self.g.multiply(self.g.invert(C1.label), C2.label)

    def chamber_intersection(self, C1: Chamber, C2: Chamber):
        """``(Jmin, shared)`` or ``None`` when the chambers are disjoint."""
        d = self.delta(C1, C2)
        Jmin = _stype(v for v, _ in d)
        if Jmin not in self._spherical_set:
            return None
        S = set(Jmin)
        shared = [v for v in self.chamber_vertices(C1) if S <= set(v.type)]
        return Jmin, shared

    def adjacency(self, C1: Chamber, C2: Chamber) -> int | None:
        d = self.delta(C1, C2)
        return d[0][0] if len(d) == 1 else None

    def adjacent_chambers(self, C: Chamber) -> list[Chamber]:
        return [Chamber(self.g.multiply(C.label, (s,))) for s in self.g.letters()]

    def gallery_chambers(self, G: Gallery) -> list[Chamber]:
        out = [G.start]
        x = G.start.label
        for s in G.letters:
            if len(s) != 2 or s[1] == 0:
                raise InputError(f"gallery letter {s!r} must be a nonidentity syllable")
            x = self.g.multiply(x, (tuple(s),))
            out.append(Chamber(x))
        return out

    def gallery_between(self, C1: Chamber, C2: Chamber) -> Gallery:
        """The gallery read off the normal form of the transition element."""
        return Gallery(C1, self.delta(C1, C2))

    def wedge(self, C1: Chamber, C2: Chamber) -> BVertex:
        hit = self.chamber_intersection(C1, C2)
        if hit is None:
            raise DomainError(f"chambers {C1} and {C2} are disjoint")
        return self.vertex(C1.label, hit[0])

    # -- residues -------------------------------------------------------------
    def residue(self, J: Iterable[int], C: Chamber, radius: int | None = None) -> list[Chamber]:
        g = self.g
        J = tuple(sorted(set(J)))
        if radius is None:
            if not g.is_spherical(J):
                raise InputError(f"residue of non-spherical {J} is infinite; give a radius")
            return [Chamber(g.multiply(C.label, h)) for h in g.subgroup_elements(J)]
        return [Chamber(g.multiply(C.label, h)) for h in self.subgroup_ball(J, radius)]

    def subgroup_ball(self, J: Iterable[int], radius: int) -> list[Element]:
        """Elements of the special subgroup on ``J`` with at most ``radius`` syllables."""
        g = self.g
        Js = set(J)
        letters = [s for s in g.letters() if s[0] in Js]
        layer = [()]
        out = [()]
        for r in range(radius):
            nxt = set()
            for w in layer:
                for s in letters:
                    x = g.multiply(w, (s,))
                    if len(x) == r + 1:
                        nxt.add(x)
            layer = sorted(nxt)
            out.extend(layer)
        return out

    def residue_contains(self, J: Iterable[int], C: Chamber, D: Chamber) -> bool:
        J = frozenset(J)
        return self.g.coset_min_rep(C.label, J) == self.g.coset_min_rep(D.label, J)

    # -- poset ----------------------------------------------------------------
    def leq(self, u: BVertex, v: BVertex) -> bool:
        # Every chamber through u also passes through any v above u, so
        # checking the chamber labeled by u's representative is enough.
        if not set(u.type) <= set(v.type):
            return False
        return self.g.coset_min_rep(u.rep, v.type) == v.rep

    def one_downset(self, u: BVertex, chamber: Chamber | None = None) -> list[BVertex]:
        """Rank-1 vertices below ``u``; optionally only those in ``chamber``."""
        if chamber is not None:
            if not self.contains(chamber, u):
                raise DomainError("chamber does not contain the vertex")
            return [self.vertex(chamber.label, (m,)) for m in u.type]
        out = set()
        for C in self.vertex_chambers(u):
            for m in u.type:
                out.add(self.vertex(C.label, (m,)))
        return sorted(out)

    # -- cubes ------------------------------------------------------------------
    def cube(self, label: Element, J1: Iterable[int], J2: Iterable[int]) -> Cube:
        J1 = self._spherical_or_raise(J1)
        J2 = self._spherical_or_raise(J2)
        if not set(J1) <= set(J2):
            raise InputError(f"cube needs nested types, got {J1} and {J2}")
        return Cube(self.g.coset_min_rep(label, J1), J1, J2)

    def cube_vertices(self, Q: Cube) -> list[BVertex]:
        extra = [m for m in Q.J2 if m not in Q.J1]
        out = []
        for r in range(len(extra) + 1):
            for add in itertools.combinations(extra, r):
                out.append(self.vertex(Q.rep, Q.J1 + add))
        return out

    def cube_contains(self, Q: Cube, v: BVertex) -> bool:
        if not (set(Q.J1) <= set(v.type) <= set(Q.J2)):
            return False
        return self.g.coset_min_rep(Q.rep, v.type) == v.rep

    def chamber_cubes(self, C: Chamber, dim: int | None = None) -> list[Cube]:
        out = []
        for J2 in self.spherical:
            for J1 in self.spherical:
                if set(J1) <= set(J2) and (dim is None or len(J2) - len(J1) == dim):
                    out.append(Cube(self.g.coset_min_rep(C.label, J1), J1, J2))
        return out

    def lower_edges(self, v: BVertex) -> list[Cube]:
        out = set()
        for C in self.vertex_chambers(v):
            for m in v.type:
                J1 = tuple(x for x in v.type if x != m)
                out.add(Cube(self.g.coset_min_rep(C.label, J1), J1, v.type))
        return sorted(out)

    def lower_degree(self, v: BVertex) -> int:
        return len(self.lower_edges(v))

    def upper_edges(self, v: BVertex) -> list[Cube]:
        out = []
        for J2 in self.spherical:
            if len(J2) == len(v.type) + 1 and set(v.type) <= set(J2):
                out.append(Cube(v.rep, v.type, J2))
        return out

    def edges_at(self, v: BVertex) -> list[Cube]:
        return self.lower_edges(v) + self.upper_edges(v)

    # -- level equivalence ------------------------------------------------------
    def level_class(self, v: BVertex) -> LevelClassId:
        return LevelClassId(self.g.coset_min_rep(v.rep, self._perp_closed[v.type]), v.type)

    def level_adjacent(self, v1: BVertex, v2: BVertex) -> bool:
        if v1.type != v2.type:
            return False
        d = self.g.multiply(self.g.invert(v1.rep), v2.rep)
        extra = {v for v, _ in d} - set(v1.type)
        if len(extra) != 1:
            return False
        return next(iter(extra)) in self._perp[v1.type]

    def class_chambers(self, c: LevelClassId, radius: int | None = None) -> list[Chamber]:
        return self.residue(self._perp_closed[c.type], Chamber(c.rep), radius)

    def class_contains(self, c: LevelClassId, C: Chamber) -> bool:
        return self.g.coset_min_rep(C.label, self._perp_closed[c.type]) == c.rep

    # -- product structure --------------------------------------------------------
    def product_map(self, J: Iterable[int], C: Chamber, c1: Chamber, c2: Chamber) -> Chamber:
        J = self._spherical_or_raise(J)
        Jp = self._perp[J]
        g = self.g
        a = self.delta(C, c1)
        b = self.delta(C, c2)
        if not g.in_subgroup(a, J):
            raise DomainError(f"{c1} is not in the {J}-residue of {C}")
        if not g.in_subgroup(b, Jp):
            raise DomainError(f"{c2} is not in the {Jp}-residue of {C}")
        return Chamber(g.multiply(C.label, g.multiply(a, b)))

    def split(self, J: Iterable[int], C: Chamber, D: Chamber) -> tuple[Chamber, Chamber]:
        J = self._spherical_or_raise(J)
        Jp = self._perp[J]
        g = self.g
        d = self.delta(C, D)
        if not g.in_subgroup(d, self._perp_closed[J]):
            raise DomainError(f"{D} is not in the {self._perp_closed[J]}-residue of {C}")
        a = g.retract(d, J)
        b = g.retract(d, Jp)
        return Chamber(g.multiply(C.label, a)), Chamber(g.multiply(C.label, b))

    # -- truncations and export -----------------------------------------------------
    def ball(self, radius: int) -> list[Chamber]:
        return [Chamber(x) for x in self.g.enumerate_ball(radius)]

    def truncation(self, radius: int) -> "Truncation":
        chambers = self.ball(radius)
        verts = set()
        cubes = set()
        for C in chambers:
            verts.update(self.chamber_vertices(C))
            cubes.update(self.chamber_cubes(C))
        return Truncation(radius, chambers, sorted(verts, key=vertex_key),
                          sorted(cubes, key=cube_key))


def vertex_key(v: BVertex):
    return (len(v.rep), v.rep, len(v.type), v.type)


def cube_key(Q: Cube):
    return (len(Q.rep), Q.rep, Q.J1, Q.J2)


@dataclass
class Truncation:
    radius: int
    chambers: list[Chamber]
    vertices: list[BVertex]
    cubes: list[Cube] = field(default_factory=list)

    def vertex_ids(self) -> dict[BVertex, str]:
        return {v: f"v{k}" for k, v in enumerate(self.vertices)}

    def to_json(self, g: DefiningGraph) -> dict:
        ids = self.vertex_ids()
        return {
            "radius": self.radius,
            "chambers": [element_to_json(C.label) for C in self.chambers],
            "vertices": [{"id": ids[v], "rep": element_to_json(v.rep), "type": list(v.type),
                          "rank": v.rank} for v in self.vertices],
            "cubes": [{"rep": element_to_json(Q.rep), "J1": list(Q.J1), "J2": list(Q.J2),
                       "dim": Q.dim} for Q in self.cubes],
        }

    def to_dot(self, B: Building) -> str:
        ids = self.vertex_ids()
        names = B.g.names
        lines = ["graph building {"]
        for v in self.vertices:
            t = ",".join(names[m] for m in v.type)
            lines.append(f'  {ids[v]} [type="{t}", rank={v.rank}];')
        for Q in self.cubes:
            if Q.dim != 1:
                continue
            (i,) = [m for m in Q.J2 if m not in Q.J1]
            a = BVertex(Q.rep, Q.J1)
            b = B.vertex(Q.rep, Q.J2)
            if a in ids and b in ids:
                lines.append(f'  {ids[a]} -- {ids[b]} [label="{names[i]}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def dumps_json(self, g: DefiningGraph) -> str:
        return json.dumps(self.to_json(g), sort_keys=True, indent=1)
