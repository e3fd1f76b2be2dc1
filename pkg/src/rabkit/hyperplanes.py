"""Edge labels, hyperplanes and the special-action check.

Hyperplanes are named by cosets: the i-edges of chambers in one
``i``-perp residue are exactly the edges dual to one hyperplane.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, NamedTuple

from .building import BVertex, Building, Chamber, Cube
from .errors import DomainError
from .graph_product import Element, element_to_json


class HyperplaneId(NamedTuple):
    rep: Element
    label: int


class OrientedEdge(NamedTuple):
    edge: Cube
    up: bool  # points toward the endpoint of larger type

    def initial(self, B: Building) -> BVertex:
        lo, hi = edge_endpoints(B, self.edge)
        return lo if self.up else hi

    def terminal(self, B: Building) -> BVertex:
        lo, hi = edge_endpoints(B, self.edge)
        return hi if self.up else lo


def _check_edge(e: Cube) -> None:
    if e.dim != 1:
        raise DomainError(f"expected an edge, got a cube of dimension {e.dim}")


def edge_label(e: Cube) -> int:
    _check_edge(e)
    (i,) = [m for m in e.J2 if m not in e.J1]
    return i


def edge_endpoints(B: Building, e: Cube) -> tuple[BVertex, BVertex]:
    _check_edge(e)
    return BVertex(e.rep, e.J1), B.vertex(e.rep, e.J2)


def hyperplane_of(B: Building, e: Cube) -> HyperplaneId:
    i = edge_label(e)
    return HyperplaneId(B.g.coset_min_rep(e.rep, B.perp((i,))), i)


def parallel(B: Building, e1: Cube, e2: Cube) -> bool:
    return hyperplane_of(B, e1) == hyperplane_of(B, e2)


def oriented_hyperplane(B: Building, oe: OrientedEdge) -> tuple[HyperplaneId, bool]:
    return hyperplane_of(B, oe.edge), oe.up


def translate_hyperplane(B: Building, gamma: Element, H: HyperplaneId) -> HyperplaneId:
    g = B.g
    return HyperplaneId(g.coset_min_rep(g.multiply(gamma, H.rep), B.perp((H.label,))), H.label)


def hyperplanes_below(B: Building, v: BVertex) -> set[HyperplaneId]:
    return {hyperplane_of(B, e) for e in B.lower_edges(v)}


def oriented_edges_at(B: Building, v: BVertex) -> list[OrientedEdge]:
    """Oriented edges with initial vertex ``v``."""
    return ([OrientedEdge(e, True) for e in B.upper_edges(v)]
            + [OrientedEdge(e, False) for e in B.lower_edges(v)])


def chamber_edges(B: Building, C: Chamber) -> list[Cube]:
    return B.chamber_cubes(C, dim=1)


def dual_edges(B: Building, H: HyperplaneId, radius: int | None = None) -> list[Cube]:
    """All edges dual to ``H`` (within ``radius`` of its base chamber if given)."""
    i = H.label
    ip = B.perp((i,))
    out = set()
    for D in B.residue(ip, Chamber(H.rep), radius):
        for K in B.spherical:
            if i not in K and B.is_spherical(K + (i,)):
                out.add(B.cube(D.label, K, K + (i,)))
    return sorted(out)


def squares_at(B: Building, v: BVertex) -> list[Cube]:
    """All 2-cubes having ``v`` as a vertex."""
    out = set()
    J = set(v.type)
    for C in B.vertex_chambers(v):
        for K2 in B.spherical:
            if not J <= set(K2):
                continue
            for pair in itertools.combinations(K2, 2):
                K = tuple(m for m in K2 if m not in pair)
                if set(K) <= J:
                    out.add(B.cube(C.label, K, K2))
    return sorted(out)


def square_edges_at(B: Building, Q: Cube, v: BVertex) -> tuple[Cube, Cube]:
    """The two edges of the square ``Q`` incident to its corner ``v``."""
    a, b = [m for m in Q.J2 if m not in Q.J1]
    K = Q.J1
    Ka, Kb = tuple(sorted(K + (a,))), tuple(sorted(K + (b,)))
    edges = []
    for lo, hi in ((K, Ka), (K, Kb), (Ka, Q.J2), (Kb, Q.J2)):
        e = B.cube(Q.rep, lo, hi)
        if v in edge_endpoints(B, e):
            edges.append(e)
    if len(edges) != 2:
        raise DomainError("vertex is not a corner of the square")
    return edges[0], edges[1]


def corners_at(B: Building, v: BVertex) -> set[frozenset[Cube]]:
    return {frozenset(square_edges_at(B, Q, v)) for Q in squares_at(B, v)}


def elementary_parallel_pairs(B: Building, Q: Cube) -> list[tuple[Cube, Cube]]:
    """Opposite edge pairs of a 2-cube."""
    if Q.dim != 2:
        raise DomainError("expected a square")
    a, b = [m for m in Q.J2 if m not in Q.J1]
    K = Q.J1
    Ka = tuple(sorted(K + (a,)))
    Kb = tuple(sorted(K + (b,)))
    return [(B.cube(Q.rep, K, Ka), B.cube(Q.rep, Kb, Q.J2)),
            (B.cube(Q.rep, K, Kb), B.cube(Q.rep, Ka, Q.J2))]


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        p = self.parent.setdefault(x, x)
        while p != x:
            self.parent[x] = self.parent.setdefault(p, p)
            x, p = p, self.parent[p]
        return p

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def parallelism_closure(B: Building, radius: int) -> dict[Cube, Cube]:
    """Edge -> class representative under elementary parallelism in the ball."""
    uf = _UnionFind()
    for C in B.ball(radius):
        for e in B.chamber_cubes(C, dim=1):
            uf.find(e)
        for Q in B.chamber_cubes(C, dim=2):
            for e1, e2 in elementary_parallel_pairs(B, Q):
                uf.union(e1, e2)
    return {e: uf.find(e) for e in list(uf.parent)}


# -- the special-action check --------------------------------------------------

@dataclass
class SpecialReport:
    box: dict
    configurations_checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def clean_violations(self) -> list:
        return [v for v in self.violations if v["kind"] == "clean"]

    @property
    def nice_violations(self) -> list:
        return [v for v in self.violations if v["kind"] == "nice"]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"box": self.box, "configurations_checked": self.configurations_checked,
                "violations": self.violations}


def subgroup_box(B: Building, generators: list[Element], radius: int,
                 membership: Callable[[Element], bool] | None = None) -> list[Element]:
    """Subgroup elements of syllable length at most ``radius``.

    With a membership test this is exact (a filter of the ball).  Otherwise
    it is the closure of the generators inside words of bounded length,
    which can miss elements reached only through longer intermediates.
    """
    g = B.g
    if membership is not None:
        return [x for x in g.enumerate_ball(radius) if membership(x)]
    cap = radius + max((len(x) for x in generators), default=0)
    gens = set(generators) | {g.invert(x) for x in generators}
    seen = {()}
    frontier = [()]
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                x = g.multiply(w, s)
                if len(x) <= cap and x not in seen:
                    seen.add(x)
                    nxt.append(x)
        frontier = nxt
    return sorted((x for x in seen if len(x) <= radius), key=lambda w: (len(w), w))


def hat_gamma_member(B: Building, x: Element) -> bool:
    """Kernel of the map to the product of the abelianized vertex groups."""
    g = B.g
    for m in range(g.n):
        G = g.groups[m]
        if G.is_abelian():
            acc = 0
            for v, e in x:
                if v == m:
                    acc = G.mul(acc, e)
            if acc:
                return False
        else:
            if g.retract(x, (m,)):
                return False
    return True


def hat_gamma_index(B: Building) -> int:
    out = 1
    for p in B.g.orders:
        out *= p
    return out


def check_special(B: Building, elements: Iterable[Element], radius: int,
                  box_note: dict | None = None) -> SpecialReport:
    """Clean and nice conditions for the given elements on the radius ball.

    Cleanliness: for distinct oriented edges at a common initial vertex,
    ``g e1`` is never oriented-parallel to ``e2``.  Niceness: whenever
    ``(e1, e2)`` is a square corner, ``g e1 || e1'`` and ``e2 || e2'`` with
    ``e1', e2'`` incident at a vertex, those two edges form a corner there.
    """
    elements = list(dict.fromkeys(elements))
    chambers = B.ball(radius)
    vertices = sorted({v for C in chambers for v in B.chamber_vertices(C)})
    rep = SpecialReport(box={"element_count": len(elements), "ball_radius": radius,
                             "vertex_count": len(vertices), **(box_note or {})})

    orbit_cache: dict[HyperplaneId, set[HyperplaneId]] = {}

    def orbit(H: HyperplaneId) -> set[HyperplaneId]:
        hit = orbit_cache.get(H)
        if hit is None:
            hit = {translate_hyperplane(B, x, H) for x in elements}
            orbit_cache[H] = hit
        return hit

    def witness_element(H: HyperplaneId, target: HyperplaneId) -> Element:
        return next(x for x in elements if translate_hyperplane(B, x, H) == target)

    per_vertex = {}
    for v in vertices:
        oes = oriented_edges_at(B, v)
        per_vertex[v] = [(oe, hyperplane_of(B, oe.edge)) for oe in oes]

    # cleanliness
    for v, items in per_vertex.items():
        for a, (oe1, H1) in enumerate(items):
            imgs = orbit(H1)
            for b, (oe2, H2) in enumerate(items):
                if a == b:
                    continue
                rep.configurations_checked += 1
                if oe1.up == oe2.up and H2 in imgs:
                    x = witness_element(H1, H2)
                    rep.violations.append({"kind": "clean", "witness": {
                        "element": element_to_json(x), "vertex": _vjson(v),
                        "e1": _ejson(oe1), "e2": _ejson(oe2)}})

    # niceness
    crossing_images: dict[tuple[HyperplaneId, HyperplaneId], tuple] = {}
    corner_sets = {}
    for v in vertices:
        cs = corners_at(B, v)
        corner_sets[v] = cs
        for pair in cs:
            e1, e2 = sorted(pair)
            for f1, f2 in ((e1, e2), (e2, e1)):
                H1, H2 = hyperplane_of(B, f1), hyperplane_of(B, f2)
                for img in orbit(H1):
                    crossing_images.setdefault((img, H2), (v, f1, f2))
    for v, items in per_vertex.items():
        edges = sorted({oe.edge for oe, _ in items})
        hyp = {e: hyperplane_of(B, e) for e in edges}
        for e1p, e2p in itertools.permutations(edges, 2):
            rep.configurations_checked += 1
            if frozenset((e1p, e2p)) in corner_sets[v]:
                continue
            src = crossing_images.get((hyp[e1p], hyp[e2p]))
            if src is not None:
                v0, f1, f2 = src
                x = witness_element(hyperplane_of(B, f1), hyp[e1p])
                rep.violations.append({"kind": "nice", "witness": {
                    "element": element_to_json(x), "corner_vertex": _vjson(v0),
                    "e1": _cjson(f1), "e2": _cjson(f2), "vertex": _vjson(v),
                    "e1p": _cjson(e1p), "e2p": _cjson(e2p)}})
    return rep


def _vjson(v: BVertex) -> dict:
    return {"rep": element_to_json(v.rep), "type": list(v.type)}


def _cjson(e: Cube) -> dict:
    return {"rep": element_to_json(e.rep), "J1": list(e.J1), "J2": list(e.J2)}


def _ejson(oe: OrientedEdge) -> dict:
    return {**_cjson(oe.edge), "up": oe.up}
