"""Generalized polygons, Fuchsian case classification, vertex links and rigidity tests."""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, field

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from .building import BVertex, Building, Chamber, Cube
from .graph_product import DefiningGraph
from .report import Report


def defining_nx(g: DefiningGraph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges)
    return G


@dataclass
class PolygonReport:
    is_gen_mgon: bool
    m: int | None
    bipartition: tuple[tuple, tuple] | None
    bidegrees: tuple[int, int] | None
    thick: bool
    connected: bool
    bipartite: bool
    diameter: int | None
    girth: int | None
    reason: str = ""

    def to_json(self) -> dict:
        d = asdict(self)
        if self.bipartition is not None:
            d["bipartition"] = [list(s) for s in self.bipartition]
        return d


def _two_coloring(G: nx.Graph) -> tuple[tuple, tuple] | None:
    color = {}
    for s in sorted(G.nodes):
        if s in color:
            continue
        color[s] = 0
        queue = [s]
        while queue:
            x = queue.pop()
            for y in G[x]:
                if y not in color:
                    color[y] = 1 - color[x]
                    queue.append(y)
                elif color[y] == color[x]:
                    return None
    return (tuple(sorted(x for x in color if color[x] == 0)),
            tuple(sorted(x for x in color if color[x] == 1)))


def graph_polygon_report(G: nx.Graph) -> PolygonReport:
    n = G.number_of_nodes()
    connected = n > 0 and nx.is_connected(G)
    parts = _two_coloring(G)
    degs = dict(G.degree)
    thick = n > 0 and min(degs.values()) >= 3
    bideg = None
    if parts is not None:
        side = [{degs[x] for x in p} for p in parts]
        if all(len(s) == 1 for s in side):
            bideg = (next(iter(side[0])), next(iter(side[1])))
    if not connected:
        return PolygonReport(False, None, parts, bideg, thick, False, parts is not None, None, None,
                             "disconnected")
    diameter = nx.diameter(G)
    girth = nx.girth(G)
    girth = None if girth == float("inf") else int(girth)
    if parts is None:
        return PolygonReport(False, None, None, None, thick, True, False, diameter, girth,
                             "not bipartite")
    ok = girth is not None and girth == 2 * diameter and diameter >= 2
    reason = "" if ok else f"diameter {diameter}, girth {girth}"
    return PolygonReport(ok, diameter if ok else None, parts, bideg, thick, True, True, diameter,
                         girth, reason)


def polygon_report(g: DefiningGraph) -> PolygonReport:
    return graph_polygon_report(defining_nx(g))


@dataclass
class CaseReport:
    case: str
    parameters: dict
    polygon: PolygonReport
    reason: str = ""
    link_check: dict | None = None
    notes: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"case": self.case, "parameters": self.parameters, "reason": self.reason,
                "polygon": self.polygon.to_json(), "link_check": self.link_check, "notes": self.notes}


def _side_values(values: dict, part: tuple) -> int | None:
    s = {values[x] for x in part}
    return next(iter(s)) if len(s) == 1 else None


def classify_case(g: DefiningGraph) -> CaseReport:
    """Which Fuchsian case the defining data falls in: "i", "ii", "iii" or "none"."""
    pr = polygon_report(g)
    params = {"m": pr.m, "d1": None, "d2": None, "p1": None, "p2": None}
    if not pr.is_gen_mgon:
        return CaseReport("none", params, pr, f"not a generalized polygon ({pr.reason})")
    if pr.m < 3:
        return CaseReport("none", params, pr, f"generalized {pr.m}-gon; the cases need m >= 3")
    I1, I2 = pr.bipartition
    deg = dict(defining_nx(g).degree)
    orders = {m: g.orders[m] for m in range(g.n)}
    d1, d2 = _side_values(deg, I1), _side_values(deg, I2)
    p1, p2 = _side_values(orders, I1), _side_values(orders, I2)
    params.update(d1=d1, d2=d2, p1=p1, p2=p2)
    if None in (d1, d2):
        return CaseReport("none", params, pr, "degrees are not constant on each side")
    if None in (p1, p2):
        return CaseReport("none", params, pr, "group orders are not constant on each side")
    if min(d1, d2, p1, p2) > 2:
        case = "i"
    elif p1 == p2 == 2 and min(d1, d2) > 2:
        case = "ii"
    elif d1 == d2 == 2 and min(p1, p2) > 2:
        case = "iii"
    else:
        return CaseReport("none", params, pr, "parameters match none of the three cases")
    out = CaseReport(case, params, pr)
    out.notes = _shape_notes(case, params)
    return out


def _shape_notes(case: str, p: dict) -> dict:
    """Descriptive shape of a Fuchsian chamber; metric data is not computed."""
    m = p["m"]
    if case == "i":
        return {"two_cell": "single square", "sides": 4,
                "side_multiplicities": sorted([p["p1"], p["p2"], p["d1"], p["d2"]])}
    if case == "ii":
        return {"two_cell": "four squares around a rank-2 vertex", "sides": 4,
                "corner_angles": f"pi/{m} at rank-0 corners", "side_multiplicities": [p["d1"], p["d2"]]}
    return {"two_cell": "squares around a rank-0 vertex", "sides": 2 * m,
            "corner_angles": "right angles at rank-2 corners",
            "side_multiplicities": [p["p1"], p["p2"]]}


# -- links ------------------------------------------------------------------------

def _edge_key(B: Building, e: Cube) -> frozenset:
    return frozenset(B.cube_vertices(e))


def vertex_link(B: Building, v: BVertex) -> nx.Graph:
    """Link of a vertex in the cube complex: edges at v, joined when they span a square."""
    from .hyperplanes import squares_at
    L = nx.Graph()
    for e in B.edges_at(v):
        L.add_node(_edge_key(B, e))
    for Q in squares_at(B, v):
        verts = B.cube_vertices(Q)
        nbrs = [u for u in verts if u != v and len(set(u.type) ^ set(v.type)) == 1]
        a, b = (frozenset((v, u)) for u in nbrs)
        L.add_edge(a, b)
    return L


def _complete_bipartite_shape(L: nx.Graph) -> tuple[int, int] | None:
    parts = _two_coloring(L)
    if parts is None or not nx.is_connected(L):
        return None
    a, b = parts
    if L.number_of_edges() != len(a) * len(b):
        return None
    return tuple(sorted((len(a), len(b))))


def verify_links(g: DefiningGraph, radius: int = 1) -> Report:
    """Check every vertex link in the radius ball against its predicted shape."""
    B = Building(g)
    rep = Report("links", box={"radius": radius})
    Gd = defining_nx(g)
    pr = graph_polygon_report(Gd)
    deg = dict(Gd.degree)
    seen = set()
    for C in B.ball(radius):
        for v in B.chamber_vertices(C):
            if v in seen:
                continue
            seen.add(v)
            L = vertex_link(B, v)
            if v.rank == 0:
                ok = nx.is_isomorphic(L, Gd)
                lp = graph_polygon_report(L)
                rep.check("rank0_link_is_defining_graph", ok, v)
                rep.check("rank0_link_gonality", lp.is_gen_mgon and lp.m == pr.m, v)
            elif v.rank == 1:
                (i,) = v.type
                rep.check("rank1_link_complete_bipartite",
                          _complete_bipartite_shape(L) == tuple(sorted((g.orders[i], deg[i]))), v)
            elif v.rank == 2:
                i, j = v.type
                rep.check("rank2_link_complete_bipartite",
                          _complete_bipartite_shape(L) == tuple(sorted((g.orders[i], g.orders[j]))), v)
            else:
                rep.check("dimension_at_most_two", False, v)
    rep.notes["vertices"] = len(seen)
    return rep


# -- Fuchsian 2-cells ------------------------------------------------------------------

def _square_edges(B: Building, Q: Cube) -> list[frozenset]:
    verts = B.cube_vertices(Q)
    return [frozenset((a, b)) for a, b in itertools.combinations(verts, 2)
            if len(set(a.type) ^ set(b.type)) == 1]


def _cells_around(B: Building, C: Chamber, case: str) -> list[frozenset]:
    """2-cells meeting chamber C, each a set of squares."""
    squares = B.chamber_cubes(C, 2)
    if case == "i":
        return [frozenset([Q]) for Q in squares]
    if case == "iii":
        return [frozenset(squares)]
    from .hyperplanes import squares_at
    out = []
    for w in B.chamber_vertices(C):
        if w.rank == 2:
            out.append(frozenset(Q for Q in squares_at(B, w) if w in B.cube_vertices(Q)))
    return out


def edge_cell_incidence(g: DefiningGraph, radius: int = 0, case: str | None = None) -> dict:
    """Number of 2-cells through each boundary side, grouped by the side's vertex types."""
    B = Building(g)
    case = case or classify_case(g).case
    if case not in ("i", "ii", "iii"):
        return {"case": case, "sides": {}, "multiplicities": [], "consistent": False}
    cells = set()
    for C in B.ball(radius + 2):
        cells.update(_cells_around(B, C, case))
    count: dict[frozenset, int] = {}
    for cell in cells:
        tally: dict[frozenset, int] = {}
        for Q in cell:
            for e in _square_edges(B, Q):
                tally[e] = tally.get(e, 0) + 1
        for e, k in tally.items():
            if k == 1:
                count[e] = count.get(e, 0) + 1
    sides: dict[str, set] = {}
    classes: dict[str, set] = {}
    part1 = set(polygon_report(g).bipartition[0])
    for C in B.ball(radius):
        for cell in _cells_around(B, C, case):
            tally = {}
            for Q in cell:
                for e in _square_edges(B, Q):
                    tally[e] = tally.get(e, 0) + 1
            for e, k in tally.items():
                if k == 1:
                    a, b = sorted(e, key=lambda v: v.rank)
                    key = f"{list(a.type)}-{list(b.type)}"
                    sides.setdefault(key, set()).add(count[e])
                    # side class: kind of edge and the bipartition side of its rank-1 end
                    r1 = a if a.rank == 1 else b
                    cls = f"rank{a.rank}-rank{b.rank}:I{1 if r1.type[0] in part1 else 2}"
                    classes.setdefault(cls, set()).add(count[e])
    consistent = all(len(s) == 1 for s in sides.values()) and all(len(s) == 1 for s in classes.values())
    table = {k: sorted(s) for k, s in sorted(sides.items())}
    by_class = {k: sorted(s) for k, s in sorted(classes.items())}
    mult = sorted(x for s in classes.values() for x in s)
    out = {"case": case, "radius": radius, "side_classes": by_class, "multiplicities": mult,
           "consistent": consistent, "sides": table}
    if case == "iii":
        out["source"] = "rank-1 to rank-2 sides, multiplicities from the vertex-group orders"
    return out


# -- rigidity and hyperbolicity ----------------------------------------------------------

def graph_automorphisms_nx(G: nx.Graph) -> list[dict]:
    return list(GraphMatcher(G, G).isomorphisms_iter())


def star_rigid(g: DefiningGraph) -> bool:
    """Only the identity automorphism fixes some closed vertex star pointwise."""
    G = defining_nx(g)
    autos = graph_automorphisms_nx(G)
    for v in G.nodes:
        star = {v, *G[v]}
        for f in autos:
            if all(f[x] == x for x in star) and any(f[x] != x for x in G.nodes):
                return False
    return True


def has_induced_4cycle(g: DefiningGraph) -> bool:
    G = defining_nx(g)
    for quad in itertools.combinations(sorted(G.nodes), 4):
        H = G.subgraph(quad)
        if H.number_of_edges() == 4 and all(d == 2 for _, d in H.degree):
            return True
    return False


def subdivide(g: DefiningGraph, k: int, order: int = 2) -> DefiningGraph:
    """Replace each edge by a path of k edges (new vertices get groups of the given order)."""
    from .graph_product import make_graph
    orders = list(g.orders)
    edges = []
    for a, b in g.edges:
        prev = a
        for _ in range(k - 1):
            orders.append(order)
            cur = len(orders) - 1
            edges.append((prev, cur))
            prev = cur
        edges.append((prev, b))
    return make_graph(orders, edges)


def relabel(g: DefiningGraph, perm: list[int]) -> DefiningGraph:
    """The same data with vertex m renamed perm[m]."""
    from .graph_product import DefiningGraph as DG
    n = g.n
    inv = [0] * n
    for a, b in enumerate(perm):
        inv[b] = a
    names = [g.names[inv[k]] for k in range(n)]
    groups = [g.groups[inv[k]] for k in range(n)]
    edges = [(perm[a], perm[b]) for a, b in g.edges]
    return DG(names, edges, groups)
