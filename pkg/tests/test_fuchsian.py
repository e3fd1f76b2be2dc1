import random

import networkx as nx
from hypothesis import given, settings, strategies as st

from rabkit.fuchsian import (
    classify_case, edge_cell_incidence, graph_polygon_report, has_induced_4cycle, polygon_report,
    relabel, star_rigid, subdivide, verify_links,
)
from rabkit.graph_product import (
    complete_bipartite, cycle_graph, heawood_graph, make_graph, running_example,
)
from rabkit.oracles import circuit_polygon_m


def test_polygon_examples():
    k23 = polygon_report(complete_bipartite(2, 3))
    assert k23.is_gen_mgon and k23.m == 2 and not k23.thick
    c6 = polygon_report(cycle_graph(6, 3))
    assert c6.is_gen_mgon and c6.m == 3 and c6.bidegrees == (2, 2) and not c6.thick
    hw = polygon_report(heawood_graph())
    assert hw.is_gen_mgon and hw.m == 3 and hw.bidegrees == (3, 3) and hw.thick
    assert (hw.diameter, hw.girth) == (3, 6)
    g0 = polygon_report(running_example())
    assert not g0.is_gen_mgon and g0.reason == "disconnected"
    odd = polygon_report(cycle_graph(5, 2))
    assert not odd.is_gen_mgon and not odd.bipartite


def test_subdivided_heawood_is_a_hexagon_polygon():
    pr = polygon_report(subdivide(heawood_graph(), 2))
    assert pr.is_gen_mgon and pr.m == 6 and not pr.thick
    assert pr.bidegrees == (3, 2)


def test_classify_examples():
    hw = classify_case(heawood_graph(2))
    assert hw.case == "ii" and hw.parameters == {"m": 3, "d1": 3, "d2": 3, "p1": 2, "p2": 2}
    assert classify_case(heawood_graph(3)).case == "i"
    c6 = classify_case(cycle_graph(6, 3))
    assert c6.case == "iii" and (c6.parameters["p1"], c6.parameters["p2"]) == (3, 3)
    assert classify_case(cycle_graph(6, 2)).case == "none"
    assert classify_case(running_example()).case == "none"
    k23 = classify_case(complete_bipartite(2, 3))
    assert k23.case == "none" and k23.parameters["m"] == 2 and "m >= 3" in k23.reason
    mixed = make_graph([2, 3, 2, 3, 2, 3], [(k, (k + 1) % 6) for k in range(6)])
    assert classify_case(mixed).case == "none"


def test_classify_invariant_under_relabeling():
    rng = random.Random(0)
    for g in [heawood_graph(2), heawood_graph(3), cycle_graph(6, 3), complete_bipartite(2, 3)]:
        base = classify_case(g)
        for _ in range(5):
            perm = list(range(g.n))
            rng.shuffle(perm)
            other = classify_case(relabel(g, perm))
            assert other.case == base.case
            p, q = base.parameters, other.parameters
            assert p["m"] == q["m"]
            assert {(p["d1"], p["p1"]), (p["d2"], p["p2"])} == {(q["d1"], q["p1"]), (q["d2"], q["p2"])}


def test_links():
    rep = verify_links(heawood_graph(2), 1)
    assert rep.ok and rep.checked["rank0_link_is_defining_graph"] == 15
    rep = verify_links(cycle_graph(6, 3), 1)
    assert rep.ok and rep.checked["rank2_link_complete_bipartite"] > 0


def test_edge_cell_incidence():
    hw = edge_cell_incidence(heawood_graph(2))
    assert hw["case"] == "ii" and hw["multiplicities"] == [3, 3] and hw["consistent"]
    c6 = edge_cell_incidence(cycle_graph(6, 3))
    assert c6["multiplicities"] == [3, 3] and c6["source"].startswith("rank-1 to rank-2")
    assert set(c6["side_classes"]) == {"rank1-rank2:I1", "rank1-rank2:I2"}
    # case (i): sides of a square carry p1, p2, d1, d2
    g = make_graph([3] * 7 + [4] * 7, heawood_graph().edges)
    c1 = edge_cell_incidence(g)
    assert c1["case"] == "i"
    assert c1["side_classes"] == {"rank0-rank1:I1": [3], "rank0-rank1:I2": [3],
                                  "rank1-rank2:I1": [3], "rank1-rank2:I2": [4]}
    assert edge_cell_incidence(complete_bipartite(2, 3))["consistent"] is False


def test_star_rigidity_and_four_cycles():
    edge = make_graph([2, 2], [(0, 1)])
    assert star_rigid(edge)
    assert not has_induced_4cycle(running_example())
    c4 = cycle_graph(4, 2)
    assert has_induced_4cycle(c4)
    # closed stars of a 4-cycle contain three of its four vertices, so only the identity fixes one
    assert star_rigid(c4)
    assert not star_rigid(complete_bipartite(2, 3))
    assert not star_rigid(heawood_graph())
    assert not has_induced_4cycle(heawood_graph())


@st.composite
def small_graphs(draw):
    n = draw(st.integers(2, 8))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    G = nx.Graph()
    G.add_nodes_from(range(n))
    G.add_edges_from(chosen)
    return G


@settings(max_examples=150, deadline=None)
@given(small_graphs())
def test_polygon_report_matches_circuit_oracle(G):
    pr = graph_polygon_report(G)
    m = circuit_polygon_m({x: set(G[x]) for x in G})
    assert (pr.m if pr.is_gen_mgon else None) == m


def test_polygon_oracle_on_known_graphs():
    for G, m in [(nx.cycle_graph(8), 4), (nx.complete_bipartite_graph(3, 3), 2),
                 (nx.cycle_graph(10), 5), (nx.complete_bipartite_graph(2, 4), 2)]:
        assert circuit_polygon_m({x: set(G[x]) for x in G}) == m
        assert graph_polygon_report(G).m == m
