import itertools

import pytest
from hypothesis import given

from rabkit.building import BVertex, CHAMBER_STAR, Chamber, Gallery
from rabkit.errors import DomainError, InputError
from rabkit.oracles import brute_leq, brute_level_classes, brute_vertex_set
from rabkit.verify import suite_building

from strategies import elements

I, J, K, L = range(4)


def test_chamber_vertices(B0):
    vs = B0.chamber_vertices(CHAMBER_STAR)
    assert [v.type for v in vs] == [(), (I,), (J,), (K,), (L,), (I, J), (J, K)]
    C = Chamber(((K, 1), (I, 1)))
    assert B0.center(C) == BVertex(C.label, ())
    assert B0.center(C) in B0.chamber_vertices(C)


def test_shared_vertices_with_j_neighbour(B0):
    C = Chamber(((J, 1),))
    shared = set(B0.chamber_vertices(CHAMBER_STAR)) & set(B0.chamber_vertices(C))
    assert sorted(v.type for v in shared) == [(I, J), (J,), (J, K)]
    Jmin, sh = B0.chamber_intersection(CHAMBER_STAR, C)
    assert Jmin == (J,) and set(sh) == shared


def test_chamber_intersection_examples(B0):
    Jmin, shared = B0.chamber_intersection(CHAMBER_STAR, CHAMBER_STAR)
    assert Jmin == () and len(shared) == 7
    Jmin, shared = B0.chamber_intersection(CHAMBER_STAR, Chamber(((I, 1), (J, 1))))
    assert Jmin == (I, J) and [v.type for v in shared] == [(I, J)]
    assert B0.chamber_intersection(CHAMBER_STAR, Chamber(((L, 1), (I, 1)))) is None
    with pytest.raises(DomainError):
        B0.wedge(CHAMBER_STAR, Chamber(((L, 1), (I, 1))))


def test_adjacency(B0):
    assert B0.adjacency(CHAMBER_STAR, Chamber(((K, 1),))) == K
    assert B0.adjacency(CHAMBER_STAR, CHAMBER_STAR) is None
    assert len(B0.adjacent_chambers(CHAMBER_STAR)) == 6
    assert B0.adjacency(CHAMBER_STAR, Chamber(((I, 1), (J, 1)))) is None


def test_galleries(B0):
    G = Gallery(CHAMBER_STAR, ((I, 1), (K, 1), (K, 1)))
    cs = B0.gallery_chambers(G)
    assert cs[-1] == Chamber(((I, 1), (K, 2)))
    for a, b in zip(cs, cs[1:]):
        assert B0.adjacency(a, b) is not None
    with pytest.raises(InputError):
        B0.gallery_chambers(Gallery(CHAMBER_STAR, ((I, 0),)))
    D = Chamber(((K, 1), (I, 1), (L, 2)))
    assert B0.gallery_chambers(B0.gallery_between(CHAMBER_STAR, D))[-1] == D


def test_residues(B0):
    assert B0.residue((), CHAMBER_STAR) == [CHAMBER_STAR]
    assert len(B0.residue((I, J), CHAMBER_STAR)) == 4
    with pytest.raises(InputError):
        B0.residue((I, K), CHAMBER_STAR)
    R = B0.residue((I, K), CHAMBER_STAR, radius=2)
    assert len(R) == 1 + 3 + 4
    assert all(B0.residue_contains((I, K), CHAMBER_STAR, D) for D in R)
    far = Chamber(((I, 1), (K, 1), (I, 1), (K, 2), (I, 1)))
    assert B0.residue_contains((I, K), CHAMBER_STAR, far)
    assert not B0.residue_contains((I, K), CHAMBER_STAR, Chamber(((J, 1),)))


def test_leq_and_wedge(B0):
    vs = B0.chamber_vertices(CHAMBER_STAR)
    center = vs[0]
    assert all(B0.leq(center, v) for v in vs)
    w = B0.wedge(CHAMBER_STAR, Chamber(((K, 1),)))
    assert w.type == (K,) and w.rank == 1
    for a, b, c in itertools.product(vs, repeat=3):
        assert B0.leq(a, a)
        if B0.leq(a, b) and B0.leq(b, a):
            assert a == b
        if B0.leq(a, b) and B0.leq(b, c):
            assert B0.leq(a, c)


def test_lower_degree(B0):
    vs = {v.type: v for v in B0.chamber_vertices(CHAMBER_STAR)}
    assert B0.lower_edges(vs[()]) == [] and B0.lower_degree(vs[()]) == 0
    assert B0.lower_degree(vs[(I,)]) == 2
    assert B0.lower_degree(vs[(K,)]) == 3
    assert B0.lower_degree(vs[(I, J)]) == 4
    assert B0.lower_degree(vs[(J, K)]) == 5


def test_level_classes(B0):
    centers = [B0.center(C) for C in B0.ball(2)]
    assert len({B0.level_class(v) for v in centers}) == 1
    a = B0.vertex((), (I,))
    b = B0.vertex(((J, 1),), (I,))
    assert B0.level_adjacent(a, b)
    assert B0.level_class(a) == B0.level_class(b)
    c = B0.vertex(((K, 1),), (I,))
    assert not B0.level_adjacent(a, c)
    assert B0.level_class(a) != B0.level_class(c)


def test_level_closure_matches_class_id(B0):
    verts = sorted({v for C in B0.ball(2) for v in B0.chamber_vertices(C)})
    closure = brute_level_classes(B0, verts)
    inner = sorted({v for C in B0.ball(1) for v in B0.chamber_vertices(C)})
    for u, v in itertools.combinations(verts, 2):
        if closure[u] == closure[v]:
            assert B0.level_class(u) == B0.level_class(v)
    for u, v in itertools.combinations(inner, 2):
        if B0.level_class(u) == B0.level_class(v):
            assert closure[u] == closure[v]


def test_one_downset(B0):
    vs = {v.type: v for v in B0.chamber_vertices(CHAMBER_STAR)}
    assert B0.one_downset(vs[()]) == []
    assert B0.one_downset(vs[(I, J)], CHAMBER_STAR) == [vs[(I,)], vs[(J,)]]
    # over all chambers through the vertex the downset has |G_i|+|G_j| members
    assert len(B0.one_downset(vs[(I, J)])) == 4
    for C in B0.ball(1):
        for u in B0.chamber_vertices(C):
            assert len(B0.one_downset(u, C)) == u.rank
            full = B0.one_downset(u)
            assert all(brute_leq(B0, x, u) for x in full)
            assert sorted({x.type for x in full}) == [(m,) for m in u.type]
    # nonempty downsets determine the vertex
    seen = {}
    for C in B0.ball(2):
        for u in B0.chamber_vertices(C):
            if u.rank:
                key = frozenset(B0.one_downset(u))
                assert seen.setdefault(key, u) == u


def test_product_map(B0):
    C = CHAMBER_STAR
    assert B0.product_map((I,), C, C, C) == C
    out = B0.product_map((I,), C, Chamber(((I, 1),)), Chamber(((J, 1),)))
    assert out == Chamber(((I, 1), (J, 1)))
    # J = {i}: perp is {j}
    image = {B0.product_map((I,), C, c1, c2)
             for c1 in B0.residue((I,), C) for c2 in B0.residue((J,), C)}
    assert image == set(B0.residue((I, J), C))
    for D in image:
        c1, c2 = B0.split((I,), C, D)
        assert B0.product_map((I,), C, c1, c2) == D
    with pytest.raises(DomainError):
        B0.product_map((I,), C, Chamber(((K, 1),)), C)
    with pytest.raises(DomainError):
        B0.split((I,), C, Chamber(((K, 1),)))


@given(elements)
def test_vertex_sets_match_cosets(x):
    from strategies import G0
    from rabkit.building import Building
    B = Building(G0)
    C = Chamber(x)
    got = {(frozenset(G0.multiply(v.rep, h) for h in G0.subgroup_elements(v.type)), v.type)
           for v in B.chamber_vertices(C)}
    assert got == brute_vertex_set(B, C)


def test_truncation_counts(B0):
    T = B0.truncation(3)
    assert (len(T.chambers), len(T.vertices), len(T.cubes)) == (116, 585, 1633)
    T0 = B0.truncation(0)
    assert len(T0.chambers) == 1 and len(T0.vertices) == 7
    dot = B0.truncation(1).to_dot(B0)
    assert dot.startswith("graph building {") and 'label="i"' in dot


def test_building_suite_small(g0):
    rep = suite_building(g0, radius=2)
    assert rep.ok, rep.witnesses
    assert rep.box["chambers"] == 30
