import pytest

from rabkit.building import CHAMBER_STAR, Chamber, Cube
from rabkit.errors import DomainError
from rabkit.hyperplanes import (
    OrientedEdge, chamber_edges, check_special, dual_edges, edge_label, hat_gamma_index,
    hat_gamma_member, hyperplane_of, hyperplanes_below, parallel, parallelism_closure,
    subgroup_box, translate_hyperplane,
)
from rabkit.verify import suite_hyperplanes, suite_special

I, J, K, L = range(4)


def test_edge_labels(B0):
    assert edge_label(B0.cube((), (), (I,))) == I
    assert edge_label(B0.cube(((K, 1),), (J,), (J, K))) == K
    with pytest.raises(DomainError):
        edge_label(B0.cube((), (), (I, J)))
    counts = {}
    for e in chamber_edges(B0, CHAMBER_STAR):
        counts[edge_label(e)] = counts.get(edge_label(e), 0) + 1
    # j sits in two edges of the defining graph, hence three j-edges per chamber
    assert counts == {I: 2, J: 3, K: 2, L: 1}


def test_oriented_edge_endpoints(B0):
    e = B0.cube((), (J,), (I, J))
    up = OrientedEdge(e, True)
    assert up.initial(B0).type == (J,) and up.terminal(B0).type == (I, J)
    assert OrientedEdge(e, False).initial(B0) == up.terminal(B0)


def test_parallelism(B0):
    e1, e2 = [e for e in chamber_edges(B0, CHAMBER_STAR) if edge_label(e) == I]
    assert parallel(B0, e1, e2)
    f = [e for e in chamber_edges(B0, Chamber(((I, 1),))) if edge_label(e) == I and e.J1 == ()][0]
    assert not parallel(B0, B0.cube((), (), (I,)), f)
    closure = parallelism_closure(B0, 3)
    assert closure[B0.cube((), (), (I,))] != closure[f]


def test_dual_edges_of_i_hyperplane(B0):
    H = hyperplane_of(B0, B0.cube((), (), (I,)))
    edges = dual_edges(B0, H)
    assert len(edges) == 3
    assert sorted((e.J1, e.J2) for e in edges) == [((), (I,)), ((), (I,)), ((J,), (I, J))]


def test_hyperplanes_below(B0):
    assert hyperplanes_below(B0, B0.center(CHAMBER_STAR)) == set()
    a = B0.vertex((), (I,))
    b = B0.vertex(((J, 1),), (I,))
    assert B0.level_adjacent(a, b)
    assert hyperplanes_below(B0, a) == hyperplanes_below(B0, b)
    # the two lower edges sit in chambers differing by an i-letter, so they are not parallel
    assert len(hyperplanes_below(B0, a)) == 2


def test_translate_hyperplane(B0):
    e = B0.cube((), (), (K,))
    H = hyperplane_of(B0, e)
    g = ((I, 1), (K, 1))
    assert translate_hyperplane(B0, g, H) == hyperplane_of(B0, B0.translate_cube(g, e))


def test_hat_gamma(B0):
    assert hat_gamma_index(B0) == 36
    assert hat_gamma_member(B0, ())
    assert not hat_gamma_member(B0, ((I, 1),))
    x = ((I, 1), (K, 1), (I, 1), (K, 2))
    assert hat_gamma_member(B0, B0.g.normal_form(x))
    assert subgroup_box(B0, [], 3, membership=lambda y: hat_gamma_member(B0, y)) == [()]


def test_trivial_subgroup_is_special(B0):
    assert check_special(B0, [()], 2).ok


def test_gamma_niceness_but_not_cleanliness(B0):
    sr = check_special(B0, B0.g.enumerate_ball(2), 2)
    assert sr.nice_violations == []
    assert len(sr.clean_violations) > 0


def test_hyperplane_suite(g0):
    rep = suite_hyperplanes(g0, radius=2)
    assert rep.ok, rep.witnesses
    assert rep.notes["dual_edges_of_first_hyperplane_at_base"] == 3


def test_special_suite_small(g0):
    rep = suite_special(g0, radius=2, element_radius=3, extended_element_radius=4)
    assert rep.ok, rep.witnesses
    assert rep.notes["hat_gamma_elements"] == 1
