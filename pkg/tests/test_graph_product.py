import json
import random

import pytest
from hypothesis import given, settings

from rabkit.errors import InputError
from rabkit.graph_product import (
    DefiningGraph, FiniteGroup, coset_min_rep, element_from_json, element_to_json,
    enumerate_ball, invert, load_graph, make_graph, multiply, normal_form, retract,
    spherical_sets,
)
from rabkit.oracles import all_words, brute_coset_min, move_components

from strategies import G0, elements, spherical, subsets, words

I, J, K, L = range(4)


def test_normal_form_examples(g0):
    assert normal_form([], g0) == ()
    assert normal_form([(I, 1), (I, 1)], g0) == ()
    w = ((K, 1), (I, 1), (K, 1))
    assert normal_form(w, g0) == w


def test_normal_form_is_leftmost_minimal(g0):
    # k and j commute, so j comes first in the canonical order
    assert normal_form([(K, 1), (J, 1)], g0) == ((J, 1), (K, 1))
    # l blocks nothing but is never adjacent, so order is kept
    assert normal_form([(L, 1), (I, 1)], g0) == ((L, 1), (I, 1))


def test_normal_form_rejects_bad_indices(g0):
    with pytest.raises(InputError):
        normal_form([(7, 1)], g0)
    with pytest.raises(InputError):
        normal_form([(I, 2)], g0)
    with pytest.raises(InputError):
        normal_form([("x",)], g0)


def test_group_operations(g0):
    x = normal_form([(K, 1), (L, 2), (I, 1)], g0)
    assert multiply(x, (), g0) == x
    assert invert(((I, 1),), g0) == ((I, 1),)
    assert multiply(((K, 1),), ((K, 1),), g0) == ((K, 2),)
    assert multiply(x, invert(x, g0), g0) == ()


def test_move_closure_agrees_with_normal_form(g0):
    comp = move_components(g0, 4)
    classes = {}
    for w in all_words(g0, 4):
        classes.setdefault(normal_form(w, g0), set()).add(comp[w])
    assert all(len(c) == 1 for c in classes.values())
    assert len(classes) == len(set(comp.values()))


def test_retract_examples(g0):
    assert retract((), (I,), g0) == ()
    assert retract(normal_form([(I, 1), (K, 1)], g0), (I,), g0) == ((I, 1),)
    # deleting l lets the two i letters cancel
    assert retract(normal_form([(I, 1), (L, 1), (I, 1)], g0), (I, J), g0) == ()


def test_retract_composition_seeded(g0):
    rng = random.Random(0)
    letters = g0.letters()
    for _ in range(1000):
        w = normal_form([rng.choice(letters) for _ in range(rng.randint(0, 8))], g0)
        J1 = {v for v in range(4) if rng.random() < 0.5}
        J2 = {v for v in range(4) if rng.random() < 0.5}
        assert retract(retract(w, J1, g0), J2, g0) == retract(w, J1 & J2, g0)


def test_coset_min_rep_examples(g0):
    assert coset_min_rep(((I, 1),), (I,), g0) == ()
    assert coset_min_rep(normal_form([(K, 1), (I, 1)], g0), (I,), g0) == ((K, 1),)
    assert brute_coset_min(g0, normal_form([(K, 1), (I, 1)], g0), (I,)) == [((K, 1),)]


def test_coset_min_rep_matches_brute_force(g0):
    for a in enumerate_ball(g0, 3):
        for Js in spherical_sets(g0):
            shortest = brute_coset_min(g0, a, Js)
            assert shortest == [coset_min_rep(a, Js, g0)]


def test_coset_min_rep_idempotent_seeded(g0):
    rng = random.Random(1)
    letters = g0.letters()
    for _ in range(1000):
        a = normal_form([rng.choice(letters) for _ in range(rng.randint(0, 8))], g0)
        Js = {v for v in range(4) if rng.random() < 0.5}
        r = coset_min_rep(a, Js, g0)
        assert coset_min_rep(r, Js, g0) == r


def test_spherical_sets_and_perp(g0):
    assert spherical_sets(g0) == [(), (I,), (J,), (K,), (L,), (I, J), (J, K)]
    assert g0.perp((J,)) == (I, K)
    assert g0.perp(()) == (I, J, K, L)
    assert g0.perp_closed(()) == (I, J, K, L)
    assert g0.perp_closed((I, J)) == (I, J)
    with pytest.raises(InputError):
        g0.perp((I, K))


def test_enumerate_ball(g0):
    assert enumerate_ball(g0, 0) == [()]
    assert len(enumerate_ball(g0, 1)) == 7
    sizes = [len(enumerate_ball(g0, r)) for r in range(5)]
    assert sizes == sorted(sizes)
    ball = enumerate_ball(g0, 3)
    assert len(ball) == len(set(ball))
    assert all(normal_form(x, g0) == x for x in ball)
    with pytest.raises(InputError):
        enumerate_ball(g0, -1)


@given(words)
def test_normal_form_respects_retractions(w):
    x = G0.normal_form(w)
    for v in range(G0.n):
        acc = 0
        for u, e in w:
            if u == v:
                acc = G0.groups[v].mul(acc, e)
        assert G0.retract(x, (v,)) == (((v, acc),) if acc else ())


@given(elements, elements, subsets)
def test_retract_is_homomorphism(a, b, Js):
    assert G0.retract(G0.multiply(a, b), Js) == G0.multiply(G0.retract(a, Js), G0.retract(b, Js))


@given(elements, subsets)
def test_coset_law(a, Js):
    r = G0.coset_min_rep(a, Js)
    assert G0.in_subgroup(G0.multiply(G0.invert(r), a), Js)


@given(elements, elements, spherical)
def test_coset_equality_criterion(a, b, Js):
    same = G0.coset_min_rep(a, Js) == G0.coset_min_rep(b, Js)
    assert same == G0.in_subgroup(G0.multiply(G0.invert(a), b), Js)


@given(elements, elements, elements)
@settings(max_examples=50)
def test_associativity(a, b, c):
    assert G0.multiply(G0.multiply(a, b), c) == G0.multiply(a, G0.multiply(b, c))


def test_table_groups():
    # S3 given by a table; index 0 is the identity
    s3 = [[0, 1, 2, 3, 4, 5], [1, 2, 0, 4, 5, 3], [2, 0, 1, 5, 3, 4],
          [3, 5, 4, 0, 2, 1], [4, 3, 5, 1, 0, 2], [5, 4, 3, 2, 1, 0]]
    G = FiniteGroup(0, s3)
    assert not G.is_abelian()
    assert all(G.mul(a, G.inv(a)) == 0 for a in range(6))
    g = DefiningGraph(["s", "z"], [], [G, FiniteGroup(2)])
    x = g.normal_form([(0, 1), (1, 1), (0, 3)])
    assert g.multiply(x, g.invert(x)) == ()
    with pytest.raises(InputError):
        FiniteGroup(0, [[0, 1], [0, 1]])
    with pytest.raises(InputError):
        FiniteGroup(1)


def test_json_round_trip(tmp_path, g0):
    p = tmp_path / "g.json"
    p.write_text(json.dumps(g0.to_json()))
    h = load_graph(p)
    assert h.orders == g0.orders and h.edges == g0.edges and h.names == g0.names
    x = normal_form([(K, 1), (I, 1)], g0)
    assert element_from_json(element_to_json(x), h) == x


@pytest.mark.parametrize("spec", [
    {"vertices": [{"name": "a"}]},
    {"vertices": [{"name": "a", "order": 2}], "edges": [["a", "b"]]},
    {"vertices": [{"name": "a", "order": 2}], "edges": [["a", "a"]]},
    {"vertices": []},
    [],
])
def test_bad_specs(spec):
    with pytest.raises(InputError):
        DefiningGraph.from_json(spec)


def test_make_graph_mixed_orders():
    g = make_graph([2, 5], [(0, 1)])
    assert len(g.enumerate_ball(2)) == 1 + 5 + 4
