import itertools

import pytest

from rabkit.automorphisms import (
    GraphTwist, Translation, compose, graph_automorphisms, identity_perm, inverse,
)
from rabkit.building import Building, CHAMBER_STAR, Chamber
from rabkit.errors import DomainError, ValidationError
from rabkit.graph_product import claw_graph
from rabkit.groupoids import (
    BarPsiGroupoid, ClassOrder, TranslationGroupoid, ascent, barpsi_extend, build_gamma_hierarchy,
    class_order_for_gamma, encoding_report, extend_groupoid, gamma_groupoid, groupoid_holonomy,
    phi_from_hierarchy, residue_groupoids, validate_groupoid,
)

I, J, K, L = range(4)
A, Bv, Cv, Dv = range(4)  # claw: center b, leaves a, c, d
SWAP_CD = (0, 1, 3, 2)


@pytest.fixture(scope="module")
def claw():
    return Building(claw_graph())


@pytest.fixture(scope="module")
def claw_h(claw):
    return build_gamma_hierarchy(claw, class_order_for_gamma(claw), radius=1)


@pytest.fixture(scope="module")
def h0(B0):
    return build_gamma_hierarchy(B0, class_order_for_gamma(B0), radius=1)


def test_running_example_has_no_twists(g0):
    assert graph_automorphisms(g0) == [identity_perm(4)]


def test_encoding(B0, claw):
    assert encoding_report(B0).ok
    assert encoding_report(claw).ok


def test_gamma_groupoid_on_square_residue(B0):
    G = gamma_groupoid(B0, (I, J), CHAMBER_STAR)
    assert len(G.chambers) == 4
    maps = G.adjacent_maps()
    assert len(maps) == 8
    assert all(s == identity_perm(4) for s in maps.values())
    rep = G.report
    assert rep.ok and rep.checked["commutativity"] == 64
    assert len([(a, b) for a in G.chambers for b in G.chambers if a != b]) == 12


def test_gamma_groupoid_infinite_residue(B0):
    with pytest.raises(DomainError):
        gamma_groupoid(B0, (I, K), CHAMBER_STAR)
    G = gamma_groupoid(B0, (I, K), CHAMBER_STAR, radius=2)
    assert len(G.chambers) == 8


def test_translation_groupoid_membership(B0):
    T = TranslationGroupoid(B0, (I, K), CHAMBER_STAR)
    far = Chamber(((I, 1), (K, 1), (I, 1), (K, 2)))
    assert T.sigma(CHAMBER_STAR, far) == identity_perm(4)
    with pytest.raises(DomainError):
        T.sigma(CHAMBER_STAR, Chamber(((J, 1),)))


def _section_rule(sec):
    return lambda a, b: compose(inverse(sec[b]), sec[a])


def test_intersection_condition_rejects_leaf_swap(claw):
    # swapping c and d moves the {b, c} vertex shared by c-adjacent chambers
    R = claw.residue((Cv,), CHAMBER_STAR)
    sec = {R[0]: identity_perm(4), R[1]: SWAP_CD, R[2]: SWAP_CD}
    with pytest.raises(ValidationError) as exc:
        extend_groupoid(claw, (Cv,), R[0], _section_rule(sec))
    assert exc.value.condition == "(5')"


def test_inverse_condition(claw):
    R = claw.residue((A,), CHAMBER_STAR)

    def rule(a, b):
        return SWAP_CD if a == R[0] else identity_perm(4)

    with pytest.raises(ValidationError) as exc:
        extend_groupoid(claw, (A,), R[0], rule)
    assert exc.value.condition == "(2')"


def test_cocycle_condition(claw):
    R = claw.residue((A,), CHAMBER_STAR)

    def rule(a, b):
        if {a, b} == {R[0], R[1]}:
            return SWAP_CD
        return identity_perm(4)

    with pytest.raises(ValidationError) as exc:
        extend_groupoid(claw, (A,), R[0], rule)
    assert exc.value.condition == "(3')"


def test_automorphism_condition(claw):
    with pytest.raises(ValidationError) as exc:
        extend_groupoid(claw, (A,), CHAMBER_STAR, lambda a, b: (1, 0, 2, 3))
    assert exc.value.condition == "(1')"


def test_residue_groupoids_of_claw_leaf(claw):
    v = claw.vertex((), (A,))
    chambers, gs = residue_groupoids(claw, v)
    assert len(chambers) == 3 and len(gs) == 4
    for G in gs:
        assert validate_groupoid(G, chambers).ok
    keys = {G.key(chambers) for G in gs}
    assert len(keys) == 4


def test_twisted_barpsi_validates(claw, claw_h):
    v = claw.vertex((), (A,))
    chambers, gs = residue_groupoids(claw, v)
    twisted = [G for G in gs if any(G.sigma(chambers[0], C) != identity_perm(4) for C in chambers)]
    assert twisted
    for psi in gs:
        G = barpsi_extend(claw, psi, v, claw_h)
        assert G.report.ok
        lazy = BarPsiGroupoid(claw, v.type, psi, claw_h)
        for a, b in itertools.product(G.chambers, repeat=2):
            assert G.sigma(a, b) == lazy.sigma(a, b)
        for C in chambers:
            assert G.sigma(chambers[0], C) == psi.sigma(chambers[0], C)


def test_barpsi_reproduces_gamma_groupoid(B0, h0):
    v = B0.vertex((), (I,))
    psi = gamma_groupoid(B0, (I,), CHAMBER_STAR)
    G = barpsi_extend(B0, psi, v, h0, radius=2)
    assert all(s == identity_perm(4) for s in G.adjacent_maps().values())


def test_phi_from_hierarchy(B0, h0):
    G = phi_from_hierarchy(B0, (I,), CHAMBER_STAR, h0)
    assert len(G.chambers) == 2
    with pytest.raises(DomainError):
        phi_from_hierarchy(B0, (J,), CHAMBER_STAR, h0)
    Gj = phi_from_hierarchy(B0, (J,), CHAMBER_STAR, h0, radius=2)
    assert Gj.report.ok and len(Gj.chambers) == 8


def test_class_order(B0):
    o = class_order_for_gamma(B0)
    vs = {v.type: v for v in B0.chamber_vertices(CHAMBER_STAR)}
    # weights are binary numbers over the ordered labels
    assert [o.weight(B0, vs[t]) for t in [(), (I,), (J,), (I, J), (J, K)]] == [0, 1, 2, 3, 6]
    assert o.less(B0, vs[(I, J)], vs[(K,)])
    assert o.leq(B0, vs[(I,)], B0.vertex(((K, 1),), (I,)))
    assert not o.less(B0, vs[(I,)], B0.vertex(((K, 1),), (I,)))
    for a, b in itertools.product(vs.values(), repeat=2):
        lit = o.leq(B0, a, b)
        assert lit == (a.type == b.type or o.weight(B0, a) <= o.weight(B0, b))
    with pytest.raises(DomainError):
        class_order_for_gamma(B0, [0, 1, 1, 3])
    with pytest.raises(DomainError):
        ClassOrder((0, 0))
    assert o.validate(B0, 1).ok


def test_ascent(B0):
    o = class_order_for_gamma(B0)
    vs = {v.type: v for v in B0.chamber_vertices(CHAMBER_STAR)}
    # ascending the center always lands on the rank-1 vertex
    assert ascent(B0, vs[()], vs[(K,)], o) == vs[(K,)]
    # i is below j, so ascending {j} by {i} keeps j
    assert ascent(B0, vs[(J,)], vs[(I,)], o) == vs[(I, J)]
    # k is above j, so j is dropped
    assert ascent(B0, vs[(J,)], vs[(K,)], o) == vs[(K,)]
    with pytest.raises(DomainError):
        ascent(B0, vs[(I,)], vs[(K,)], o)
    with pytest.raises(DomainError):
        ascent(B0, vs[(I, J)], vs[(J,)], o)


def test_ascent_properties(B0):
    """The ascent contains u, stays in one chamber, and its class is not below v's."""
    o = class_order_for_gamma(B0)
    for C in B0.ball(1):
        for v in B0.chamber_vertices(C):
            for i in B0.perp(v.type):
                u = B0.vertex(C.label, (i,))
                w = ascent(B0, v, u, o, C)
                assert B0.contains(C, w) and i in w.type
                assert B0.leq(u, w)
                assert o.leq(B0, v, w)
                assert not o.less(B0, w, u)


def test_hierarchy_modes_agree(B0):
    o = class_order_for_gamma(B0)
    H = build_gamma_hierarchy(B0, o, radius=1, gammas=[((I, 1), (K, 1)), ((L, 2),)], inductive=True)
    assert H.report.ok
    assert H.report.checked["restriction"] > 0 and H.report.checked["matches_reference"] > 0
    H2 = build_gamma_hierarchy(B0, class_order_for_gamma(B0, [3, 2, 1, 0]), radius=1)
    assert H2.report.ok


def test_holonomy_homomorphism(claw, claw_h):
    v = claw.vertex((), (A,))
    elements = [(), ((A, 1),), ((Bv, 1),), ((A, 2), (Bv, 1)), ((Bv, 1), (A, 1))]
    hol = groupoid_holonomy(claw, elements, v, claw_h)
    assert hol.report.ok
    # the perp factor Γ_b acts trivially; Γ_a moves groupoids
    assert hol.is_trivial(0) and hol.is_trivial(2)
    assert not hol.is_trivial(1)


def test_holonomy_needs_stabilizer(claw, claw_h):
    v = claw.vertex((), (A,))
    with pytest.raises(DomainError):
        groupoid_holonomy(claw, [((Cv, 1),)], v, claw_h)


def test_transport_is_an_action(claw, claw_h):
    v = claw.vertex((), (A,))
    chambers, gs = residue_groupoids(claw, v)
    psi = BarPsiGroupoid(claw, v.type, gs[-1], claw_h)
    lam = Translation(claw, ((A, 1),))
    mu = GraphTwist(claw, SWAP_CD)
    left = psi.transported(mu).transported(lam)
    right = psi.transported(lam * mu)
    R = claw.residue((A, Bv), lam(mu(CHAMBER_STAR)))
    for a, b in itertools.product(R, repeat=2):
        assert left.sigma(a, b) == right.sigma(a, b)
