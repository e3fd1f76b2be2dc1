"""Verification suites over finite boxes.

Each suite compares the fast algebraic machinery against literal
definitions on an explicit ball and returns a :class:`Report`.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import itertools
import random

from . import oracles
from .building import Building, CHAMBER_STAR, Chamber
from .graph_product import DefiningGraph
from .hyperplanes import (
    check_special, corners_at, dual_edges, edge_endpoints, edge_label, elementary_parallel_pairs,
    hat_gamma_index, hat_gamma_member, hyperplane_of, hyperplanes_below, oriented_edges_at,
    parallelism_closure, subgroup_box,
)
from .report import Report


def _subsets(n: int) -> list[tuple[int, ...]]:
    return [J for r in range(n + 1) for J in itertools.combinations(range(n), r)]


# -- words -----------------------------------------------------------------------

def suite_words(g: DefiningGraph, radius: int = 2, seed: int = 0, word_len: int = 4,
                samples: int = 1000) -> Report:
    rep = Report("words", box={"move_closure_word_length": word_len, "samples": samples,
                               "seed": seed, "coset_ball_radius": radius})
    comp = oracles.move_components(g, word_len)
    by_nf: dict = {}
    by_comp: dict = {}
    for w in oracles.all_words(g, word_len):
        nf = g.normal_form(w)
        by_nf.setdefault(nf, set()).add(comp[w])
        by_comp.setdefault(comp[w], set()).add(nf)
    for nf, comps in sorted(by_nf.items()):
        rep.check("normal_form_vs_move_closure", len(comps) == 1, nf)
    for c, nfs in sorted(by_comp.items()):
        rep.check("move_closure_vs_normal_form", len(nfs) == 1, sorted(nfs))

    rng = random.Random(seed)
    letters = g.letters()

    def rand_elt():
        return g.normal_form([rng.choice(letters) for _ in range(rng.randint(0, 8))])

    for _ in range(samples):
        w = rand_elt()
        J1 = {v for v in range(g.n) if rng.random() < 0.5}
        J2 = {v for v in range(g.n) if rng.random() < 0.5}
        rep.check("retract_composition",
                  g.retract(g.retract(w, J1), J2) == g.retract(w, J1 & J2), (w, J1, J2))
        r = g.coset_min_rep(w, J1)
        rep.check("coset_rep_idempotent", g.coset_min_rep(r, J1) == r, (w, J1))
        rep.check("coset_law", g.in_subgroup(g.multiply(g.invert(r), w), J1), (w, J1))
        b = rand_elt()
        rep.check("retract_homomorphism",
                  g.retract(g.multiply(w, b), J1) == g.multiply(g.retract(w, J1), g.retract(b, J1)),
                  (w, b, J1))
        rep.check("inverse_law", g.multiply(w, g.invert(w)) == (), w)
    for a in g.enumerate_ball(radius):
        for J in g.spherical_sets():
            rep.check("coset_rep_is_unique_shortest",
                      oracles.brute_coset_min(g, a, J) == [g.coset_min_rep(a, J)], (a, J))
    return rep


# -- building ---------------------------------------------------------------------

def suite_building(g: DefiningGraph, radius: int = 3, seed: int = 0) -> Report:
    B = Building(g)
    rep = Report("building", box={"ball_radius": radius, "seed": seed})
    ball = B.ball(radius)
    rep.box["chambers"] = len(ball)
    vsets = {C: oracles.brute_vertex_set(B, C) for C in ball}
    vlists = {C: B.chamber_vertices(C) for C in ball}

    def coset_key(v):
        return (frozenset(g.multiply(v.rep, h) for h in g.subgroup_elements(v.type)), v.type)

    # chamber intersections
    for C1 in ball:
        for C2 in ball:
            d = B.delta(C1, C2)
            containing = [J for J in B.spherical if oracles.in_special_subgroup(g, d, J)]
            hit = B.chamber_intersection(C1, C2)
            brute_shared = vsets[C1] & vsets[C2]
            rep.check("intersection_nonempty_iff_spherical_coset",
                      (hit is not None) == bool(containing) == bool(brute_shared), (C1, C2))
            if hit is None:
                continue
            Jmin, shared = hit
            minimal = [J for J in containing if all(set(J) <= set(K) for K in containing)]
            rep.check("intersection_unique_minimal_type", minimal == [Jmin], (C1, C2))
            rep.check("intersection_shared_vertices",
                      {coset_key(v) for v in shared} == brute_shared, (C1, C2))
            w = B.wedge(C1, C2)
            rep.check("wedge_is_unique_minimal", all(B.leq(w, v) for v in shared)
                      and sum(all(B.leq(u, v) for v in shared) for u in shared) == 1, (C1, C2))
            i = B.adjacency(C1, C2)
            rep.check("adjacent_iff_rank1_wedge", (i is not None) == (w.rank == 1), (C1, C2))
            if i is not None:
                rep.check("i_adjacent_iff_wedge_type_i", w.type == (i,), (C1, C2))

    # residue intersections
    subsets = _subsets(g.n)
    for C in ball:
        member = {}
        for J in subsets:
            member[J] = {D for D in ball if B.residue_contains(J, C, D)}
        for J1, J2 in itertools.combinations_with_replacement(subsets, 2):
            J12 = tuple(sorted(set(J1) & set(J2)))
            brute = {D for D in ball if oracles.in_special_subgroup(g, B.delta(C, D), J12)}
            rep.check("residue_intersection", member[J1] & member[J2] == brute, (C, J1, J2))

    # product decomposition of perp-closed residues
    rad2 = max(radius - 1, 1)
    for C in ball:
        for J in B.spherical:
            Jp = B.perp(J)
            R1 = B.residue(J, C)
            R2 = B.residue(Jp, C, rad2)
            table = {(c1, c2): B.product_map(J, C, c1, c2) for c1 in R1 for c2 in R2}
            rep.check("product_injective", len(set(table.values())) == len(table), (C, J))
            for (c1, c2), D in table.items():
                rep.check("product_split_inverse", B.split(J, C, D) == (c1, c2), (C, J, c1, c2))
                rep.check("product_lands_in_residue",
                          B.residue_contains(B.perp_closed(J), C, D), (C, J))
            for c1 in R1:
                rep.check("product_section_1", table[(c1, C)] == c1, (C, J, c1))
                rep.check("product_row_is_perp_residue",
                          all(B.residue_contains(Jp, c1, table[(c1, c2)]) for c2 in R2), (C, J, c1))
            for c2 in R2:
                rep.check("product_section_2", table[(C, c2)] == c2, (C, J, c2))
                rep.check("product_column_is_J_residue",
                          {table[(c1, c2)] for c1 in R1} == set(B.residue(J, c2)), (C, J, c2))
            items = list(table.items())
            for (p, D), (p2, D2) in itertools.combinations(items, 2):
                i = B.adjacency(D, D2)
                a1 = B.adjacency(p[0], p2[0])
                a2 = B.adjacency(p[1], p2[1])
                expect = None
                if a1 is not None and p[1] == p2[1]:
                    expect = a1
                elif a2 is not None and p[0] == p2[0]:
                    expect = a2
                rep.check("product_adjacency", i == expect, (C, J, p, p2))

    # poset
    verts = sorted({v for C in ball for v in vlists[C]})
    rep.box["vertices"] = len(verts)
    cubes_through: dict = {}
    for C in ball:
        for Q in B.chamber_cubes(C):
            for v in B.cube_vertices(Q):
                cubes_through.setdefault(v, set()).add(Q)
    for u in verts:
        by_dim: dict = {}
        for Q in cubes_through.get(u, ()):
            by_dim.setdefault(Q.dim, []).append(Q)
        chambers_u = B.vertex_chambers(u)
        for v in verts:
            d = v.rank - u.rank
            brute = oracles.brute_leq(B, u, v)
            rep.check("leq_matches_definition", B.leq(u, v) == brute, (u, v))
            if d < 0:
                continue
            cube_hit = any(B.cube_contains(Q, v) for Q in by_dim.get(d, ()))
            rep.check("leq_iff_cube", brute == cube_hit, (u, v))
            if brute:
                rep.check("leq_upward_closed", all(B.contains(C, v) for C in chambers_u), (u, v))

    # level classes: a single chamber in each orthogonal section
    by_class: dict = {}
    for v in verts:
        by_class.setdefault(B.level_class(v), []).append(v)
    for cls, members in sorted(by_class.items()):
        Jp = B.perp(cls.type)
        for v1 in members:
            for v2 in members:
                C1 = B.vertex_chambers(v1)[0]
                hits = [D for D in B.vertex_chambers(v2) if B.residue_contains(Jp, C1, D)]
                rep.check("orthogonal_sections_meet_once", len(hits) == 1, (v1, v2))

    # exact vertex identity against the coset equivalence
    small = g.enumerate_ball(min(radius + 1, 4))
    rep.box["vertex_identity_ball"] = len(small)
    inv = {x: g.invert(x) for x in small}
    reps = {J: {x: g.coset_min_rep(x, J) for x in small} for J in B.spherical}
    for x, y in itertools.combinations(small, 2):
        supp = g.support(g.multiply(inv[x], y))
        for J in B.spherical:
            rep.check("vertex_identity_exact",
                      (reps[J][x] == reps[J][y]) == (supp <= set(J)), (x, y, J))

    # translation invariance
    rng = random.Random(seed)
    ball2 = B.ball(min(radius, 2))
    gammas = [rng.choice(g.enumerate_ball(4)) for _ in range(50)]
    for gamma in gammas:
        T = B.translate_chamber
        for C1, C2 in itertools.combinations(ball2, 2):
            rep.check("invariance_adjacency",
                      B.adjacency(C1, C2) == B.adjacency(T(gamma, C1), T(gamma, C2)), (gamma, C1, C2))
            h1 = B.chamber_intersection(C1, C2)
            h2 = B.chamber_intersection(T(gamma, C1), T(gamma, C2))
            rep.check("invariance_wedge_type",
                      (h1 and h1[0]) == (h2 and h2[0]), (gamma, C1, C2))
        for C in ball2:
            for v in B.chamber_vertices(C):
                rep.check("invariance_level_class",
                          B.translate_class(gamma, B.level_class(v))
                          == B.level_class(B.translate_vertex(gamma, v)), (gamma, v))
        for J in B.spherical:
            R1 = B.residue(J, CHAMBER_STAR)
            R2 = B.residue(B.perp(J), CHAMBER_STAR, 1)
            gC = T(gamma, CHAMBER_STAR)
            for c1 in R1:
                for c2 in R2:
                    rep.check("invariance_product",
                              T(gamma, B.product_map(J, CHAMBER_STAR, c1, c2))
                              == B.product_map(J, gC, T(gamma, c1), T(gamma, c2)), (gamma, J))
    return rep


# -- hyperplanes --------------------------------------------------------------------

def suite_hyperplanes(g: DefiningGraph, radius: int = 2) -> Report:
    B = Building(g)
    rep = Report("hyperplanes", box={"ball_radius": radius, "closure_radius": radius + 1})
    big = radius + 1
    closure = parallelism_closure(B, big)
    ids = {e: hyperplane_of(B, e) for e in closure}
    # parallel edges share labels and ids
    for e, root in closure.items():
        rep.check("parallel_edges_share_label", edge_label(e) == edge_label(root), e)
        rep.check("closure_within_id_class", ids[e] == ids[root], e)
    # ids are not coarser than the closure once the ball is enlarged
    inner = {e for C in B.ball(max(radius - 1, 0)) for e in B.chamber_cubes(C, dim=1)}
    by_id: dict = {}
    for e in inner:
        by_id.setdefault(ids[e], set()).add(closure[e])
    for H, roots in sorted(by_id.items()):
        rep.check("id_class_connected_in_enlarged_ball", len(roots) == 1, H)
    # oriented parallelism on every square
    for C in B.ball(radius):
        for Q in B.chamber_cubes(C, dim=2):
            for e1, e2 in elementary_parallel_pairs(B, Q):
                lo1, _ = edge_endpoints(B, e1)
                lo2, _ = edge_endpoints(B, e2)
                # initial vertices of the upward orientations lie on one side
                side = B.cube(Q.rep, tuple(sorted(set(lo1.type) & set(lo2.type))),
                              tuple(sorted(set(lo1.type) | set(lo2.type))))
                rep.check("oriented_parallel", side.dim == 1
                          and set(B.cube_vertices(side)) == {lo1, lo2}, (Q, e1, e2))
        for i in range(g.n):
            hs = {hyperplane_of(B, e) for e in B.chamber_cubes(C, dim=1)
                  if edge_label(e) == i}
            rep.check("one_i_hyperplane_per_chamber", len(hs) == 1, (C, i))
    # corners exist exactly for adjacent labels
    verts = sorted({v for C in B.ball(radius) for v in B.chamber_vertices(C)})
    for v in verts:
        cs = corners_at(B, v)
        edges = sorted({oe.edge for oe in oriented_edges_at(B, v)})
        for e1, e2 in itertools.combinations(edges, 2):
            i, j = edge_label(e1), edge_label(e2)
            rep.check("corner_iff_adjacent_labels",
                      (frozenset((e1, e2)) in cs) == g.adjacent(i, j), (v, e1, e2))
    # hyperplanes below characterize level classes
    below = {v: frozenset(hyperplanes_below(B, v)) for v in verts}
    cls = {v: B.level_class(v) for v in verts}
    for u, v in itertools.combinations_with_replacement(verts, 2):
        rep.check("hyperplanes_below_iff_same_class",
                  (below[u] == below[v]) == (cls[u] == cls[v]), (u, v))
    # and level classes are the closure of level adjacency
    closure_cls = oracles.brute_level_classes(B, verts)
    for u, v in itertools.combinations(verts, 2):
        if closure_cls[u] == closure_cls[v]:
            rep.check("level_closure_within_class", cls[u] == cls[v], (u, v))
    inner_verts = sorted({v for C in B.ball(max(radius - 1, 0)) for v in B.chamber_vertices(C)})
    for u, v in itertools.combinations(inner_verts, 2):
        if cls[u] == cls[v]:
            rep.check("class_connected_by_level_adjacency",
                      closure_cls[u] == closure_cls[v], (u, v))
    H = hyperplane_of(B, B.cube((), (), (0,)))
    rep.notes["dual_edges_of_first_hyperplane_at_base"] = len(dual_edges(B, H, radius=big))
    return rep


# -- special -----------------------------------------------------------------------

def suite_special(g: DefiningGraph, radius: int = 3, element_radius: int = 3,
                  extended_element_radius: int = 6) -> Report:
    B = Building(g)
    rep = Report("special", box={"ball_radius": radius, "element_radius": element_radius,
                                 "extended_element_radius": extended_element_radius})
    member = lambda x: hat_gamma_member(B, x)  # noqa: E731
    rep.notes["hat_gamma_index"] = hat_gamma_index(B)
    for label, er in (("hat_gamma", element_radius), ("hat_gamma_extended", extended_element_radius)):
        box = subgroup_box(B, [], er, membership=member)
        sr = check_special(B, box, radius, {"element_radius": er})
        rep.notes[f"{label}_elements"] = len(box)
        _absorb(rep, label, sr, ("clean", "nice"))
    gr = min(radius, 2)
    gamma_box = g.enumerate_ball(gr)
    sr = check_special(B, gamma_box, gr)
    _absorb(rep, "gamma", sr, ("nice",))
    rep.notes["gamma_box_elements"] = len(gamma_box)
    rep.notes["gamma_clean_violations_reported_only"] = len(sr.clean_violations)
    return rep


def _absorb(rep: Report, label: str, sr, kinds) -> None:
    for kind in kinds:
        name = f"{label}_{kind}"
        bad = [v for v in sr.violations if v["kind"] == kind]
        rep.checked[name] = rep.checked.get(name, 0) + sr.configurations_checked
        if bad:
            rep.failed[name] = rep.failed.get(name, 0) + len(bad)
            room = 20 - len(rep.witnesses)
            rep.witnesses.extend({"check": name, "witness": v["witness"]} for v in bad[:max(room, 0)])


# -- groupoids ---------------------------------------------------------------------

def _violation_input(g: DefiningGraph):
    """A graph automorphism and letter whose constant rank-1 section breaks only the intersection rule."""
    from .automorphisms import apply_perm, graph_automorphisms
    for sigma in graph_automorphisms(g):
        for i in range(g.n):
            if sigma[i] != i:
                continue
            if any(apply_perm(sigma, L) != L for L in g.spherical_sets() if i in L):
                return sigma, i
    return None


def suite_groupoids(g: DefiningGraph, radius: int = 2, seed: int = 0) -> Report:
    from .automorphisms import Translation, compose, identity_perm, inverse
    from .errors import ValidationError
    from .graph_product import claw_graph
    from .groupoids import (
        ascent, class_order_for_gamma, encoding_report, extend_groupoid, gamma_groupoid,
    )
    B = Building(g)
    rep = Report("groupoids", box={"ascent_radius": radius, "residue_bases": "radius-1 ball",
                                   "seed": seed})
    rep.merge(encoding_report(B), "encoding.")
    for C in B.ball(1):
        for J in g.spherical_sets():
            G = gamma_groupoid(B, J, C)
            rep.merge(G.report, "gamma_groupoid.")

    # a seeded input that fails only the intersection condition
    found = _violation_input(g)
    Bv = B
    if found is None:
        Bv = Building(claw_graph())
        found = _violation_input(Bv.g)
        rep.notes["intersection_rejection_graph"] = "claw (no usable automorphism on the input graph)"
    sigma, i = found
    R = Bv.residue((i,), CHAMBER_STAR)
    sec = {C: (identity_perm(Bv.g.n) if k == 0 else sigma) for k, C in enumerate(R)}
    try:
        extend_groupoid(Bv, (i,), R[0], lambda a, b: compose(inverse(sec[b]), sec[a]))
        rep.check("rejects_intersection_violation", False, (sigma, i))
    except ValidationError as exc:
        rep.check("rejects_intersection_violation", exc.condition == "(5')", (sigma, i, exc.condition))

    order = class_order_for_gamma(B)
    rng = random.Random(seed)
    gammas = [rng.choice(g.enumerate_ball(2)) for _ in range(3)]
    for C in B.ball(radius):
        verts = B.chamber_vertices(C)
        for v in verts:
            for i in B.perp(v.type):
                u = B.vertex(C.label, (i,))
                w = ascent(B, v, u, order, C)
                rep.check("ascent_type_sandwich", i in w.type and set(w.type) <= set(v.type) | {i},
                          (C, v, i))
                rep.check("ascent_strictly_increasing", order.less(B, v, w), (C, v, i))
                for gm in gammas:
                    T = Translation(B, gm)
                    rep.check("ascent_equivariant",
                              T.vertex(w) == ascent(B, T.vertex(v), T.vertex(u), order), (C, v, i, gm))
                for j in B.perp(v.type):
                    if j == i or not g.adjacent(i, j) or not order.label_less(i, j):
                        continue
                    u2 = B.vertex(C.label, (j,))
                    rep.check("double_ascent", ascent(B, w, u2, order, C) == ascent(B, v, u2, order, C),
                              (C, v, i, j))
            # adjacent chambers: same-type vertices through a perpendicular letter
            for i in B.perp(v.type):
                for e in range(1, g.orders[i]):
                    D = Chamber(g.multiply(C.label, ((i, e),)))
                    v2 = B.vertex(D.label, v.type)
                    u = B.wedge(C, D)
                    rep.check("adjacent_ascent_by_wedge",
                              ascent(B, v, u, order, C) == ascent(B, v2, u, order, D), (C, D, v))
                    for j in g.perp_closed(tuple(sorted(set(v.type) | {i}))):
                        if j in v.type or j == i:
                            continue
                        w1 = ascent(B, v, B.vertex(C.label, (j,)), order, C)
                        w2 = ascent(B, v2, B.vertex(D.label, (j,)), order, D)
                        rep.check("adjacent_ascents_level_adjacent", B.level_adjacent(w1, w2),
                                  (C, D, v, j))

    # the action on groupoids composes
    G = gamma_groupoid(B, tuple(range(g.n)), CHAMBER_STAR, radius=1)
    for _ in range(3):
        lam, mu = (Translation(B, rng.choice(g.enumerate_ball(1))) for _ in range(2))
        left = G.transported(mu).transported(lam)
        right = G.transported(lam * mu)
        for C in G.chambers:
            D1 = lam(mu(C))
            for Dc in G.chambers[:8]:
                D2 = lam(mu(Dc))
                rep.check("action_composes", left.sigma(D1, D2) == right.sigma(D1, D2), (C, Dc))
    return rep


# -- hierarchy ---------------------------------------------------------------------

def _class_stabilizer_sample(B: Building, v, rng: random.Random, k: int):
    """Elements of the parabolic of the closed perp of v's type (they fix the class of v at the base)."""
    g = B.g
    K = B.perp_closed(v.type)
    letters = [s for s in g.letters() if s[0] in K]
    out = [()]
    while len(out) < k:
        out.append(g.normal_form([rng.choice(letters) for _ in range(rng.randint(1, 3))]))
    return out


def suite_hierarchy(g: DefiningGraph, radius: int = 2, seed: int = 0, samples: int = 5) -> Report:
    from .automorphisms import identity_perm
    from .groupoids import (
        barpsi_extend, build_gamma_hierarchy, class_order_for_gamma, gamma_groupoid,
        groupoid_holonomy, residue_groupoids,
    )
    B = Building(g)
    rng = random.Random(seed)
    rep = Report("hierarchy", box={"radius": radius, "seed": seed, "holonomy_samples": samples})
    order = class_order_for_gamma(B)
    rep.merge(order.validate(B, radius), "class_order.")
    gammas = [rng.choice(g.enumerate_ball(2)) for _ in range(samples)]
    H = build_gamma_hierarchy(B, order, radius=radius, gammas=gammas, inductive=True)
    rep.merge(H.report, "inductive.")
    ident = identity_perm(g.n)
    for v in B.chamber_vertices(CHAMBER_STAR):
        psi = gamma_groupoid(B, v.type, CHAMBER_STAR)
        bar = barpsi_extend(B, psi, v, H, radius)
        ref = gamma_groupoid(B, bar.J, CHAMBER_STAR, radius)
        rep.check("barpsi_reproduces_gamma_groupoid",
                  bar.chambers == ref.chambers and all(s == ident for s in bar.adjacent_maps().values()),
                  v)
        rep.notes[f"barpsi_chambers_type_{list(v.type)}"] = len(bar.chambers)
        if v.rank == 0:
            continue
        elements = _class_stabilizer_sample(B, v, rng, samples)
        hol = groupoid_holonomy(B, elements, v, H)
        rep.merge(hol.report, "holonomy.")
        rep.notes[f"groupoids_on_residue_type_{list(v.type)}"] = len(hol.groupoids)
        perp = set(B.perp(v.type))
        for x, p in zip(elements, hol.perms):
            if all(s[0] in perp for s in x):
                rep.check("perp_factor_acts_trivially", p == tuple(range(len(hol.groupoids))), x)
    return rep


# -- atlases -----------------------------------------------------------------------

def suite_atlases(g: DefiningGraph, radius: int = 3, seed: int = 0, galleries: int = 200,
                  rewrites: int = 50, translations: int = 10, demo_samples: int = 10) -> Report:
    from .atlases import (
        PushforwardAtlas, atlas_word, commensuration_demo, extend_automorphism, gallery_from_word,
        inversion_atlas, letters_agree, preserves_atlas, random_gallery, rewrite_gallery,
        standard_atlas, transfer_gallery, validate_atlas,
    )
    from .automorphisms import Translation, agree_on, inversion_twist
    B = Building(g)
    rng = random.Random(seed)
    rep = Report("atlases", box={"radius": radius, "seed": seed, "galleries": galleries,
                                 "rewrites": rewrites, "translations": translations})
    std = standard_atlas(B)
    rep.merge(validate_atlas(std, 1), "standard.")
    for x in rng.sample(g.enumerate_ball(2), min(5, len(g.enumerate_ball(2)))):
        rep.merge(preserves_atlas(Translation(B, x), std, B.ball(2)), "gamma_invariance.")
    starts = g.enumerate_ball(2)
    for _ in range(galleries):
        G = random_gallery(g, rng, start=rng.choice(starts))
        rep.check("word_round_trip", gallery_from_word(atlas_word(G, std), G.start, std) == G, G)
    order3 = [m for m in range(g.n) if g.orders[m] == 3 and g.groups[m].is_abelian()]
    other = inversion_atlas(B) if order3 else std
    for _ in range(rewrites):
        G = random_gallery(g, rng)
        Hg = rewrite_gallery(g, G, rng)
        rep.check("transfer_invariant_under_moves",
                  transfer_gallery(std, other, G, CHAMBER_STAR) == transfer_gallery(std, other, Hg, CHAMBER_STAR),
                  (G, Hg))
    ball = B.ball(radius)
    pool = [x for x in g.enumerate_ball(radius) if x]
    for gm in rng.sample(pool, min(translations, len(pool))):
        E = extend_automorphism(None, CHAMBER_STAR, Chamber(gm), std, std, radius)
        rep.check("extension_is_translation", agree_on(E, Translation(B, gm), ball) is None, gm)
    E = extend_automorphism(None, CHAMBER_STAR, CHAMBER_STAR, std, std, radius)
    rep.check("identity_extension", all(E.apply(C)[0] == C for C in ball))
    if order3:
        inv = inversion_atlas(B)
        rep.merge(validate_atlas(inv, 1), "inversion.")
        rep.merge(letters_agree(PushforwardAtlas(std, inversion_twist(B)), inv, B.ball(2)),
                  "inversion_is_pushforward.")
        h = Translation(B, rng.choice(g.enumerate_ball(2)))
        f = inversion_twist(B)
        rep.merge(letters_agree(PushforwardAtlas(std, f * h),
                                PushforwardAtlas(PushforwardAtlas(std, h), f), B.ball(2)),
                  "pushforward_functorial.")
        demo = commensuration_demo(B, "inversion", radius, demo_samples, seed)
        for s in demo.samples:
            rep.check("inversion_demo_conjugate_in_gamma", s["ok"], s)
        rep.check("inversion_conjugator_not_a_translation", demo.conjugator["differs_from_translation"])
        rep.notes["inversion_demo"] = demo.to_json()
    demo = commensuration_demo(B, "none", min(radius, 2), 3, seed)
    rep.check("trivial_demo", demo.ok and not demo.conjugator["differs_from_translation"])
    return rep


# -- fuchsian ----------------------------------------------------------------------

def suite_fuchsian(g: DefiningGraph, seed: int = 0) -> Report:
    import networkx as nx
    from .fuchsian import (
        classify_case, edge_cell_incidence, graph_polygon_report, has_induced_4cycle, polygon_report,
        relabel, star_rigid, subdivide, verify_links,
    )
    from .graph_product import complete_bipartite, cycle_graph, heawood_graph
    rep = Report("fuchsian", box={"seed": seed})
    case = classify_case(g)
    rep.notes["input_case"] = case.to_json()
    rep.notes["input_star_rigid"] = star_rigid(g)
    rep.notes["input_has_induced_4cycle"] = has_induced_4cycle(g)
    if case.case != "none":
        rep.merge(verify_links(g, 1), "input_links.")
        inc = edge_cell_incidence(g)
        rep.check("input_incidence_consistent", inc["consistent"])
        rep.notes["input_incidence"] = inc
    refs = [("heawood", heawood_graph(2), "ii"), ("hexagon_3", cycle_graph(6, 3), "iii"),
            ("heawood_3", heawood_graph(3), "i"), ("k23", complete_bipartite(2, 3), "none")]
    rng = random.Random(seed)
    for name, h, want in refs:
        got = classify_case(h)
        rep.check("reference_case", got.case == want, (name, got.case))
        for _ in range(3):
            perm = list(range(h.n))
            rng.shuffle(perm)
            rep.check("case_relabel_invariant", classify_case(relabel(h, perm)).case == got.case, name)
        if want != "none":
            rep.merge(verify_links(h, 1), f"{name}_links.")
    sub = polygon_report(subdivide(heawood_graph(2), 2))
    rep.check("subdivided_heawood_is_6gon", sub.is_gen_mgon and sub.m == 6)
    for _ in range(60):
        n = rng.randint(2, 8)
        G = nx.gnp_random_graph(n, rng.random(), seed=rng.randrange(10**6))
        pr = graph_polygon_report(G)
        m = oracles.circuit_polygon_m({x: set(G[x]) for x in G})
        rep.check("polygon_matches_circuit_oracle", (pr.m if pr.is_gen_mgon else None) == m, sorted(G.edges))
    for G in (nx.cycle_graph(10), nx.complete_bipartite_graph(3, 3), nx.cycle_graph(8)):
        pr = graph_polygon_report(G)
        m = oracles.circuit_polygon_m({x: set(G[x]) for x in G})
        rep.check("polygon_matches_circuit_oracle", pr.m == m, sorted(G.edges))
    return rep


# -- dispatch ----------------------------------------------------------------------

SUITES = ("words", "building", "hyperplanes", "special", "groupoids", "hierarchy", "atlases",
          "fuchsian")


def run_suite(name: str, g: DefiningGraph, radius: int | None = None, seed: int = 0,
              threads: int = 1) -> Report:
    """Run one suite (or ``all``); ``radius`` overrides each suite's default ball.

    ``threads`` only matters for ``all``: suites run on a pool of that size and are
    merged in fixed order, so the report does not depend on scheduling.
    """
    kw = {} if radius is None else {"radius": radius}
    if name == "words":
        return suite_words(g, seed=seed, **kw)
    if name == "building":
        return suite_building(g, seed=seed, **kw)
    if name == "hyperplanes":
        return suite_hyperplanes(g, **kw)
    if name == "special":
        return suite_special(g, **kw)
    if name == "groupoids":
        return suite_groupoids(g, seed=seed, **kw)
    if name == "hierarchy":
        return suite_hierarchy(g, seed=seed, **kw)
    if name == "atlases":
        return suite_atlases(g, seed=seed, **kw)
    if name == "fuchsian":
        return suite_fuchsian(g, seed=seed)
    if name == "all":
        rep = Report("all", box={"radius": radius, "seed": seed, "suites": list(SUITES)})
        with ThreadPoolExecutor(max_workers=threads) as pool:
            subs = list(pool.map(lambda s: run_suite(s, g, radius, seed), SUITES))
        for s, sub in zip(SUITES, subs):
            rep.merge(sub, f"{s}.")
            rep.box[s] = sub.box
        return rep
    from .errors import InputError
    raise InputError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}, all")
