"""Brute-force reference computations.

These are deliberately naive: they follow definitions literally and never
call the fast paths they are used to check.
"""

from __future__ import annotations

import itertools
from collections import deque
from typing import Iterable

from .graph_product import DefiningGraph, Element, Syllable


# -- words --------------------------------------------------------------------

def all_words(g: DefiningGraph, max_len: int) -> list[tuple[Syllable, ...]]:
    letters = g.letters()
    out = []
    for n in range(max_len + 1):
        out.extend(itertools.product(letters, repeat=n))
    return out


def move_neighbors(g: DefiningGraph, w: tuple[Syllable, ...], max_len: int):
    """Words one move (or inverse move) away, staying within ``max_len``."""
    n = len(w)
    letters = g.letters()
    # insert g g^-1 / delete it
    if n + 2 <= max_len:
        for k in range(n + 1):
            for v, e in letters:
                yield w[:k] + ((v, e), (v, g.groups[v].inv(e))) + w[k:]
    for k in range(n - 1):
        (v, e), (u, f) = w[k], w[k + 1]
        if v == u and g.groups[v].mul(e, f) == 0:
            yield w[:k] + w[k + 2:]
    # split a letter / merge two letters of one vertex into a nonidentity one
    if n + 1 <= max_len:
        for k, (v, e) in enumerate(w):
            G = g.groups[v]
            for a in range(1, G.order):
                b = G.mul(G.inv(a), e)
                if b:
                    yield w[:k] + ((v, a), (v, b)) + w[k + 1:]
    for k in range(n - 1):
        (v, e), (u, f) = w[k], w[k + 1]
        if v == u:
            h = g.groups[v].mul(e, f)
            if h:
                yield w[:k] + ((v, h),) + w[k + 2:]
    # swap commuting neighbours
    for k in range(n - 1):
        if g.adjacent(w[k][0], w[k + 1][0]):
            yield w[:k] + (w[k + 1], w[k]) + w[k + 2:]


def move_components(g: DefiningGraph, max_len: int) -> dict[tuple, int]:
    """Connected components of the move graph on words of length <= max_len."""
    comp: dict[tuple, int] = {}
    label = 0
    for w in all_words(g, max_len):
        if w in comp:
            continue
        comp[w] = label
        queue = deque([w])
        while queue:
            x = queue.popleft()
            for y in move_neighbors(g, x, max_len):
                if y not in comp:
                    comp[y] = label
                    queue.append(y)
        label += 1
    return comp


def brute_coset_min(g: DefiningGraph, a: Element, J: Iterable[int]) -> list[Element]:
    """All shortest elements of the coset a * Gamma_J, J spherical."""
    elems = [g.multiply(a, h) for h in g.subgroup_elements(tuple(J))]
    best = min(len(x) for x in elems)
    return sorted(x for x in elems if len(x) == best)


def in_special_subgroup(g: DefiningGraph, x: Element, J: Iterable[int]) -> bool:
    return g.retract(x, J) == x


# -- building -------------------------------------------------------------------

def brute_vertex_set(B, C) -> set:
    """Vertices of a chamber as (coset as frozenset of elements, type)."""
    g = B.g
    out = set()
    for J in B.spherical:
        out.add((frozenset(g.multiply(C.label, h) for h in g.subgroup_elements(J)), J))
    return out


def brute_leq(B, u, v) -> bool:
    if not set(u.type) <= set(v.type):
        return False
    return any(B.contains(C, v) for C in B.vertex_chambers(u))


def brute_level_classes(B, vertices: Iterable) -> dict:
    """Closure of level adjacency restricted to ``vertices``."""
    vertices = list(vertices)
    by_type: dict = {}
    for v in vertices:
        by_type.setdefault(v.type, []).append(v)
    label = {}
    n = 0
    for group in by_type.values():
        for v in group:
            if v in label:
                continue
            label[v] = n
            queue = deque([v])
            while queue:
                x = queue.popleft()
                for y in group:
                    if y not in label and B.level_adjacent(x, y):
                        label[y] = n
                        queue.append(y)
            n += 1
    return label


# -- graphs -----------------------------------------------------------------------

def graph_automorphisms(n: int, edges: Iterable[tuple[int, int]],
                        colors: list | None = None) -> list[tuple[int, ...]]:
    """All color-preserving automorphisms by permutation search."""
    E = {frozenset(e) for e in edges}
    colors = colors or [0] * n
    out = []
    for p in itertools.permutations(range(n)):
        if any(colors[p[k]] != colors[k] for k in range(n)):
            continue
        if all(frozenset((p[a], p[b])) in E for a, b in (tuple(e) for e in E)):
            out.append(p)
    return out


def simple_circuits(adj: dict) -> list[tuple]:
    """Every simple circuit once, as a vertex tuple starting at its smallest vertex."""
    out = []
    nodes = sorted(adj)

    def dfs(path, seen):
        x = path[-1]
        for y in sorted(adj[x]):
            if y == path[0] and len(path) >= 3 and path[1] < path[-1]:
                out.append(tuple(path))
            elif y not in seen and y > path[0]:
                seen.add(y)
                path.append(y)
                dfs(path, seen)
                path.pop()
                seen.discard(y)

    for s in nodes:
        dfs([s], {s})
    return out


def _circuit_edges(c: tuple) -> set:
    return {frozenset((c[k], c[(k + 1) % len(c)])) for k in range(len(c))}


def _isomorphism_fixing(c1: tuple, c2: tuple) -> bool:
    """Is there a circuit isomorphism c1 -> c2 fixing every shared vertex?"""
    n = len(c1)
    shared = set(c1) & set(c2)
    for shift in range(n):
        for sign in (1, -1):
            f = {c1[k]: c2[(shift + sign * k) % n] for k in range(n)}
            if all(f[x] == x for x in shared):
                return True
    return False


def circuit_polygon_m(adj: dict) -> int | None:
    """Gonality by the circuit characterization of generalized polygons, else None.

    Connected, bipartite, every two edges lie on a common 2m-circuit, and
    any two meeting 2m-circuits are isomorphic fixing their intersection.
    """
    nodes = sorted(adj)
    if not nodes:
        return None
    seen, queue, color = {nodes[0]}, deque([nodes[0]]), {nodes[0]: 0}
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in color:
                color[y] = 1 - color[x]
                seen.add(y)
                queue.append(y)
            elif color[y] == color[x]:
                return None
    if len(seen) != len(nodes):
        return None
    edges = {frozenset((x, y)) for x in nodes for y in adj[x]}
    circuits = simple_circuits(adj)
    for m in range(2, len(nodes) // 2 + 1):
        cs = [c for c in circuits if len(c) == 2 * m]
        if not cs:
            continue
        ce = [_circuit_edges(c) for c in cs]
        if not all(any(e in E and f in E for E in ce) for e, f in itertools.combinations(edges, 2)):
            continue
        if all(_isomorphism_fixing(a, b) for a, b in itertools.combinations(cs, 2) if set(a) & set(b)):
            return m
    return None
