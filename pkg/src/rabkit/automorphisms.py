"""Rank-preserving automorphisms of the building, given chamber by chamber.

An automorphism is known by what it does to each chamber: the image
chamber plus a permutation ``sigma`` of the vertex ids, meaning the vertex
of standard type J in ``C`` goes to the vertex of standard type sigma(J)
in the image.  Translations have identity ``sigma``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from .building import BVertex, Building, Chamber
from .errors import InputError
from .graph_product import DefiningGraph, Element

Perm = tuple[int, ...]


# -- permutations of vertex ids ---------------------------------------------------

def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    """``p`` after ``q``."""
    return tuple(p[m] for m in q)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for a, b in enumerate(p):
        out[b] = a
    return tuple(out)


def apply_perm(p: Perm, J: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(p[m] for m in J))


def is_graph_automorphism(g: DefiningGraph, p: Sequence[int], check_orders: bool = True) -> bool:
    n = g.n
    if sorted(p) != list(range(n)):
        return False
    for a in range(n):
        for b in range(a + 1, n):
            if g.adjacent(a, b) != g.adjacent(p[a], p[b]):
                return False
    if check_orders and any(g.orders[p[m]] != g.orders[m] for m in range(n)):
        return False
    return True


def _nx_graph(g: DefiningGraph) -> nx.Graph:
    G = nx.Graph()
    for m in range(g.n):
        G.add_node(m, order=g.orders[m])
    G.add_edges_from(g.edges)
    return G


@lru_cache(maxsize=None)
def _automorphisms_cached(g: DefiningGraph, with_orders: bool) -> tuple[Perm, ...]:
    G = _nx_graph(g)
    match = (lambda a, b: a["order"] == b["order"]) if with_orders else None
    out = []
    for iso in GraphMatcher(G, G, node_match=match).isomorphisms_iter():
        out.append(tuple(iso[m] for m in range(g.n)))
    return tuple(sorted(out))


def graph_automorphisms(g: DefiningGraph, with_orders: bool = True) -> list[Perm]:
    """Automorphisms of the defining graph, optionally preserving group orders."""
    return list(_automorphisms_cached(g, with_orders))


# -- automorphisms of the building ------------------------------------------------

class Automorphism:
    """Base class; subclasses implement ``apply`` and ``inverse``."""

    B: Building

    def apply(self, C: Chamber) -> tuple[Chamber, Perm]:
        raise NotImplementedError

    def inverse(self) -> "Automorphism":
        raise NotImplementedError

    def __call__(self, C: Chamber) -> Chamber:
        return self.apply(C)[0]

    def sigma(self, C: Chamber) -> Perm:
        return self.apply(C)[1]

    def vertex(self, v: BVertex) -> BVertex:
        C = Chamber(v.rep)
        D, s = self.apply(C)
        return self.B.vertex(D.label, apply_perm(s, v.type))

    def then(self, other: "Automorphism") -> "Automorphism":
        """``other`` after ``self``."""
        return Composition(other, self)

    def __mul__(self, other: "Automorphism") -> "Automorphism":
        return Composition(self, other)


class Translation(Automorphism):
    def __init__(self, B: Building, gamma: Element):
        self.B = B
        self.gamma = B.g.normal_form(gamma)
        self._id = identity_perm(B.g.n)

    def apply(self, C):
        return Chamber(self.B.g.multiply(self.gamma, C.label)), self._id

    def inverse(self):
        return Translation(self.B, self.B.g.invert(self.gamma))

    def __repr__(self):
        return f"Translation({self.gamma})"


class GraphTwist(Automorphism):
    """The automorphism induced by a graph automorphism plus vertex-group isomorphisms.

    ``thetas[i]`` maps element indices of ``G_i`` to those of ``G_{alpha(i)}``.
    The induced group automorphism sends the syllable (i, e) to
    (alpha(i), thetas[i][e]); the building map sends C_x to C_{alpha(x)}.
    """

    def __init__(self, B: Building, alpha: Sequence[int],
                 thetas: Sequence[Sequence[int]] | None = None):
        g = B.g
        self.B = B
        self.alpha = tuple(alpha)
        if not is_graph_automorphism(g, self.alpha):
            raise InputError(f"{self.alpha} is not an order-preserving graph automorphism")
        if thetas is None:
            thetas = [tuple(range(g.orders[m])) for m in range(g.n)]
        self.thetas = tuple(tuple(t) for t in thetas)
        for m, th in enumerate(self.thetas):
            src, dst = g.groups[m], g.groups[self.alpha[m]]
            if sorted(th) != list(range(src.order)) or th[0] != 0:
                raise InputError(f"theta for vertex {m} is not a bijection fixing the identity")
            for a in range(src.order):
                for b in range(src.order):
                    if th[src.mul(a, b)] != dst.mul(th[a], th[b]):
                        raise InputError(f"theta for vertex {m} is not a homomorphism")

    def map_element(self, x: Element) -> Element:
        a, th = self.alpha, self.thetas
        return self.B.g.normal_form([(a[v], th[v][e]) for v, e in x])

    def apply(self, C):
        return Chamber(self.map_element(C.label)), self.alpha

    def inverse(self):
        ainv = inverse(self.alpha)
        g = self.B.g
        thetas = []
        for m in range(g.n):
            src = ainv[m]
            th = self.thetas[src]
            inv = [0] * g.orders[m]
            for e, f in enumerate(th):
                inv[f] = e
            thetas.append(tuple(inv))
        return GraphTwist(self.B, ainv, thetas)

    def __repr__(self):
        return f"GraphTwist(alpha={self.alpha}, thetas={self.thetas})"


class Composition(Automorphism):
    """``outer`` after ``inner``."""

    def __init__(self, outer: Automorphism, inner: Automorphism):
        self.B = outer.B
        self.outer = outer
        self.inner = inner

    def apply(self, C):
        D, s1 = self.inner.apply(C)
        E, s2 = self.outer.apply(D)
        return E, compose(s2, s1)

    def inverse(self):
        return Composition(self.inner.inverse(), self.outer.inverse())

    def __repr__(self):
        return f"({self.outer!r} o {self.inner!r})"


def inversion_twist(B: Building, vertices: Iterable[int] | None = None) -> GraphTwist:
    """Invert every element of the chosen (abelian) vertex groups; defaults to order-3 groups."""
    g = B.g
    chosen = set(vertices) if vertices is not None else {m for m in range(g.n) if g.orders[m] == 3}
    thetas = []
    for m in range(g.n):
        G = g.groups[m]
        if m in chosen:
            if not G.is_abelian():
                raise InputError(f"inversion on vertex {m} needs an abelian group")
            thetas.append(tuple(G.inv(e) for e in range(G.order)))
        else:
            thetas.append(tuple(range(G.order)))
    return GraphTwist(B, identity_perm(g.n), thetas)


def agree_on(f: Automorphism, h: Automorphism, chambers: Iterable[Chamber]) -> Chamber | None:
    """First chamber where the two maps differ (image or sigma), else None."""
    for C in chambers:
        if f.apply(C) != h.apply(C):
            return C
    return None
