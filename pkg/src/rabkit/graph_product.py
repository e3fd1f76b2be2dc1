"""Exact arithmetic in a graph product of finite groups.

Elements are tuples of syllables ``(vertex, elt)`` with ``elt != 0``, kept in
a canonical reduced form.  Group elements of each vertex group are small
integers with the identity at 0.

>>> g = running_example()
>>> normal_form([(0, 1), (0, 1)], g)
()
>>> multiply(((2, 1),), ((2, 1),), g)
((2, 2),)
"""

from __future__ import annotations

import itertools
import json
from pathlib import Path
from typing import Iterable, Sequence

from .errors import InputError

Syllable = tuple[int, int]
Element = tuple[Syllable, ...]
SphericalSet = tuple[int, ...]

IDENTITY: Element = ()


class FiniteGroup:
    """A finite group on ``range(order)`` with identity 0.

    Either cyclic (``table is None``) or given by a multiplication table.
    """

    __slots__ = ("order", "table", "_inv")

    def __init__(self, order: int, table: Sequence[Sequence[int]] | None = None):
        if table is None:
            if not isinstance(order, int) or order < 2:
                raise InputError(f"group order must be an integer >= 2, got {order!r}")
            self.order = order
            self.table = None
            self._inv = tuple((-a) % order for a in range(order))
            return
        rows = tuple(tuple(int(x) for x in row) for row in table)
        n = len(rows)
        if n < 2 or any(len(r) != n for r in rows):
            raise InputError("group table must be square with at least 2 rows")
        if any(not 0 <= x < n for r in rows for x in r):
            raise InputError("group table entry out of range")
        if any(rows[0][a] != a or rows[a][0] != a for a in range(n)):
            raise InputError("index 0 is not the identity of the group table")
        for a, b, c in itertools.product(range(n), repeat=3):
            if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
                raise InputError(f"group table is not associative at {(a, b, c)}")
        inv = []
        for a in range(n):
            left = [b for b in range(n) if rows[a][b] == 0]
            if not left or rows[left[0]][a] != 0:
                raise InputError(f"element {a} has no inverse")
            inv.append(left[0])
        self.order = n
        self.table = rows
        self._inv = tuple(inv)

    def mul(self, a: int, b: int) -> int:
        if self.table is None:
            return (a + b) % self.order
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def is_abelian(self) -> bool:
        if self.table is None:
            return True
        return all(self.mul(a, b) == self.mul(b, a)
                   for a in range(self.order) for b in range(self.order))

    def to_json(self) -> dict:
        if self.table is None:
            return {"order": self.order}
        return {"table": [list(r) for r in self.table]}

    def __eq__(self, other):
        return (isinstance(other, FiniteGroup) and self.order == other.order
                and self.table == other.table)

    def __hash__(self):
        return hash((self.order, self.table))

    def __repr__(self):
        kind = "cyclic" if self.table is None else "table"
        return f"FiniteGroup({kind}, order={self.order})"


class DefiningGraph:
    """A finite simple graph with a finite group on each vertex.

    Treated as immutable.  Word operations cache per instance, so reuse one
    instance for a whole computation.
    """

    def __init__(self, names: Sequence[str], edges: Iterable[tuple[int, int]],
                 groups: Sequence[FiniteGroup]):
        n = len(names)
        if n < 1:
            raise InputError("defining graph needs at least one vertex")
        if len(groups) != n:
            raise InputError("one group per vertex is required")
        if len(set(names)) != n:
            raise InputError("vertex names must be distinct")
        adj: list[set[int]] = [set() for _ in range(n)]
        for a, b in edges:
            if not (0 <= a < n and 0 <= b < n):
                raise InputError(f"edge {(a, b)} references an unknown vertex")
            if a == b:
                raise InputError(f"loop at vertex {a}")
            adj[a].add(b)
            adj[b].add(a)
        self.names = tuple(names)
        self.n = n
        self.vertices = tuple(range(n))
        self.adj = tuple(frozenset(s) for s in adj)
        self.groups = tuple(groups)
        self.orders = tuple(G.order for G in groups)
        self._closed = tuple(self.adj[v] | {v} for v in range(n))
        self._spherical: list[SphericalSet] | None = None
        self._nf_cache: dict = {}
        self._coset_cache: dict = {}

    # -- graph data -----------------------------------------------------
    @property
    def edges(self) -> list[tuple[int, int]]:
        return sorted((a, b) for a in range(self.n) for b in self.adj[a] if a < b)

    def adjacent(self, a: int, b: int) -> bool:
        return b in self.adj[a]

    def is_spherical(self, J: Iterable[int]) -> bool:
        J = list(J)
        return all(b in self.adj[a] for a, b in itertools.combinations(J, 2))

    def spherical_sets(self) -> list[SphericalSet]:
        """All cliques including the empty one, by size then lexicographically."""
        if self._spherical is None:
            out: list[SphericalSet] = [()]
            frontier: list[SphericalSet] = [()]
            while frontier:
                nxt = []
                for J in frontier:
                    start = J[-1] + 1 if J else 0
                    for v in range(start, self.n):
                        if all(v in self.adj[u] for u in J):
                            nxt.append(J + (v,))
                out.extend(nxt)
                frontier = nxt
            self._spherical = out
        return list(self._spherical)

    def perp_closed(self, J: Iterable[int]) -> SphericalSet:
        J = self._check_subset(J)
        if not self.is_spherical(J):
            raise InputError(f"{J} is not spherical")
        out = set(range(self.n))
        for j in J:
            out &= self._closed[j]
        return tuple(sorted(out))

    def perp(self, J: Iterable[int]) -> SphericalSet:
        J = self._check_subset(J)
        return tuple(v for v in self.perp_closed(J) if v not in J)

    def _check_subset(self, J: Iterable[int]) -> tuple[int, ...]:
        J = tuple(sorted(set(J)))
        if any(not 0 <= v < self.n for v in J):
            raise InputError(f"subset {J} references an unknown vertex")
        return J

    # -- words ----------------------------------------------------------
    def validate_word(self, word: Iterable[Sequence[int]]) -> list[Syllable]:
        out = []
        for s in word:
            try:
                v, e = int(s[0]), int(s[1])
            except (TypeError, ValueError, IndexError):
                raise InputError(f"malformed syllable {s!r}") from None
            if len(s) != 2 or not 0 <= v < self.n:
                raise InputError(f"syllable {s!r} references an unknown vertex")
            if not 0 <= e < self.orders[v]:
                raise InputError(f"syllable {s!r} references an unknown element")
            if e:
                out.append((v, e))
        return out

    def _push(self, out: list[Syllable], v: int, e: int) -> None:
        # Merge (v, e) into the reduced word `out` by shuffling it leftwards.
        adj = self.adj[v]
        for p in range(len(out) - 1, -1, -1):
            w, f = out[p]
            if w == v:
                h = self.groups[v].mul(f, e)
                if h:
                    out[p] = (v, h)
                else:
                    del out[p]
                return
            if w not in adj:
                break
        out.append((v, e))

    def _canonical(self, word: Sequence[Syllable]) -> Element:
        # Leftmost-minimal ordering of a reduced word.
        rest = list(word)
        out = []
        while rest:
            seen: set[int] = set()
            best = -1
            for p, (v, _) in enumerate(rest):
                if seen <= self.adj[v] and (best < 0 or v < rest[best][0]):
                    best = p
                seen.add(v)
            out.append(rest.pop(best))
        return tuple(out)

    def reduce(self, word: Iterable[Syllable]) -> Element:
        out: list[Syllable] = []
        for v, e in word:
            if e:
                self._push(out, v, e)
        return self._canonical(out)

    def normal_form(self, word: Iterable[Sequence[int]]) -> Element:
        return self.reduce(self.validate_word(word))

    def multiply(self, a: Element, b: Element) -> Element:
        if not b:
            return a
        if not a:
            return b
        key = (a, b)
        hit = self._nf_cache.get(key)
        if hit is not None:
            return hit
        out = list(a)
        for v, e in b:
            self._push(out, v, e)
        res = self._canonical(out)
        if len(self._nf_cache) < 500_000:
            self._nf_cache[key] = res
        return res

    def invert(self, a: Element) -> Element:
        return self._canonical([(v, self.groups[v].inv(e)) for v, e in reversed(a)])

    def retract(self, a: Element, J: Iterable[int]) -> Element:
        J = frozenset(J)
        return self.reduce(s for s in a if s[0] in J)

    def coset_min_rep(self, a: Element, J: Iterable[int]) -> Element:
        J = frozenset(J)
        key = (a, J)
        hit = self._coset_cache.get(key)
        if hit is not None:
            return hit
        # Right-to-left: strip a J-syllable if every syllable kept to its
        # right commutes with it.  Stripped syllables never block, so one
        # pass reaches the fixed point.
        w = list(a)
        kept: set[int] = set()
        for p in range(len(w) - 1, -1, -1):
            v = w[p][0]
            if v in J and kept <= self.adj[v]:
                del w[p]
            else:
                kept.add(v)
        res = self._canonical(w) if len(w) != len(a) else a
        if len(self._coset_cache) < 500_000:
            self._coset_cache[key] = res
        return res

    def support(self, a: Element) -> frozenset[int]:
        return frozenset(v for v, _ in a)

    def in_subgroup(self, a: Element, J: Iterable[int]) -> bool:
        J = set(J)
        return all(v in J for v, _ in a)

    def enumerate_ball(self, radius: int) -> list[Element]:
        if radius < 0:
            raise InputError("radius must be non-negative")
        layer: list[Element] = [IDENTITY]
        out = list(layer)
        letters = [(v, e) for v in range(self.n) for e in range(1, self.orders[v])]
        for r in range(radius):
            nxt = set()
            for w in layer:
                for s in letters:
                    x = self.multiply(w, (s,))
                    if len(x) == r + 1:
                        nxt.add(x)
            layer = sorted(nxt)
            out.extend(layer)
        return out

    def letters(self) -> list[Syllable]:
        return [(v, e) for v in range(self.n) for e in range(1, self.orders[v])]

    def subgroup_elements(self, J: Iterable[int]) -> list[Element]:
        """All elements of the finite special subgroup on a spherical J."""
        J = self._check_subset(J)
        if not self.is_spherical(J):
            raise InputError(f"special subgroup on {J} is infinite")
        out = []
        for elts in itertools.product(*(range(self.orders[j]) for j in J)):
            out.append(tuple((j, e) for j, e in zip(J, elts) if e))
        return sorted(out, key=lambda w: (len(w), w))

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        verts = []
        for name, G in zip(self.names, self.groups):
            verts.append({"name": name, **G.to_json()})
        return {"vertices": verts,
                "edges": [[self.names[a], self.names[b]] for a, b in self.edges]}

    @classmethod
    def from_json(cls, data) -> "DefiningGraph":
        if not isinstance(data, dict) or "vertices" not in data:
            raise InputError("graph spec must be an object with a 'vertices' list")
        names, groups = [], []
        for v in data["vertices"]:
            if not isinstance(v, dict) or "name" not in v:
                raise InputError(f"bad vertex entry {v!r}")
            names.append(str(v["name"]))
            if "table" in v:
                groups.append(FiniteGroup(0, v["table"]))
            elif "order" in v:
                groups.append(FiniteGroup(v["order"]))
            else:
                raise InputError(f"vertex {v['name']!r} needs 'order' or 'table'")
        index = {name: k for k, name in enumerate(names)}
        edges = []
        for e in data.get("edges", []):
            if not isinstance(e, (list, tuple)) or len(e) != 2:
                raise InputError(f"bad edge entry {e!r}")
            try:
                edges.append((index[str(e[0])], index[str(e[1])]))
            except KeyError as exc:
                raise InputError(f"edge {e!r} names an unknown vertex") from exc
        seen = set()
        for a, b in edges:
            key = frozenset((a, b))
            if key in seen and a != b:
                raise InputError(f"duplicate edge {(names[a], names[b])}")
            seen.add(key)
        return cls(names, edges, groups)

    def __repr__(self):
        return f"DefiningGraph(names={self.names}, orders={self.orders}, edges={self.edges})"


def load_graph(path: str | Path) -> DefiningGraph:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read graph spec {path}: {exc}") from exc
    return DefiningGraph.from_json(data)


def element_to_json(a: Element) -> list[list[int]]:
    return [[v, e] for v, e in a]


def element_from_json(data, g: DefiningGraph) -> Element:
    if not isinstance(data, list):
        raise InputError(f"element must be a list of syllables, got {data!r}")
    return g.normal_form(data)


def make_graph(orders: Sequence[int], edges: Iterable[tuple[int, int]],
               names: Sequence[str] | None = None) -> DefiningGraph:
    names = list(names) if names is not None else [str(k) for k in range(len(orders))]
    return DefiningGraph(names, edges, [FiniteGroup(p) for p in orders])


# -- module-level operations ------------------------------------------------

def normal_form(word: Iterable[Sequence[int]], g: DefiningGraph) -> Element:
    return g.normal_form(word)


def multiply(a: Element, b: Element, g: DefiningGraph) -> Element:
    return g.multiply(a, b)


def invert(a: Element, g: DefiningGraph) -> Element:
    return g.invert(a)


def retract(a: Element, J: Iterable[int], g: DefiningGraph) -> Element:
    return g.retract(a, J)


def coset_min_rep(a: Element, J: Iterable[int], g: DefiningGraph) -> Element:
    return g.coset_min_rep(a, J)


def spherical_sets(g: DefiningGraph) -> list[SphericalSet]:
    return g.spherical_sets()


def enumerate_ball(g: DefiningGraph, radius: int) -> list[Element]:
    return g.enumerate_ball(radius)


# -- named graphs -------------------------------------------------------------

def running_example() -> DefiningGraph:
    """Vertices i, j, k, l with edges i-j, j-k and orders 2, 2, 3, 3."""
    return make_graph([2, 2, 3, 3], [(0, 1), (1, 2)], ["i", "j", "k", "l"])


def cycle_graph(n: int, order: int) -> DefiningGraph:
    return make_graph([order] * n, [(k, (k + 1) % n) for k in range(n)])


def heawood_graph(order: int = 2) -> DefiningGraph:
    """Incidence graph of the Fano plane: points 0..6, lines 7..13."""
    lines = [(0, 1, 3), (1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 0), (5, 6, 1), (6, 0, 2)]
    edges = [(p, 7 + k) for k, line in enumerate(lines) for p in line]
    names = [f"p{k}" for k in range(7)] + [f"L{k}" for k in range(7)]
    return make_graph([order] * 14, edges, names)


def complete_bipartite(a: int, b: int, order: int = 2) -> DefiningGraph:
    edges = [(x, a + y) for x in range(a) for y in range(b)]
    return make_graph([order] * (a + b), edges)


def claw_graph(center_order: int = 2, leaf_order: int = 3) -> DefiningGraph:
    """A star with three leaves; swapping two leaves fixes the star of the third."""
    return make_graph([leaf_order, center_order, leaf_order, leaf_order],
                      [(0, 1), (1, 2), (1, 3)], ["a", "b", "c", "d"])
