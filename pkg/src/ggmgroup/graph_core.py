"""Combinatorial structure of an undirected graph.

Vertices are ``0..m-1`` throughout the Python API. The text format and
every JSON report use ``1..m``; conversion happens in :mod:`ggmgroup.io`.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..m-1``.

    Edges are normalised to sorted pairs ``(i, j)`` with ``i < j``.
    """

    m: int
    edges: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self):
        if not isinstance(self.m, (int, np.integer)) or self.m < 1:
            raise ValueError(f"vertex count must be a positive integer, got {self.m!r}")
        normalised = set()
        for e in self.edges:
            i, j = (int(v) for v in e)
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if not (0 <= i < self.m and 0 <= j < self.m):
                raise ValueError(f"edge {e} has an endpoint outside 0..{self.m - 1}")
            normalised.add((min(i, j), max(i, j)))
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "edges", frozenset(normalised))

    @classmethod
    def from_edges(cls, m: int, edges: Iterable[Sequence[int]], one_based: bool = False) -> "Graph":
        """Build a graph, rejecting duplicate edges (unlike the constructor)."""
        seen = set()
        shift = 1 if one_based else 0
        for e in edges:
            i, j = e[0] - shift, e[1] - shift
            key = (min(i, j), max(i, j))
            if key in seen:
                raise ValueError(f"duplicate edge {tuple(e)}")
            seen.add(key)
        return cls(m, frozenset(seen))

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.m)]
        for i, j in self.edges:
            nbrs[i].add(j)
            nbrs[j].add(i)
        return tuple(frozenset(s) for s in nbrs)

    def neighbors(self, i: int) -> frozenset[int]:
        return self.adjacency[i]

    def closed_neighborhood(self, i: int) -> frozenset[int]:
        return self.adjacency[i] | {i}

    def has_edge(self, i: int, j: int) -> bool:
        return j in self.adjacency[i]

    def degree(self, i: int) -> int:
        return len(self.adjacency[i])

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.m, self.m), dtype=bool)
        for i, j in self.edges:
            a[i, j] = a[j, i] = True
        return a

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Image of the graph under ``i -> perm[i]``."""
        return Graph(self.m, frozenset((perm[i], perm[j]) for i, j in self.edges))

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph, relabelled ``0..k-1``, with the original labels."""
        verts = sorted(vertices)
        index = {v: k for k, v in enumerate(verts)}
        sub = frozenset(
            (index[i], index[j]) for i, j in self.edges if i in index and j in index
        )
        return Graph(len(verts), sub), verts

    def connected_components(self) -> list[list[int]]:
        seen = [False] * self.m
        comps = []
        for s in range(self.m):
            if seen[s]:
                continue
            stack, comp = [s], []
            seen[s] = True
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self.adjacency[v]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.connected_components()) == 1

    @classmethod
    def complete(cls, m: int) -> "Graph":
        return cls(m, frozenset(itertools.combinations(range(m), 2)))

    @classmethod
    def empty(cls, m: int) -> "Graph":
        return cls(m)

    @classmethod
    def path(cls, m: int) -> "Graph":
        return cls(m, frozenset((i, i + 1) for i in range(m - 1)))

    @classmethod
    def cycle(cls, m: int) -> "Graph":
        return cls(m, frozenset((i, (i + 1) % m) for i in range(m)))

    @classmethod
    def star(cls, leaves: int) -> "Graph":
        """Vertex 0 joined to ``leaves`` pendant vertices."""
        return cls(leaves + 1, frozenset((0, k) for k in range(1, leaves + 1)))


def all_graphs(m: int) -> Iterable[Graph]:
    """Every labelled graph on ``m`` vertices (``2**C(m,2)`` of them)."""
    pairs = list(itertools.combinations(range(m), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(m, frozenset(p for k, p in enumerate(pairs) if mask >> k & 1))


@dataclass(frozen=True)
class Preorder:
    """The relation ``i ≼ j`` iff ``N[j] ⊆ N[i]`` (closed neighbourhoods).

    ``rel[i, j]`` is true iff ``i ≼ j``. Classes are sorted by smallest member.
    """

    rel: np.ndarray
    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]
    down_sets: tuple[tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return self.rel.shape[0]

    def leq(self, i: int, j: int) -> bool:
        return bool(self.rel[i, j])

    def equivalent(self, i: int, j: int) -> bool:
        return bool(self.rel[i, j] and self.rel[j, i])

    def comparable(self, i: int, j: int) -> bool:
        return bool(self.rel[i, j] or self.rel[j, i])

    def class_down_set(self, c: int) -> tuple[int, ...]:
        return self.down_sets[self.classes[c][0]]

    def max_down_set_size(self) -> int:
        return max(len(d) for d in self.down_sets)


def compute_preorder(g: Graph) -> Preorder:
    m = g.m
    closed = [g.closed_neighborhood(i) for i in range(m)]
    rel = np.zeros((m, m), dtype=bool)
    for i in range(m):
        for j in range(m):
            rel[i, j] = closed[j] <= closed[i]
    rel.setflags(write=False)

    class_of = [-1] * m
    classes: list[tuple[int, ...]] = []
    for i in range(m):
        if class_of[i] >= 0:
            continue
        members = tuple(j for j in range(m) if rel[i, j] and rel[j, i])
        for j in members:
            class_of[j] = len(classes)
        classes.append(members)

    down_sets = tuple(tuple(int(j) for j in np.flatnonzero(rel[:, i])) for i in range(m))
    return Preorder(rel, tuple(classes), tuple(class_of), down_sets)


def down_set(p: Preorder, i: int) -> tuple[int, ...]:
    return p.down_sets[i]


def maximal_cliques(g: Graph) -> list[tuple[int, ...]]:
    """Bron–Kerbosch with pivoting. Practical up to a few dozen vertices."""
    adj = g.adjacency
    found: list[tuple[int, ...]] = []

    def expand(r: set[int], p: set[int], x: set[int]):
        if not p and not x:
            found.append(tuple(sorted(r)))
            return
        pivot = max(p | x, key=lambda u: (len(adj[u] & p), -u))
        for v in sorted(p - adj[pivot]):
            expand(r | {v}, p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    expand(set(), set(range(g.m)), set())
    return sorted(found)


@dataclass(frozen=True)
class Poset:
    """Partial order on preorder classes; ``leq[a, b]`` iff class a ≼ class b."""

    leq: np.ndarray
    hasse: tuple[tuple[int, int], ...]

    @property
    def size(self) -> int:
        return self.leq.shape[0]

    def lt(self, a: int, b: int) -> bool:
        return a != b and bool(self.leq[a, b])

    def comparable(self, a: int, b: int) -> bool:
        return bool(self.leq[a, b] or self.leq[b, a])

    def minimal_elements(self) -> list[int]:
        return [a for a in range(self.size) if not any(self.lt(b, a) for b in range(self.size))]

    def depth(self) -> list[int]:
        """Length of the longest chain ending at each element."""
        k = self.size
        order = sorted(range(k), key=lambda a: int(self.leq[:, a].sum()))
        d = [0] * k
        for a in order:
            below = [b for b in range(k) if self.lt(b, a)]
            d[a] = 1 + max((d[b] for b in below), default=-1)
        return d

    def linear_extension(self) -> list[int]:
        """Classes ordered by (depth, index); index order is smallest-member order."""
        d = self.depth()
        return sorted(range(self.size), key=lambda a: (d[a], a))

    def transitive_closure_of_hasse(self) -> np.ndarray:
        k = self.size
        c = np.eye(k, dtype=bool)
        for a, b in self.hasse:
            c[a, b] = True
        for mid in range(k):
            c |= np.outer(c[:, mid], c[mid, :])
        return c


def poset_PC(p: Preorder) -> Poset:
    k = len(p.classes)
    reps = [c[0] for c in p.classes]
    leq = np.array([[p.rel[reps[a], reps[b]] for b in range(k)] for a in range(k)], dtype=bool)
    leq = leq.reshape(k, k)
    leq.setflags(write=False)
    hasse = []
    for a in range(k):
        for b in range(k):
            if a == b or not leq[a, b]:
                continue
            if not any(c not in (a, b) and leq[a, c] and leq[c, b] for c in range(k)):
                hasse.append((a, b))
    return Poset(leq, tuple(hasse))


@dataclass(frozen=True)
class ColoredQuotient:
    """Graph on preorder classes, vertex-coloured by class size."""

    classes: tuple[tuple[int, ...], ...]
    sizes: tuple[int, ...]
    edges: frozenset[Edge]

    def as_graph(self) -> Graph:
        return Graph(len(self.classes), self.edges)


def quotient_colored(g: Graph, p: Preorder) -> ColoredQuotient:
    qedges = set()
    for i, j in g.edges:
        a, b = p.class_of[i], p.class_of[j]
        if a != b:
            qedges.add((min(a, b), max(a, b)))
    return ColoredQuotient(p.classes, tuple(len(c) for c in p.classes), frozenset(qedges))


class EdgeColor(str, enum.Enum):
    RED = "red"
    GREEN = "green"
    BLUE = "blue"


def color_edges(g: Graph, p: Preorder | None = None) -> dict[Edge, EdgeColor]:
    p = p or compute_preorder(g)
    colors = {}
    for i, j in g.sorted_edges():
        up, down = p.leq(i, j), p.leq(j, i)
        if up and down:
            colors[(i, j)] = EdgeColor.RED
        elif up or down:
            colors[(i, j)] = EdgeColor.GREEN
        else:
            colors[(i, j)] = EdgeColor.BLUE
    return colors


def mcs_order(g: Graph) -> list[int]:
    """Maximum cardinality search visit order, ties broken by smallest vertex."""
    weight = [0] * g.m
    visited = [False] * g.m
    order = []
    for _ in range(g.m):
        v = max((u for u in range(g.m) if not visited[u]), key=lambda u: (weight[u], -u))
        visited[v] = True
        order.append(v)
        for w in g.adjacency[v]:
            if not visited[w]:
                weight[w] += 1
    return order


def is_chordal(g: Graph) -> bool:
    # reverse MCS order is a perfect elimination order iff g is chordal
    order = mcs_order(g)
    pos = {v: k for k, v in enumerate(order)}
    for v in order:
        earlier = [u for u in g.adjacency[v] if pos[u] < pos[v]]
        for a, b in itertools.combinations(earlier, 2):
            if not g.has_edge(a, b):
                return False
    return True


def find_induced_4chain(g: Graph) -> tuple[int, int, int, int] | None:
    """An induced path ``a-b-c-d`` if one exists."""
    adj = g.adjacency
    for b, c in g.sorted_edges():
        for mid1, mid2 in ((b, c), (c, b)):
            for a in sorted(adj[mid1] - adj[mid2] - {mid2}):
                for d in sorted(adj[mid2] - adj[mid1] - {mid1}):
                    if a != d and d not in adj[a]:
                        return (a, mid1, mid2, d)
    return None


def has_induced_4chain(g: Graph) -> bool:
    return find_induced_4chain(g) is not None
