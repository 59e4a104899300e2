"""Dimension of the orbit space S⁺_G / G and the transitivity test."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

import numpy as np

from . import graph_core as gc
from .graph_core import EdgeColor, Graph
from .group import g0_dimension, lie_algebra_basis, non_edge_mask

SVD_RTOL = 1e-8


def _choose2(n: int) -> int:
    return comb(n, 2) if n >= 2 else 0


@dataclass(frozen=True)
class DeletionResult:
    dimension: int
    blue: int
    red: int
    surviving_red: int
    remaining_graph: frozenset  # red edges of G'


def blue_edge_deletion(
    g: Graph, order: Sequence[tuple[int, int]] | None = None, rule: str = "max-red"
) -> DeletionResult:
    """Run the blue-edge deletion procedure.

    Green edges are dropped; then blue edges are removed one at a time, each
    together with both endpoints and every blue or red edge touching them.

    ``rule="in-order"`` takes the blue edges strictly in ``order``. That
    result depends on the order: a vertex can be spent on a singleton class
    before it gets to break up a larger one. ``rule="max-red"`` (default)
    deletes at each step a blue edge that removes the most red edges, using
    ``order`` (default ascending) only to break ties; its outcome does not
    depend on the order.
    """
    if rule not in ("max-red", "in-order"):
        raise ValueError(f"unknown deletion rule {rule!r}")
    p = gc.compute_preorder(g)
    colors = gc.color_edges(g, p)
    blue = [e for e, c in colors.items() if c is EdgeColor.BLUE]
    red = {e for e, c in colors.items() if c is EdgeColor.RED}
    if order is None:
        order = sorted(blue)
    elif sorted(order) != sorted(blue):
        raise ValueError("deletion order must be a permutation of the blue edges")

    alive = set(range(g.m))

    def red_lost(e):
        return sum(1 for a, b in red if a in alive and b in alive and (a in e or b in e))

    while True:
        live = [e for e in order if e[0] in alive and e[1] in alive]
        if not live:
            break
        e = live[0] if rule == "in-order" else max(live, key=red_lost)  # max keeps the first tie
        alive -= set(e)
    surviving = frozenset(e for e in red if e[0] in alive and e[1] in alive)
    return DeletionResult(len(blue) - len(red) + len(surviving), len(blue), len(red), len(surviving), surviving)


def orbit_dim_combinatorial(g: Graph, order: Sequence[tuple[int, int]] | None = None) -> tuple[int, int]:
    """(orbit-space dimension, number of red edges surviving in G')."""
    r = blue_edge_deletion(g, order)
    return r.dimension, r.surviving_red


def n_bar(g: Graph, p: gc.Preorder | None = None) -> list[int]:
    """Per class: max(0, |class| - total size of incomparable quotient neighbours)."""
    p = p or gc.compute_preorder(g)
    poset = gc.poset_PC(p)
    q = gc.quotient_colored(g, p)
    out = []
    for a, size in enumerate(q.sizes):
        loss = 0
        for x, y in q.edges:
            if a in (x, y):
                b = y if x == a else x
                if not poset.comparable(a, b):
                    loss += q.sizes[b]
        out.append(max(0, size - loss))
    return out


def stabilizer_dim_formula(g: Graph) -> int:
    return sum(_choose2(n) for n in n_bar(g))


def orbit_dim_formula(g: Graph) -> int:
    p = gc.compute_preorder(g)
    return (g.m + len(g.edges)) - g0_dimension(p) + sum(_choose2(n) for n in n_bar(g, p))


def check_concentration(g: Graph, k: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Validate ``k`` as an element of S⁺_G and return it as a float array."""
    k = np.asarray(k, dtype=float)
    if k.shape != (g.m, g.m):
        raise ValueError(f"expected a {g.m}x{g.m} matrix, got shape {k.shape}")
    scale = 1.0 + np.abs(k).max()
    if np.abs(k - k.T).max() > tol * scale:
        raise ValueError("concentration matrix is not symmetric")
    if np.abs(k[non_edge_mask(g)]).max(initial=0.0) > tol * scale:
        raise ValueError("concentration matrix has nonzero entries at non-edges")
    try:
        np.linalg.cholesky((k + k.T) / 2)
    except np.linalg.LinAlgError:
        raise ValueError("concentration matrix is not positive definite") from None
    return k


def random_concentration(g: Graph, rng: np.random.Generator) -> np.ndarray:
    """Generic element of S⁺_G: N(0,1) edge entries on a strictly dominant diagonal."""
    k = np.zeros((g.m, g.m))
    for i, j in g.sorted_edges():
        k[i, j] = k[j, i] = rng.standard_normal()
    off = np.abs(k).sum(axis=1)
    k[np.diag_indices(g.m)] = off + np.abs(rng.standard_normal(g.m)) + 1.0
    return k


def stabilizer_map_matrix(g: Graph, k: np.ndarray) -> np.ndarray:
    """Matrix of A ↦ AᵀK + KA on pattern-compliant A, rows = upper triangle."""
    p = gc.compute_preorder(g)
    basis = lie_algebra_basis(p)
    iu = np.triu_indices(g.m)
    cols = []
    for i, j in basis:
        # A = E_ij: AᵀK + KA = E_ji K + K E_ij
        img = np.zeros((g.m, g.m))
        img[j, :] += k[i, :]
        img[:, j] += k[:, i]
        cols.append(img[iu])
    return np.array(cols).T


def stabilizer_dim_numeric(g: Graph, k: np.ndarray, tol: float = SVD_RTOL) -> int:
    """Nullity of the linearised stabilizer equation at ``k``."""
    k = check_concentration(g, k)
    mat = stabilizer_map_matrix(g, k)
    s = np.linalg.svd(mat, compute_uv=False)
    rank = int((s >= tol * s[0]).sum()) if s.size and s[0] > 0 else 0
    return mat.shape[1] - rank


def orbit_dim_numeric(g: Graph, k: np.ndarray, tol: float = SVD_RTOL) -> int:
    p = gc.compute_preorder(g)
    return (g.m + len(g.edges)) - g0_dimension(p) + stabilizer_dim_numeric(g, k, tol)


@dataclass(frozen=True)
class TransitivityReport:
    comparable_edges: bool
    chordal_without_4chain: bool
    hasse_forest_of_rooted_trees: bool

    @property
    def transitive(self) -> bool:
        return self.comparable_edges


class InconsistentTransitivityError(RuntimeError):
    pass


def _hasse_condition(g: Graph, p: gc.Preorder, poset: gc.Poset) -> bool:
    # evaluated per connected component of g: each component's Hasse diagram
    # must be a tree with a unique minimum
    for comp in g.connected_components():
        cls = sorted({p.class_of[v] for v in comp})
        edges = [(a, b) for a, b in poset.hasse if a in cls]
        if len(edges) != len(cls) - 1:
            return False
        reach = {cls[0]}
        grew = True
        while grew:
            grew = False
            for a, b in edges:
                if (a in reach) != (b in reach):
                    reach |= {a, b}
                    grew = True
        if len(reach) != len(cls):
            return False
        minima = [a for a in cls if not any(poset.lt(b, a) for b in cls)]
        if len(minima) != 1:
            return False
    # the tree must also generate the graph: vertices are adjacent exactly
    # when their classes are comparable
    closure = poset.transitive_closure_of_hasse()
    for i in range(g.m):
        for j in range(i + 1, g.m):
            a, b = p.class_of[i], p.class_of[j]
            if g.has_edge(i, j) != bool(closure[a, b] or closure[b, a]):
                return False
    return True


def transitivity_conditions(g: Graph) -> TransitivityReport:
    p = gc.compute_preorder(g)
    poset = gc.poset_PC(p)
    return TransitivityReport(
        comparable_edges=all(p.comparable(i, j) for i, j in g.edges),
        chordal_without_4chain=gc.is_chordal(g) and not gc.has_induced_4chain(g),
        hasse_forest_of_rooted_trees=_hasse_condition(g, p, poset),
    )


def is_transitive(g: Graph) -> bool:
    """Whether G acts transitively on S⁺_G; all three criteria must agree."""
    r = transitivity_conditions(g)
    values = {r.comparable_edges, r.chordal_without_4chain, r.hasse_forest_of_rooted_trees}
    if len(values) != 1:
        raise InconsistentTransitivityError(f"transitivity criteria disagree: {r}")
    return r.transitive


@dataclass(frozen=True)
class OrbitReport:
    dim_combinatorial: int
    dim_formula: int
    dim_numeric: int | None
    n_bar: tuple[int, ...]
    blue_count: int
    green_count: int
    red_count: int
    surviving_red: int
    transitive: bool

    def to_dict(self) -> dict:
        out = {
            "dim_combinatorial": self.dim_combinatorial,
            "dim_formula": self.dim_formula,
            "n_bar": list(self.n_bar),
            "blue_count": self.blue_count,
            "green_count": self.green_count,
            "red_count": self.red_count,
            "surviving_red": self.surviving_red,
            "transitive": self.transitive,
        }
        if self.dim_numeric is not None:
            out["dim_numeric"] = self.dim_numeric
        return out


def orbit_report(g: Graph, rng: np.random.Generator | None = None, tol: float = SVD_RTOL) -> OrbitReport:
    """Assemble the report; the numeric column is filled only when ``rng`` is given."""
    p = gc.compute_preorder(g)
    colors = list(gc.color_edges(g, p).values())
    deletion = blue_edge_deletion(g)
    numeric = None
    if rng is not None:
        numeric = orbit_dim_numeric(g, random_concentration(g, rng), tol)
    return OrbitReport(
        dim_combinatorial=deletion.dimension,
        dim_formula=orbit_dim_formula(g),
        dim_numeric=numeric,
        n_bar=tuple(n_bar(g, p)),
        blue_count=colors.count(EdgeColor.BLUE),
        green_count=colors.count(EdgeColor.GREEN),
        red_count=colors.count(EdgeColor.RED),
        surviving_red=deletion.surviving_red,
        transitive=is_transitive(g),
    )


def blow_up(g: Graph, sizes: Sequence[int]) -> Graph:
    """Replace vertex v by a clique of ``sizes[v]`` true twins."""
    start = np.concatenate([[0], np.cumsum(sizes)]).astype(int)
    edges = set()
    for v, c in enumerate(sizes):
        block = range(start[v], start[v] + c)
        edges |= {(a, b) for a in block for b in block if a < b}
    for u, v in g.edges:
        edges |= {(a, b) for a in range(start[u], start[u] + sizes[u]) for b in range(start[v], start[v] + sizes[v])}
    return Graph(int(start[-1]), frozenset(edges))
