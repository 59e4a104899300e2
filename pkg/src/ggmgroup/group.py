"""The stabilizing group G = ℓ(Aut(G̃,c)) ⋉ G⁰ of a Gaussian graphical model.

Permutations are tuples ``perm`` with ``perm[i]`` the image of vertex ``i``.
The matrix of a permutation is the one with ``P e_i = e_{perm[i]}``, so
``perm_matrix(compose(a, b)) == perm_matrix(a) @ perm_matrix(b)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .graph_core import ColoredQuotient, Graph, Preorder, compute_preorder, quotient_colored

Perm = tuple[int, ...]

DEFAULT_TOL = 1e-9


class NotInGroupError(ValueError):
    """Raised when a matrix is not a member of G."""


class SingularMatrixError(ValueError):
    pass


def identity_perm(m: int) -> Perm:
    return tuple(range(m))


def compose(a: Perm, b: Perm) -> Perm:
    """``a ∘ b``: apply ``b`` first."""
    return tuple(a[b[i]] for i in range(len(b)))


def invert(a: Perm) -> Perm:
    inv = [0] * len(a)
    for i, ai in enumerate(a):
        inv[ai] = i
    return tuple(inv)


def perm_matrix(perm: Sequence[int]) -> np.ndarray:
    m = len(perm)
    p = np.zeros((m, m))
    p[list(perm), list(range(m))] = 1.0
    return p


def cycle_notation(perm: Perm, one_based: bool = True) -> str:
    shift = 1 if one_based else 0
    seen, cycles = set(), []
    for s in range(len(perm)):
        if s in seen or perm[s] == s:
            continue
        cyc, v = [], s
        while v not in seen:
            seen.add(v)
            cyc.append(v + shift)
            v = perm[v]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "()"


@dataclass(frozen=True)
class ZeroPattern:
    """``allowed[i, j]`` iff entry (i, j) of a G⁰ element may be nonzero (j ≼ i)."""

    allowed: np.ndarray

    @property
    def m(self) -> int:
        return self.allowed.shape[0]

    @property
    def dimension(self) -> int:
        return int(self.allowed.sum())

    def complies(self, a: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
        scale = 1.0 + np.abs(a).sum(axis=1).max()
        return bool(np.all(np.abs(a[~self.allowed]) <= tol * scale))


def g0_pattern(p: Preorder) -> ZeroPattern:
    allowed = p.rel.T.copy()
    allowed.setflags(write=False)
    return ZeroPattern(allowed)


def lie_algebra_basis(p: Preorder) -> list[tuple[int, int]]:
    """Index pairs (i, j) with j ≼ i; the E_ij span the Lie algebra of G⁰."""
    m = p.m
    return [(i, j) for i in range(m) for j in range(m) if p.rel[j, i]]


def g0_dimension(p: Preorder) -> int:
    return sum(len(c) * len(p.class_down_set(a)) for a, c in enumerate(p.classes))


@dataclass(frozen=True)
class PermGroup:
    """A finite permutation group stored as its full, sorted element list."""

    perms: tuple[Perm, ...]

    @property
    def degree(self) -> int:
        return len(self.perms[0])

    @property
    def order(self) -> int:
        return len(self.perms)

    def __iter__(self):
        return iter(self.perms)

    def __len__(self):
        return len(self.perms)

    def __contains__(self, perm) -> bool:
        return tuple(perm) in set(self.perms)

    def is_closed(self) -> bool:
        elems = set(self.perms)
        if identity_perm(self.degree) not in elems:
            return False
        return all(invert(a) in elems for a in elems) and all(
            compose(a, b) in elems for a in elems for b in elems
        )

    def generators(self) -> list[Perm]:
        """A small generating set, chosen greedily in element order."""
        gens: list[Perm] = []
        span = {identity_perm(self.degree)}
        for p in self.perms:
            if p in span:
                continue
            gens.append(p)
            span = _closure(gens, self.degree)
        return gens


def _closure(gens: Iterable[Perm], degree: int) -> set[Perm]:
    gens = list(gens)
    span = {identity_perm(degree)}
    frontier = list(span)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = compose(g, a)
                if c not in span:
                    span.add(c)
                    nxt.append(c)
        frontier = nxt
    return span


def _colored_automorphisms(adj: Sequence[frozenset[int]], colors: Sequence) -> list[Perm]:
    m = len(adj)
    degree = [len(a) for a in adj]
    invariant = [
        (colors[v], degree[v], tuple(sorted((colors[u], degree[u]) for u in adj[v])))
        for v in range(m)
    ]

    # order: highest degree first, then vertices most attached to those already ordered
    order: list[int] = []
    remaining = set(range(m))
    while remaining:
        placed = set(order)
        v = max(remaining, key=lambda u: (len(adj[u] & placed), degree[u], -u))
        order.append(v)
        remaining.remove(v)

    image = [-1] * m
    used = [False] * m
    result: list[Perm] = []

    def extend(k: int):
        if k == m:
            result.append(tuple(image))
            return
        v = order[k]
        for w in range(m):
            if used[w] or invariant[w] != invariant[v]:
                continue
            if any((u in adj[v]) != (image[u] in adj[w]) for u in order[:k]):
                continue
            image[v], used[w] = w, True
            extend(k + 1)
            image[v], used[w] = -1, False

    extend(0)
    return sorted(result)


def graph_automorphisms(g: Graph) -> PermGroup:
    """Backtracking search with degree/neighbour-degree refinement; m ≲ 30."""
    return PermGroup(tuple(_colored_automorphisms(g.adjacency, [0] * g.m)))


def colored_quotient_automorphisms(q: ColoredQuotient) -> PermGroup:
    """Automorphisms of the quotient graph preserving class sizes."""
    return PermGroup(tuple(_colored_automorphisms(q.as_graph().adjacency, q.sizes)))


def lift(tau: Sequence[int], p: Preorder) -> Perm:
    """Send the k-th smallest element of each class to the k-th smallest of its image."""
    image = [-1] * p.m
    for a, members in enumerate(p.classes):
        target = p.classes[tau[a]]
        if len(target) != len(members):
            raise ValueError(
                f"quotient permutation maps a class of size {len(members)} "
                f"to one of size {len(target)}"
            )
        for src, dst in zip(members, target):
            image[src] = dst
    return tuple(image)


def lifted_automorphisms(g: Graph, p: Preorder | None = None) -> PermGroup:
    """ℓ(Aut(G̃,c)) as a permutation group on the vertices."""
    p = p or compute_preorder(g)
    q = quotient_colored(g, p)
    return PermGroup(tuple(sorted(lift(t, p) for t in colored_quotient_automorphisms(q))))


def _check_invertible(a: np.ndarray, what: str = "matrix") -> None:
    s = np.linalg.svd(a, compute_uv=False)
    if s.size == 0 or s[-1] <= 1e-12 * max(s[0], 1e-300):
        raise SingularMatrixError(f"{what} is singular")


def s_g_basis(g: Graph) -> list[np.ndarray]:
    """Basis of the symmetric matrices supported on the diagonal and edges."""
    basis = []
    for i in range(g.m):
        e = np.zeros((g.m, g.m))
        e[i, i] = 1.0
        basis.append(e)
    for i, j in g.sorted_edges():
        e = np.zeros((g.m, g.m))
        e[i, j] = e[j, i] = 1.0
        basis.append(e)
    return basis


def non_edge_mask(g: Graph) -> np.ndarray:
    mask = ~g.adjacency_matrix()
    np.fill_diagonal(mask, False)
    return mask


def is_in_G(a: np.ndarray, graph: Graph, tol: float = DEFAULT_TOL) -> bool:
    """Whether ``aᵀ B a`` stays in S_G for every basis element B of S_G."""
    a = np.asarray(a, dtype=float)
    _check_invertible(a, "group element")
    mask = non_edge_mask(graph)
    norm_a = np.abs(a).sum(axis=1).max()
    for b in s_g_basis(graph):
        image = a.T @ b @ a
        scale = 1.0 + norm_a**2 * np.abs(b).sum(axis=1).max()
        if np.any(np.abs(image[mask]) > tol * scale):
            return False
    return True


def decompose(
    a: np.ndarray, graph: Graph, tol: float = DEFAULT_TOL, automorphisms: PermGroup | None = None
) -> tuple[Perm, np.ndarray]:
    """Write ``a = P_sigma @ g0`` with sigma ∈ Aut(graph) and g0 ∈ G⁰.

    The first automorphism (in sorted order, identity first) that makes
    ``P_sigma⁻¹ a`` pattern-compliant is returned.
    """
    a = np.asarray(a, dtype=float)
    _check_invertible(a, "group element")
    pattern = g0_pattern(compute_preorder(graph))
    auts = automorphisms or graph_automorphisms(graph)
    for sigma in auts:
        g0 = perm_matrix(sigma).T @ a
        if pattern.complies(g0, tol):
            return sigma, g0
    raise NotInGroupError("not a member of G: no automorphism yields a G⁰ cofactor")


def act_on_concentration(a: np.ndarray, k: np.ndarray) -> np.ndarray:
    """``a · K = a⁻ᵀ K a⁻¹``, the concentration matrix of ``a X``."""
    a = np.asarray(a, dtype=float)
    _check_invertible(a, "group element")
    inv = np.linalg.inv(a)
    out = inv.T @ np.asarray(k, dtype=float) @ inv
    return (out + out.T) / 2


def random_g0(pattern: ZeroPattern, rng: np.random.Generator, min_abs_det: float = 1e-6) -> np.ndarray:
    """Pattern entries i.i.d. standard normal, resampled while |det| < min_abs_det."""
    while True:
        a = np.where(pattern.allowed, rng.standard_normal(pattern.allowed.shape), 0.0)
        if abs(np.linalg.det(a)) >= min_abs_det:
            return a


def random_group_element(
    graph: Graph,
    rng: np.random.Generator,
    automorphisms: PermGroup | None = None,
    pattern: ZeroPattern | None = None,
) -> tuple[np.ndarray, Perm, np.ndarray]:
    """Random ``P_sigma @ g0`` with sigma uniform in Aut(graph); returns (g, sigma, g0)."""
    auts = automorphisms or graph_automorphisms(graph)
    pattern = pattern or g0_pattern(compute_preorder(graph))
    sigma = auts.perms[int(rng.integers(auts.order))]
    g0 = random_g0(pattern, rng)
    return perm_matrix(sigma) @ g0, sigma, g0


def class_fixing_automorphisms(g: Graph, p: Preorder | None = None) -> list[Perm]:
    """Automorphisms mapping every preorder class onto itself."""
    p = p or compute_preorder(g)
    return [s for s in graph_automorphisms(g) if all(p.class_of[s[i]] == p.class_of[i] for i in range(g.m))]
