"""Sample-side consequences of the group structure.

Samples are ``m x n`` arrays whose columns are observations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Callable

import numpy as np

from . import graph_core as gc
from .graph_core import Graph, Preorder
from .group import (
    g0_pattern,
    graph_automorphisms,
    lifted_automorphisms,
    perm_matrix,
)
from .orbit import check_concentration, is_transitive

GENERIC_RTOL = 1e-10


class DegenerateSampleError(ValueError):
    """A sub-sample that must have full rank does not (at the genericity tolerance)."""

    def __init__(self, message: str, down_set: tuple[int, ...] | None = None):
        super().__init__(message)
        self.down_set = down_set


class UnsupportedGraphError(ValueError):
    pass


def _full_rank(a: np.ndarray, rtol: float) -> bool:
    if a.shape[0] == 0:
        return True
    if a.shape[1] < a.shape[0]:
        return False
    s = np.linalg.svd(a, compute_uv=False)
    return s[0] > 0 and s[-1] >= rtol * s[0]


def _fmt(vertices) -> str:
    return "{" + ",".join(str(v + 1) for v in vertices) + "}"


def min_sample_size(g: Graph) -> int:
    return gc.compute_preorder(g).max_down_set_size()


def breakdown_upper_bound(g: Graph, n: int) -> Fraction:
    """⌈(n - max|↓i| + 1)/2⌉ / n for generic samples of size n."""
    q = min_sample_size(g)
    if n < q:
        raise ValueError(f"sample size {n} is below the minimum {q}")
    return Fraction(-(-(n - q + 1) // 2), n)


def genericity_certificate(g: Graph, x: np.ndarray, rtol: float = GENERIC_RTOL) -> dict[tuple[int, ...], bool]:
    """For each distinct down set, whether the corresponding rows of x have full row rank."""
    p = gc.compute_preorder(g)
    return {d: _full_rank(x[list(d)], rtol) for d in sorted(set(p.down_sets))}


@dataclass(frozen=True)
class InvariantValue:
    classes: tuple[tuple[int, ...], ...]
    projectors: tuple[np.ndarray, ...]

    def ranks(self, rtol: float = 1e-8) -> list[int]:
        return [int(np.linalg.matrix_rank(pr, tol=rtol * max(1.0, np.abs(pr).max()))) for pr in self.projectors]


def _row_space_projector(a: np.ndarray) -> np.ndarray:
    # equals aᵀ(aaᵀ)⁻¹a for full row rank a
    _, _, vt = np.linalg.svd(a, full_matrices=False)
    return vt.T @ vt


def maximal_invariant(g: Graph, x: np.ndarray, rtol: float = GENERIC_RTOL) -> InvariantValue:
    """Per class, the orthogonal projector onto the row space of x[↓i]."""
    x = np.asarray(x, dtype=float)
    p = gc.compute_preorder(g)
    projectors = []
    for a in range(len(p.classes)):
        d = p.class_down_set(a)
        rows = x[list(d)]
        if not _full_rank(rows, rtol):
            raise DegenerateSampleError(f"degenerate sample: rows {_fmt(d)} are not of full rank", d)
        projectors.append(_row_space_projector(rows))
    return InvariantValue(p.classes, tuple(projectors))


@dataclass(frozen=True)
class SliceMap:
    """Column assignment f: vertices -> columns, injective on every down set."""

    f: tuple[int, ...]
    n: int
    order: tuple[int, ...]  # classes in processing order

    def columns(self, vertices) -> list[int]:
        return [self.f[v] for v in vertices]


def _conflicts(p: Preorder) -> list[set[int]]:
    # j conflicts with i when both lie in a common down set
    m = p.m
    out = [set() for _ in range(m)]
    for d in set(p.down_sets):
        for i in d:
            out[i].update(d)
    for i in range(m):
        out[i].discard(i)
    return out


def build_slice_map(g: Graph, n: int, p: Preorder | None = None) -> SliceMap:
    """Assign columns class by class along a linear extension of the poset.

    Each class gets, in increasing order, the smallest columns not already
    used by an earlier-assigned vertex sharing a down set with it. When
    no two incomparable vertices share a down set this is the plain
    inductive rule over ``↓i ∖ ī``. A greedy pass is tried first; an
    exhaustive search over column choices is the fallback.
    """
    p = p or gc.compute_preorder(g)
    q = p.max_down_set_size()
    if n < q:
        raise ValueError(f"sample size {n} is below the minimum {q}")
    poset = gc.poset_PC(p)
    order = poset.linear_extension()
    conflicts = _conflicts(p)

    f = [-1] * p.m

    def options(a: int):
        members = p.classes[a]
        blocked = {f[j] for i in members for j in conflicts[i] if f[j] >= 0}
        free = [c for c in range(n) if c not in blocked]
        return itertools.combinations(free, len(members))

    def search(k: int, greedy: bool) -> bool:
        if k == len(order):
            return True
        a = order[k]
        for cols in options(a):
            for v, c in zip(p.classes[a], cols):
                f[v] = c
            if search(k + 1, greedy):
                return True
            for v in p.classes[a]:
                f[v] = -1
            if greedy:
                return False
        return False

    if not search(0, greedy=True) and not search(0, greedy=False):
        raise RuntimeError(f"no column assignment injective on down sets exists for n={n}")
    return SliceMap(tuple(f), n, tuple(order))


def in_slice(g: Graph, x: np.ndarray, slice_map: SliceMap, tol: float = 1e-9) -> bool:
    """Identity block at f(ī) and zeros at f(↓i ∖ ī), for every class."""
    p = gc.compute_preorder(g)
    for a, members in enumerate(p.classes):
        lower = [j for j in p.class_down_set(a) if p.class_of[j] != a]
        block = x[np.ix_(members, slice_map.columns(members))]
        if np.abs(block - np.eye(len(members))).max() > tol:
            return False
        if lower and np.abs(x[np.ix_(members, slice_map.columns(lower))]).max() > tol:
            return False
    return True


def reduce_to_slice(
    g: Graph, x: np.ndarray, slice_map: SliceMap | None = None, rtol: float = GENERIC_RTOL
) -> tuple[np.ndarray, np.ndarray]:
    """The unique g0 ∈ G⁰ with g0·x in the slice, and g0·x itself.

    Classes are handled bottom-up; each step rewrites the rows of one
    class as combinations of its own rows and the (already reduced)
    rows below it.
    """
    x = np.asarray(x, dtype=float)
    m, n = x.shape
    p = gc.compute_preorder(g)
    slice_map = slice_map or build_slice_map(g, n, p)
    g0 = np.eye(m)
    y = x.copy()
    for a in slice_map.order:
        members = list(p.classes[a])
        down = list(p.class_down_set(a))
        lower = [j for j in down if p.class_of[j] != a]
        rows = lower + members
        block = y[np.ix_(rows, slice_map.columns(rows))]
        if not _full_rank(block, rtol):
            raise DegenerateSampleError(
                f"degenerate sample: pivot block for down set {_fmt(down)} is singular", tuple(down)
            )
        target = np.zeros((len(members), len(rows)))
        target[:, len(lower):] = np.eye(len(members))
        coef = np.linalg.solve(block.T, target.T).T
        c_low, c_own = coef[:, : len(lower)], coef[:, len(lower):]
        new_rows = c_own @ g0[members]
        if lower:
            new_rows = new_rows + c_low @ g0[lower]
        g0[members] = new_rows
        y[members] = new_rows @ x
    return g0, y


def identity_tprime(m: int) -> Callable[[np.ndarray], np.ndarray]:
    return lambda _xl: np.eye(m)


def equivariant_estimator(
    g: Graph,
    x: np.ndarray,
    t_prime: Callable[[np.ndarray], np.ndarray] | None = None,
    rtol: float = GENERIC_RTOL,
) -> np.ndarray:
    """G-equivariant estimate built from an arbitrary map ``t_prime`` on the slice.

    With r(x) the reduction into the slice, T0(x) = r(x)⁻¹·T′(r(x)x) is
    G⁰-equivariant, and averaging σ⁻¹·T0(σx) over the lifted quotient
    automorphisms σ adds equivariance under the permutation part.
    """
    x = np.asarray(x, dtype=float)
    m, n = x.shape
    t_prime = t_prime or identity_tprime(m)
    p = gc.compute_preorder(g)
    slice_map = build_slice_map(g, n, p)
    lifted = lifted_automorphisms(g, p)
    acc = np.zeros((m, m))
    for sigma in lifted:
        pm = perm_matrix(sigma)
        r, xl = reduce_to_slice(g, pm @ x, slice_map, rtol)
        k_slice = check_concentration(g, t_prime(xl))
        t0 = r.T @ k_slice @ r
        acc += pm.T @ t0 @ pm
    acc /= lifted.order
    return (acc + acc.T) / 2


def mle_decomposable(g: Graph, x: np.ndarray, rtol: float = GENERIC_RTOL) -> np.ndarray:
    """Concentration MLE of a decomposable model (zero mean) in closed form.

    Along a maximum cardinality search order each vertex's earlier
    neighbours form a clique; K̂ is the sum of the padded inverse
    marginal covariances of (earlier neighbours + vertex) minus those of
    the earlier neighbours alone.
    """
    if not gc.is_chordal(g):
        raise UnsupportedGraphError("closed-form MLE requires a chordal graph")
    x = np.asarray(x, dtype=float)
    m, n = x.shape
    k = np.zeros((m, m))
    seen: list[int] = []
    for v in gc.mcs_order(g):
        prev = sorted(u for u in g.adjacency[v] if u in seen)
        for block, sign in ((prev + [v], 1.0), (prev, -1.0)):
            if not block:
                continue
            if not _full_rank(x[block], rtol):
                raise DegenerateSampleError(f"degenerate sample: marginal {_fmt(block)} is singular", tuple(block))
            # inverse marginal covariance from R in x[block]ᵀ/√n = QR, so the
            # conditioning of the sample is not squared
            r_inv = np.linalg.inv(np.linalg.qr(x[block].T / np.sqrt(n), mode="r"))
            k[np.ix_(block, block)] += sign * (r_inv @ r_inv.T)
        seen.append(v)
    return (k + k.T) / 2


def g0_factorization(g: Graph, s_inv: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """h ∈ G⁰ with hᵀh = s_inv, for transitive graphs.

    Classes are eliminated from the top of the poset down; each diagonal
    block is the upper-triangular Cholesky factor (positive diagonal) of
    the current Schur complement, which makes h unique.
    """
    if not is_transitive(g):
        raise UnsupportedGraphError("G⁰ factorization requires a graph on which G acts transitively")
    s_inv = check_concentration(g, s_inv)
    p = gc.compute_preorder(g)
    order = gc.poset_PC(p).linear_extension()
    work = s_inv.copy()
    h = np.zeros_like(work)
    for a in reversed(order):
        members = list(p.classes[a])
        lower = [j for j in p.class_down_set(a) if p.class_of[j] != a]
        try:
            r = np.linalg.cholesky(work[np.ix_(members, members)]).T
        except np.linalg.LinAlgError:
            raise ValueError("factorization failed: Schur complement is not positive definite") from None
        h[np.ix_(members, members)] = r
        if lower:
            off = np.linalg.solve(r.T, work[np.ix_(members, lower)])
            h[np.ix_(members, lower)] = off
            work[np.ix_(lower, lower)] -= off.T @ off
    resid = np.abs(h.T @ h - s_inv).max() / max(1.0, np.abs(s_inv).max())
    if resid > tol or not g0_pattern(p).complies(h, tol):
        raise ValueError(f"factorization failed (relative residual {resid:.3g})")
    return h


def h0_is_admissible(g: Graph, h0: np.ndarray, tol: float = 1e-9) -> bool:
    """Whether h0ᵀh0 is fixed by every orthogonal element of G.

    Those elements are the graph automorphisms times block-diagonal
    orthogonal matrices on the classes, so h0ᵀh0 must be diagonal,
    constant on each class and constant along automorphism orbits. Only
    then is (h0 h(x))ᵀ h0 h(x) equivariant.
    """
    gram = h0.T @ h0
    scale = max(1.0, np.abs(gram).max())
    if np.abs(gram - np.diag(np.diag(gram))).max() > tol * scale:
        return False
    d = np.diag(gram)
    p = gc.compute_preorder(g)
    for members in p.classes:
        if np.ptp(d[list(members)]) > tol * scale:
            return False
    for sigma in graph_automorphisms(g):
        if np.abs(d[list(sigma)] - d).max() > tol * scale:
            return False
    return True


def transitive_equivariant_estimator(
    g: Graph, x: np.ndarray, h0: np.ndarray | None = None, strict: bool = True, rtol: float = GENERIC_RTOL
) -> np.ndarray:
    """T(x) = (h0 h(x))ᵀ h0 h(x) where h(x)ᵀh(x) = S(x)⁻¹ and S(x) = n Σ̂.

    With ``strict`` (default) an ``h0`` whose Gram matrix is not invariant
    under the orthogonal part of G is rejected, since T is then not
    equivariant.
    """
    x = np.asarray(x, dtype=float)
    m, n = x.shape
    h0 = np.eye(m) if h0 is None else np.asarray(h0, dtype=float)
    p = gc.compute_preorder(g)
    if not g0_pattern(p).complies(h0) or abs(np.linalg.det(h0)) < 1e-12:
        raise ValueError("h0 must be an invertible matrix with the G⁰ zero pattern")
    if strict and not h0_is_admissible(g, h0):
        raise ValueError("h0ᵀh0 is not invariant under the orthogonal stabilizer of I; T would not be equivariant")
    s_inv = mle_decomposable(g, x, rtol) / n
    h = g0_factorization(g, s_inv)
    t = (h0 @ h).T @ (h0 @ h)
    return (t + t.T) / 2


def log_det_pd(k: np.ndarray) -> float:
    try:
        c = np.linalg.cholesky(np.asarray(k, dtype=float))
    except np.linalg.LinAlgError:
        raise ValueError("matrix is not positive definite") from None
    return 2.0 * float(np.log(np.diag(c)).sum())


def pseudo_metric_D(k1: np.ndarray, k2: np.ndarray) -> float:
    """|log det(K1 K2⁻¹)|."""
    return abs(log_det_pd(k1) - log_det_pd(k2))


@dataclass
class StabilizerReport:
    n: int
    max_down_set: int
    row_ranks: list[int]
    unique: bool
    trace_unconstrained: bool
    direction: np.ndarray | None  # A with A x = 0 and trace 1, when one exists

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "max_down_set": self.max_down_set,
            "row_ranks": self.row_ranks,
            "unique": self.unique,
            "trace_unconstrained": self.trace_unconstrained,
        }


def stabilizer_analysis(g: Graph, x: np.ndarray, rtol: float = GENERIC_RTOL) -> StabilizerReport:
    """Solve Σ_{j≼i} g_ij x_j = x_i row by row over the sample columns."""
    x = np.asarray(x, dtype=float)
    m, n = x.shape
    p = gc.compute_preorder(g)
    ranks, direction = [], None
    for i in range(m):
        d = list(p.down_sets[i])
        rows = x[d]
        if n == 0:
            rank, null = 0, np.eye(len(d))
        else:
            u, s, _ = np.linalg.svd(rows, full_matrices=True)
            rank = int((s >= rtol * s[0]).sum()) if s.size and s[0] > 0 else 0
            null = u[:, rank:]
        ranks.append(rank)
        if direction is None and null.shape[1]:
            pos = d.index(i)
            coeffs = null @ null[pos]  # null-space vector with the largest i-th component
            if abs(coeffs[pos]) > 1e-8:
                direction = np.zeros((m, m))
                direction[i, d] = coeffs / coeffs[pos]
    unique = all(r == len(d) for r, d in zip(ranks, p.down_sets))
    return StabilizerReport(n, p.max_down_set_size(), ranks, unique, direction is not None, direction)


def verify_stabilizer_triviality(g: Graph, n: int, seed: int = 0) -> StabilizerReport:
    rng = np.random.default_rng(seed)
    return stabilizer_analysis(g, rng.standard_normal((g.m, n)))


def stabilizer_element(direction: np.ndarray, t: float) -> np.ndarray:
    """exp(t·A) for a rank-one A with A² = A; its determinant is e^t."""
    return np.eye(direction.shape[0]) + np.expm1(t) * direction


@dataclass
class BreakdownTrace:
    fixed_points: int
    altered_points: int
    log_det_g_squared: float
    distances: list[float]

    def bounds(self) -> list[float]:
        return [l * abs(self.log_det_g_squared) for l in range(1, len(self.distances) + 1)]


def breakdown_trace(
    g: Graph,
    x: np.ndarray,
    estimator: Callable[[np.ndarray], np.ndarray],
    steps: int = 10,
    t: float = 0.5,
) -> BreakdownTrace:
    """Contaminate a sample with powers of a determinant-changing stabilizer.

    g fixes the first k = max|↓i| - 1 points, and the last ⌈(n-k)/2⌉
    points are replaced by g^l times themselves. Returns the distances
    D(T(y_l), T(g^{-l} y_l)) for l = 1..steps.
    """
    x = np.asarray(x, dtype=float)
    m, n = x.shape
    k = min_sample_size(g) - 1
    report = stabilizer_analysis(g, x[:, :k])
    if report.direction is None:
        raise ValueError("no determinant-changing stabilizer of the first k points")
    d = ceil((n - k) / 2)
    distances = []
    for l in range(1, steps + 1):
        g_l = stabilizer_element(report.direction, l * t)
        y = x.copy()
        y[:, n - d:] = g_l @ x[:, n - d:]
        back = stabilizer_element(report.direction, -l * t) @ y
        distances.append(pseudo_metric_D(estimator(y), estimator(back)))
    return BreakdownTrace(k, d, 2.0 * t, distances)
