"""Cross-checks between independent routes, used by ``verify`` and ``sweep``.

Every check returns a mapping ``name -> bool``.
"""

from __future__ import annotations

import itertools
from collections import Counter

import numpy as np

from . import estimation as est
from . import graph_core as gc
from . import group as grp
from . import orbit as orb
from .graph_core import Graph

SWEEP_LIMIT = 6


def check_graph_core(g: Graph) -> dict[str, bool]:
    p = gc.compute_preorder(g)
    cliques = [set(c) for c in gc.maximal_cliques(g)]
    # i ≼ j iff every maximal clique containing j also contains i
    clique_char = all(
        p.leq(i, j) == all(i in c for c in cliques if j in c) for i in range(g.m) for j in range(g.m)
    )
    down_cliques = all(g.has_edge(a, b) for d in p.down_sets for a, b in itertools.combinations(d, 2))
    poset = gc.poset_PC(p)
    red = sum(c is gc.EdgeColor.RED for c in gc.color_edges(g, p).values())
    return {
        "preorder_matches_cliques": clique_char,
        "down_sets_are_cliques": down_cliques,
        "hasse_closure": bool(np.array_equal(poset.transitive_closure_of_hasse(), poset.leq)),
        "red_count": red == sum(len(c) * (len(c) - 1) // 2 for c in p.classes),
    }


def check_orbit(g: Graph, rng: np.random.Generator, draws: int = 3, orders: int = 10, tol: float = orb.SVD_RTOL) -> dict[str, bool]:
    comb, _ = orb.orbit_dim_combinatorial(g)
    formula = orb.orbit_dim_formula(g)
    numeric = [orb.orbit_dim_numeric(g, orb.random_concentration(g, rng), tol) for _ in range(draws)]
    blue = [e for e, c in gc.color_edges(g).items() if c is gc.EdgeColor.BLUE]
    order_values = set()
    for _ in range(orders):
        perm = rng.permutation(len(blue))
        order_values.add(orb.orbit_dim_combinatorial(g, [blue[k] for k in perm])[0])
    return {
        "orbit_triple_agreement": comb == formula and all(v == comb for v in numeric),
        "orbit_order_independent": order_values <= {comb},
        "orbit_nonnegative": comb >= 0,
    }


def check_transitivity(g: Graph) -> dict[str, bool]:
    r = orb.transitivity_conditions(g)
    agree = r.comparable_edges == r.chordal_without_4chain == r.hasse_forest_of_rooted_trees
    dim = orb.orbit_dim_formula(g)
    return {"transitivity_criteria_agree": agree, "transitive_iff_dim_zero": r.transitive == (dim == 0)}


def _rel_err(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.abs(a - b).max() / (1.0 + np.abs(b).max()))


def check_invariant(g: Graph, rng: np.random.Generator, trials: int = 20, extra_columns: int = 1) -> dict[str, bool]:
    """τ invariance under G⁰, projector laws, and uniqueness of the slice point."""
    p = gc.compute_preorder(g)
    pattern = grp.g0_pattern(p)
    n = p.max_down_set_size() + extra_columns
    sm = est.build_slice_map(g, n, p)
    ok = Counter()
    for _ in range(trials):
        x = rng.standard_normal((g.m, n))
        h = grp.random_g0(pattern, rng)
        tau_x = est.maximal_invariant(g, x)
        tau_hx = est.maximal_invariant(g, h @ x)
        ok["tau_invariant"] += all(
            np.abs(a - b).max() <= 1e-8 * (1.0 + np.abs(a).max()) for a, b in zip(tau_x.projectors, tau_hx.projectors)
        )
        laws = True
        for a, pr in enumerate(tau_x.projectors):
            laws &= np.abs(pr @ pr - pr).max() <= 1e-9
            laws &= np.abs(pr - pr.T).max() <= 1e-12
            laws &= tau_x.ranks()[a] == len(p.class_down_set(a))
        ok["projector_laws"] += laws
        r1, xl1 = est.reduce_to_slice(g, x, sm)
        r2, xl2 = est.reduce_to_slice(g, h @ x, sm)
        ok["slice_unique"] += (
            _rel_err(xl2, xl1) <= 1e-8 and est.in_slice(g, xl1, sm) and pattern.complies(r1) and pattern.complies(r2)
        )
    return {k: ok[k] == trials for k in ("tau_invariant", "projector_laws", "slice_unique")}


def check_equivariance(g: Graph, rng: np.random.Generator, trials: int = 20, extra_columns: int = 1) -> dict[str, bool]:
    n = est.min_sample_size(g) + extra_columns
    auts = grp.graph_automorphisms(g)
    pattern = grp.g0_pattern(gc.compute_preorder(g))
    x = rng.standard_normal((g.m, n))
    base = est.equivariant_estimator(g, x)
    transitive = orb.is_transitive(g)
    base_t = est.transitive_equivariant_estimator(g, x) if transitive else None
    ok = {"estimator_equivariant": True}
    if transitive:
        ok["transitive_estimator_equivariant"] = True
    for _ in range(trials):
        a, _, _ = grp.random_group_element(g, rng, auts, pattern)
        ok["estimator_equivariant"] &= (
            _rel_err(est.equivariant_estimator(g, a @ x), grp.act_on_concentration(a, base)) <= 1e-8
        )
        if transitive:
            ok["transitive_estimator_equivariant"] &= (
                _rel_err(est.transitive_equivariant_estimator(g, a @ x), grp.act_on_concentration(a, base_t)) <= 1e-8
            )
    return ok


def check_mle_matching(g: Graph, rng: np.random.Generator, extra_columns: int = 2) -> dict[str, bool]:
    if not gc.is_chordal(g):
        return {}
    n = max(len(c) for c in gc.maximal_cliques(g)) + extra_columns
    x = rng.standard_normal((g.m, n))
    k = est.mle_decomposable(g, x)
    s = x @ x.T / n
    cov = np.linalg.inv(k)
    support = g.adjacency_matrix() | np.eye(g.m, dtype=bool)
    return {
        "mle_matches_sample_covariance": bool(np.abs((cov - s)[support]).max() <= 1e-9 * (1 + np.abs(s).max())),
        "mle_zero_on_non_edges": bool(np.all(k[~support] == 0.0)),
    }


def check_stabilizer_threshold(g: Graph, seed: int) -> dict[str, bool]:
    q = est.min_sample_size(g)
    at = est.verify_stabilizer_triviality(g, q, seed)
    below = est.verify_stabilizer_triviality(g, q - 1, seed)
    return {"stabilizer_threshold": at.unique and not below.unique and below.trace_unconstrained}


def verify_graph(g: Graph, seed: int = 0, trials: int = 20) -> dict[str, bool]:
    """All per-graph property checks."""
    rng = np.random.default_rng(seed)
    results: dict[str, bool] = {}
    results.update(check_graph_core(g))
    results.update(check_orbit(g, rng))
    results.update(check_transitivity(g))
    results.update(check_invariant(g, rng, trials))
    results.update(check_equivariance(g, rng, trials))
    results.update(check_mle_matching(g, rng))
    results.update(check_stabilizer_threshold(g, seed))
    return {name: bool(ok) for name, ok in results.items()}


def sweep(max_m: int, seed: int = 0, min_m: int | None = None) -> dict:
    """Exhaustive structural cross-checks over all labelled graphs.

    Covers graphs on ``min_m..max_m`` vertices; by default only ``max_m``.
    """
    if max_m > SWEEP_LIMIT:
        raise ValueError(f"limit exceeded: max_m={max_m} > {SWEEP_LIMIT}")
    if max_m < 1:
        raise ValueError("max_m must be at least 1")
    min_m = max_m if min_m is None else min_m
    rng = np.random.default_rng(seed)
    tally: dict[str, Counter] = {}
    count = 0
    failures = []
    for m in range(min_m, max_m + 1):
        for g in gc.all_graphs(m):
            count += 1
            results = {**check_graph_core(g), **check_orbit(g, rng), **check_transitivity(g)}
            results = {name: bool(ok) for name, ok in results.items()}
            for name, passed in results.items():
                tally.setdefault(name, Counter())["pass" if passed else "fail"] += 1
                if not passed and len(failures) < 20:
                    failures.append({"m": g.m, "edges": [[i + 1, j + 1] for i, j in g.sorted_edges()], "check": name})
    checks = {name: {"pass": c["pass"], "fail": c["fail"]} for name, c in sorted(tally.items())}
    return {
        "min_m": min_m,
        "max_m": max_m,
        "graphs": count,
        "checks": checks,
        "failures": failures,
        "ok": all(c["fail"] == 0 for c in checks.values()),
    }
