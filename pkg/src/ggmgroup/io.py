"""File formats and JSON report assembly.

Everything here speaks 1-based vertex labels.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any

import numpy as np

from . import graph_core as gc
from . import group as grp
from .estimation import breakdown_upper_bound, min_sample_size
from .graph_core import Graph
from .orbit import orbit_report, transitivity_conditions


class GraphFormatError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_graph(text: str) -> Graph:
    """Parse ``m`` on the first line, then one ``i j`` edge per line."""
    m = None
    edges: list[tuple[int, int]] = []
    seen: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if m is None:
            if len(fields) != 1 or not fields[0].isdigit() or int(fields[0]) < 1:
                raise GraphFormatError(f"expected a positive vertex count, got {line!r}", lineno)
            m = int(fields[0])
            continue
        if len(fields) != 2:
            raise GraphFormatError(f"expected two vertex labels, got {line!r}", lineno)
        try:
            i, j = int(fields[0]), int(fields[1])
        except ValueError:
            raise GraphFormatError(f"non-integer vertex label in {line!r}", lineno) from None
        for v in (i, j):
            if not 1 <= v <= m:
                raise GraphFormatError(f"vertex {v} outside 1..{m}", lineno)
        if i == j:
            raise GraphFormatError(f"self-loop at vertex {i}", lineno)
        key = (min(i, j), max(i, j))
        if key in seen:
            raise GraphFormatError(f"duplicate edge {key[0]} {key[1]} (first on line {seen[key]})", lineno)
        seen[key] = lineno
        edges.append(key)
    if m is None:
        raise GraphFormatError("missing vertex count", 1)
    return Graph.from_edges(m, edges, one_based=True)


def serialize_graph(g: Graph) -> str:
    lines = [str(g.m)] + [f"{i + 1} {j + 1}" for i, j in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def read_graph(path: str | Path) -> Graph:
    return parse_graph(Path(path).read_text())


def read_matrix_csv(path: str | Path) -> np.ndarray:
    """CSV of decimal floats, no header, one row per variable."""
    return np.loadtxt(path, delimiter=",", ndmin=2, dtype=float)


def matrix_to_json(a: np.ndarray) -> list[list[float]]:
    return [[float(f"{v:.17g}") for v in row] for row in np.asarray(a, dtype=float)]


def perm_to_json(perm) -> list[int]:
    return [v + 1 for v in perm]


def vertex_sets_to_json(sets) -> list[list[int]]:
    return [[v + 1 for v in s] for s in sets]


def group_fragment(g: Graph, p: gc.Preorder | None = None) -> dict[str, Any]:
    p = p or gc.compute_preorder(g)
    q = gc.quotient_colored(g, p)
    quotient_auts = grp.colored_quotient_automorphisms(q)
    return {
        "g0_dimension": grp.g0_dimension(p),
        "pattern": grp.g0_pattern(p).allowed.tolist(),
        "aut_graph_order": grp.graph_automorphisms(g).order,
        "aut_quotient_order": quotient_auts.order,
        "quotient_generators": [perm_to_json(t) for t in quotient_auts.generators()],
    }


def analyze(
    g: Graph,
    n: int | None = None,
    seed: int = 0,
    check_numeric: bool = False,
    tol: float | None = None,
) -> dict[str, Any]:
    """Full structural report for one graph; deterministic given ``seed``."""
    p = gc.compute_preorder(g)
    poset = gc.poset_PC(p)
    q = gc.quotient_colored(g, p)
    rng = np.random.default_rng(seed) if check_numeric else None
    orbit = orbit_report(g, rng, **({"tol": tol} if tol else {}))
    trans = transitivity_conditions(g)
    q_min = min_sample_size(g)
    report: dict[str, Any] = {
        "graph": {"m": g.m, "edges": vertex_sets_to_json(g.sorted_edges())},
        "preorder": {
            "classes": vertex_sets_to_json(p.classes),
            "down_sets": vertex_sets_to_json(p.down_sets),
            "hasse": [[a + 1, b + 1] for a, b in poset.hasse],
        },
        "maximal_cliques": vertex_sets_to_json(gc.maximal_cliques(g)),
        "quotient": {"sizes": list(q.sizes), "edges": [[a + 1, b + 1] for a, b in sorted(q.edges)]},
        "group": group_fragment(g, p),
        "edge_colors": {f"{i + 1}-{j + 1}": c.value for (i, j), c in gc.color_edges(g, p).items()},
        "orbit": orbit.to_dict(),
        "transitivity": {
            "comparable_edges": trans.comparable_edges,
            "chordal_without_4chain": trans.chordal_without_4chain,
            "hasse_forest_of_rooted_trees": trans.hasse_forest_of_rooted_trees,
            "transitive": trans.transitive,
        },
        "min_sample_size": q_min,
    }
    if n is not None:
        report["breakdown_bound"] = {"n": n, "value": str(breakdown_upper_bound(g, n))}
    return report


def render_pretty(obj: Any, indent: int = 0) -> str:
    """Plain indented text for humans."""
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for key, val in obj.items():
            if isinstance(val, (dict, list)) and val and not _is_flat(val):
                lines.append(f"{pad}{key}:")
                lines.append(render_pretty(val, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_flat(val)}")
    elif isinstance(obj, list):
        for val in obj:
            lines.append(f"{pad}- {_flat(val)}" if _is_flat(val) else render_pretty(val, indent + 1))
    else:
        lines.append(f"{pad}{_flat(obj)}")
    return "\n".join(lines)


def _is_flat(val: Any) -> bool:
    if isinstance(val, dict):
        return False
    if isinstance(val, list):
        return all(not isinstance(v, (dict, list)) or (isinstance(v, list) and _is_flat(v)) for v in val) and (
            len(val) <= 12 or all(not isinstance(v, list) for v in val)
        )
    return True


def _flat(val: Any) -> str:
    if isinstance(val, list):
        return "[" + ", ".join(_flat(v) for v in val) + "]"
    if isinstance(val, float):
        return f"{val:.6g}"
    return str(val)
