from math import comb

import numpy as np
import pytest

from ggmgroup import graph_core as gc
from ggmgroup import orbit as orb
from ggmgroup.graph_core import Graph

from conftest import named


def c2(n):
    return comb(n, 2) if n >= 2 else 0


def test_orbit_dimension_examples():
    for m in (1, 2, 4, 5):
        assert orb.orbit_dim_combinatorial(Graph.complete(m))[0] == 0
    assert orb.orbit_dim_combinatorial(named("bull")) == (1, 0)
    assert orb.orbit_dim_combinatorial(named("C4")) == (4, 0)
    assert orb.orbit_dim_formula(named("P3")) == 0
    assert orb.orbit_dim_formula(named("C4")) == 4
    assert orb.orbit_dim_formula(Graph.empty(5)) == 0


def test_deletion_order_is_validated():
    with pytest.raises(ValueError):
        orb.blue_edge_deletion(named("C4"), order=[(0, 1)])
    with pytest.raises(ValueError):
        orb.blue_edge_deletion(named("C4"), rule="random")


def test_in_order_rule_can_overshoot():
    # twins {2,3} and a singleton 1 both hang off vertex 4 through blue edges;
    # spending 4 on vertex 1 first leaves the red twin edge standing
    g = Graph.from_edges(6, [(1, 4), (1, 6), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5)], one_based=True)
    blue = sorted(e for e, c in gc.color_edges(g).items() if c is gc.EdgeColor.BLUE)
    first = [e for e in blue if 0 in e]
    rest = [e for e in blue if 0 not in e]
    literal = orb.blue_edge_deletion(g, first + rest, rule="in-order").dimension
    assert literal == 3
    assert orb.orbit_dim_formula(g) == 2
    assert orb.orbit_dim_combinatorial(g, first + rest)[0] == 2
    rng = np.random.default_rng(0)
    assert orb.orbit_dim_numeric(g, orb.random_concentration(g, rng)) == 2


def test_stabilizer_formula_examples():
    assert orb.stabilizer_dim_formula(Graph.complete(4)) == comb(4, 2)
    assert orb.stabilizer_dim_formula(named("star5")) == 0
    assert orb.stabilizer_dim_formula(named("bull")) == 0


@pytest.mark.parametrize("sizes", [(3, 1, 2, 2, 2), (2, 4, 1, 3, 2), (3, 3, 2, 2, 2), (1, 1, 1, 1, 1)])
def test_double_star_tree_formula(sizes):
    # quotient is a tree whose two inner vertices are adjacent
    tree = Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (1, 4)])
    g = orb.blow_up(tree, sizes)
    c = sizes
    expected = c2(c[0] - c[1]) + c2(c[1] - c[0]) + sum(c2(v) for v in c[2:])
    assert orb.stabilizer_dim_formula(g) == expected
    rng = np.random.default_rng(sum(sizes))
    assert orb.stabilizer_dim_numeric(g, orb.random_concentration(g, rng)) == expected


@pytest.mark.parametrize("sizes", [(2, 2, 2, 2), (3, 1, 2, 2), (1, 3, 3, 3)])
def test_star_tree_includes_centre(sizes):
    g = orb.blow_up(Graph.star(3), sizes)
    expected = sum(c2(v) for v in sizes)
    assert orb.stabilizer_dim_formula(g) == expected
    rng = np.random.default_rng(7)
    assert orb.stabilizer_dim_numeric(g, orb.random_concentration(g, rng)) == expected


def test_numeric_stabilizer():
    assert orb.stabilizer_dim_numeric(Graph.complete(4), np.eye(4)) == comb(4, 2)
    rng = np.random.default_rng(4)
    bull = named("bull")
    assert orb.stabilizer_dim_numeric(bull, orb.random_concentration(bull, rng)) == 0


def test_numeric_matches_formula_connected_m5():
    rng = np.random.default_rng(5)
    for g in gc.all_graphs(5):
        if g.is_connected():
            k = orb.random_concentration(g, rng)
            assert orb.stabilizer_dim_numeric(g, k) == orb.stabilizer_dim_formula(g)


def test_check_concentration_rejects_bad_input(p3):
    with pytest.raises(ValueError):
        orb.check_concentration(p3, np.ones((3, 3)))
    k = np.eye(3)
    k[1, 2] = k[2, 1] = 0.1
    with pytest.raises(ValueError):
        orb.check_concentration(p3, k)
    with pytest.raises(ValueError):
        orb.check_concentration(p3, np.diag([1.0, -1.0, 1.0]))


def test_transitivity_examples():
    assert orb.is_transitive(named("P3"))
    assert not orb.is_transitive(named("P4"))
    assert not orb.is_transitive(named("C4"))
    assert not orb.is_transitive(named("bull"))
    assert orb.is_transitive(Graph.empty(3))
    # Hasse diagram is a rooted tree, but the graph has an incomparable edge
    g = Graph.from_edges(5, [(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 5), (3, 4)], one_based=True)
    r = orb.transitivity_conditions(g)
    assert not r.comparable_edges and not r.chordal_without_4chain and not r.hasse_forest_of_rooted_trees


def test_orbit_report(bull):
    r = orb.orbit_report(bull, np.random.default_rng(0))
    assert (r.dim_combinatorial, r.dim_formula, r.dim_numeric) == (1, 1, 1)
    assert (r.blue_count, r.green_count, r.red_count) == (1, 4, 0)
    assert r.n_bar == (0, 0, 1, 1, 1)
    assert "dim_numeric" not in orb.orbit_report(bull).to_dict()


def test_blow_up_quotient():
    g = orb.blow_up(named("bull"), (2, 1, 3, 1, 2))
    p = gc.compute_preorder(g)
    assert sorted(len(c) for c in p.classes) == [1, 1, 2, 2, 3]
    q = gc.quotient_colored(g, p)
    assert len(q.edges) == 5
