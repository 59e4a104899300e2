import numpy as np
import pytest

from ggmgroup import graph_core as gc
from ggmgroup.graph_core import EdgeColor, Graph

from conftest import named
import oracles


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 0)])
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 3)])
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 1), (1, 0)])


def test_preorder_p3(p3):
    p = gc.compute_preorder(p3)
    related = {(i, j) for i in range(3) for j in range(3) if i != j and p.leq(i, j)}
    assert related == {(0, 1), (0, 2)}
    assert p.down_sets[1] == (0, 1)
    assert p.down_sets[2] == (0, 2)
    assert p.down_sets[0] == (0,)


def test_preorder_complete():
    p = gc.compute_preorder(Graph.complete(4))
    assert p.rel.all()
    assert p.classes == ((0, 1, 2, 3),)


def test_preorder_bull(bull):
    p = gc.compute_preorder(bull)
    related = {(i, j) for i in range(5) for j in range(5) if i != j and p.leq(i, j)}
    assert related == {(0, 2), (1, 2), (0, 3), (1, 4)}
    assert all(len(c) == 1 for c in p.classes)
    assert p.down_sets[2] == (0, 1, 2)


def test_maximal_cliques():
    assert gc.maximal_cliques(named("P3")) == [(0, 1), (0, 2)]
    assert gc.maximal_cliques(named("K4")) == [(0, 1, 2, 3)]
    assert gc.maximal_cliques(named("bull")) == [(0, 1, 2), (0, 3), (1, 4)]


def test_poset():
    poset = gc.poset_PC(gc.compute_preorder(named("P3")))
    assert sorted(poset.hasse) == [(0, 1), (0, 2)]
    assert poset.minimal_elements() == [0]
    assert gc.poset_PC(gc.compute_preorder(Graph.complete(5))).size == 1
    empty = gc.poset_PC(gc.compute_preorder(Graph.empty(4)))
    assert empty.size == 4 and empty.hasse == ()


def test_quotient():
    q = gc.quotient_colored(Graph.complete(4), gc.compute_preorder(Graph.complete(4)))
    assert q.sizes == (4,) and not q.edges
    q = gc.quotient_colored(named("P3"), gc.compute_preorder(named("P3")))
    assert q.sizes == (1, 1, 1) and sorted(q.edges) == [(0, 1), (0, 2)]
    c4 = named("C4")
    q = gc.quotient_colored(c4, gc.compute_preorder(c4))
    assert q.sizes == (1, 1, 1, 1) and q.as_graph() == c4


def test_edge_colors():
    assert set(gc.color_edges(Graph.complete(4)).values()) == {EdgeColor.RED}
    colors = gc.color_edges(named("bull"))
    assert colors[(0, 1)] is EdgeColor.BLUE
    assert all(colors[e] is EdgeColor.GREEN for e in [(0, 2), (1, 2), (0, 3), (1, 4)])
    assert set(gc.color_edges(named("C4")).values()) == {EdgeColor.BLUE}


def test_chordal_and_4chain():
    assert gc.is_chordal(named("K4"))
    assert not gc.is_chordal(named("C4"))
    assert gc.is_chordal(named("bull"))
    assert gc.has_induced_4chain(named("P4"))
    assert not gc.has_induced_4chain(Graph.complete(5))
    assert not gc.has_induced_4chain(named("star5"))
    a, b, c, d = gc.find_induced_4chain(named("bull"))
    assert {a, d} == {3, 4} and {b, c} == {0, 1}


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_against_brute_force(m):
    for g in gc.all_graphs(m):
        edges = sorted(g.edges)
        p = gc.compute_preorder(g)
        assert np.array_equal(p.rel, oracles.preorder_by_cliques(m, edges))
        assert gc.maximal_cliques(g) == oracles.brute_maximal_cliques(m, edges)
        assert gc.is_chordal(g) == oracles.brute_is_chordal(m, edges)
        assert gc.has_induced_4chain(g) == oracles.brute_has_induced_4chain(m, edges)
        poset = gc.poset_PC(p)
        assert np.array_equal(poset.transitive_closure_of_hasse(), poset.leq)


def test_all_graphs_count():
    assert sum(1 for _ in gc.all_graphs(4)) == 64
    assert sum(1 for _ in gc.all_graphs(1)) == 1
