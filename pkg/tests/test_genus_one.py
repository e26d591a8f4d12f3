from fractions import Fraction as F
from math import comb

import pytest

from tropmod.genus_one import (
    MarkedGraph, canonical_form, enumerate_genus1_graphs, genus1_betti_prediction,
    genus1_chain_complex, genus1_complex, genus1_heavy_locus_homology, genus1_homology,
    is_degenerate, verify_double_suspension,
)
from tropmod.weights import WeightError, WeightVector

from oracles import genus1_graph_classes

EPS = F(1, 4)


@pytest.mark.parametrize("w, max_edges", [
    ([1, 1], 3),
    ([EPS, EPS], 3),
    ([1, EPS, EPS], 3),
    ([1, 1, 1], 3),
])
def test_enumeration_matches_exhaustive_search(w, max_edges):
    for e in range(max_edges + 1):
        graphs = enumerate_genus1_graphs(w, e)
        assert len(graphs) == len(genus1_graph_classes(w, e))
        for G in graphs:
            assert G.is_connected() and G.total_genus() == 1 and len(G.edges) == e


def test_enumeration_examples():
    one = enumerate_genus1_graphs([1, 1], 1)
    assert len(one) == 2
    loops = [G for G in one if G.edges[0][0] == G.edges[0][1]]
    assert len(loops) == 1 and loops[0].marks == (0b11,)
    two = enumerate_genus1_graphs([1, 1], 2)
    cycles = [G for G in two if G.is_cycle()]
    assert len(cycles) == 1 and is_degenerate(cycles[0])
    three = enumerate_genus1_graphs([EPS, EPS], 3)
    # every unmarked genus-0 vertex needs valency > 2, so no 3-cycle appears
    assert not any(G.is_cycle() for G in three)
    assert all(G.is_stable(WeightVector([EPS, EPS])) for G in three)


def test_canonical_form_is_invariant():
    G = MarkedGraph((0, 0, 1), (0b01, 0b10, 0), ((0, 2), (1, 2)), 2)
    H = MarkedGraph((1, 0, 0), (0, 0b10, 0b01), ((0, 1), (0, 2)), 2)
    assert canonical_form(G)[0] == canonical_form(H)[0]


@pytest.mark.parametrize("w", [[1, 1], [1, 1, EPS], [EPS, EPS, EPS], [1, 1, 1, EPS]])
def test_square_zero(w):
    assert genus1_chain_complex(w).check_square_zero()


def test_chain_examples():
    C = genus1_chain_complex([1, 1])
    assert C.dim(0) == 2 and C.dim(1) == 1
    assert genus1_homology([1, 1]).is_zero()
    assert genus1_homology([1, 1, EPS]).betti_dict() == {2: 1}
    assert genus1_homology([EPS, EPS]).is_zero()


def test_homology_examples():
    assert genus1_homology([EPS] * 3).betti_dict() == {2: 1}
    assert genus1_homology([1, EPS, EPS]).betti_dict() == {2: 1}
    assert genus1_homology([1, 1, 1]).betti_dict() == {2: 1}


def test_prediction_examples():
    assert genus1_betti_prediction(2, 1).betti_dict() == {2: 1}
    assert genus1_betti_prediction(1, 3).is_zero()
    assert genus1_betti_prediction(0, 5).betti_dict() == {2: comb(4, 2), 4: 1}
    assert genus1_betti_prediction(2, 0).is_zero()
    with pytest.raises(WeightError):
        genus1_betti_prediction(0, 0)


def test_heavy_locus_and_cycles():
    for w in ([1, 1, EPS], [1, 1, 1], [1, EPS, EPS, EPS]):
        assert genus1_heavy_locus_homology(w).is_zero()
        cx = genus1_complex(w)
        for cells in cx.cells:
            for G in cells:
                assert G.has_heavy_vertex(WeightVector(w)) or G.is_cycle()


def test_double_suspension():
    assert verify_double_suspension([1, 1, EPS], [1, 1, 1, EPS])
    assert verify_double_suspension([1, 1, EPS, EPS], [1, 1, 1, EPS, EPS])
    with pytest.raises(WeightError):
        verify_double_suspension([1, 1, EPS], [1, 1, 1, F(1, 2)])
    with pytest.raises(WeightError):
        verify_double_suspension([1, 1], [1, 1, 1])
