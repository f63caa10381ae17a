import numpy as np
import pytest
from conftest import brute_phi, matrices
from hypothesis import given

from bimatch.constructions import gen_F, gen_G6, gen_G7, gen_Hpp, gen_J, gen_sharp1
from bimatch.graph import Bigraph
from bimatch.matching import (
    MatchCount,
    batch_count,
    count_containing_edge,
    count_max_matchings,
    count_max_matchings_oracle,
    count_via_defect_reduction,
    count_x_matchings,
    max_matching_size,
    maximum_matching,
    permanent,
)

C6 = Bigraph([[1, 1, 0], [0, 1, 1], [1, 0, 1]])


def test_max_matching_size():
    assert max_matching_size(C6) == 3
    assert max_matching_size(Bigraph([[1], [1]])) == 1
    assert max_matching_size(gen_G7()[0]) == 3


def test_maximum_matching_is_a_matching():
    mate = maximum_matching(gen_J(5, 3)[0])
    assert len(mate) == 5
    assert len(set(mate.values())) == 5


@pytest.mark.parametrize(
    "G, expected",
    [(gen_G6()[0], (3, 5)), (gen_G7()[0], (3, 11)), (gen_F(4)[0], (2, 6)), (Bigraph([[1], [1]]), (1, 2))],
)
def test_known_counts(G, expected):
    assert count_max_matchings(G) == MatchCount(*expected)
    assert count_max_matchings_oracle(G) == MatchCount(*expected)


def test_permanent_examples():
    assert permanent([[1, 1], [1, 1]]) == 2
    assert permanent([[3, 1], [3, 1]]) == 6
    assert permanent([[1, 1, 0], [0, 1, 1], [1, 0, 1]]) == 2
    assert permanent([[1, 2], [3, 4]]) == 10
    assert permanent(np.ones((6, 6), dtype=int)) == 720
    with pytest.raises(ValueError):
        permanent([[1, 2, 3]])


def test_x_matchings():
    assert count_x_matchings(Bigraph([[1, 1, 1], [1, 1, 1]])) == 6
    with pytest.raises(ValueError):
        count_x_matchings(Bigraph([[1], [1]]))


def test_construction_counts():
    assert count_max_matchings(gen_Hpp(4, 4)[0]) == MatchCount(4, 10)
    assert count_max_matchings(gen_J(4, 4)[0]) == MatchCount(4, 12)


def test_empty_graph():
    assert count_max_matchings(Bigraph([[0]])) == MatchCount(0, 1)
    assert count_max_matchings_oracle(Bigraph([[0, 0]])) == MatchCount(0, 1)
    assert MatchCount(0, 1).to_dict() == {"alpha": 0, "phi": "1"}


def test_count_containing_edge():
    assert count_containing_edge(gen_F(4)[0], 0, 0) == 3
    assert count_containing_edge(gen_F(4)[0], 0, 1) == 3
    for i, j, _ in C6.edges():
        assert count_containing_edge(C6, i, j) == 1
    G = gen_sharp1(4, 3, 2)[0]
    assert count_containing_edge(G, 2, 2) == count_max_matchings(G).count == 4
    with pytest.raises(ValueError):
        count_containing_edge(G, 0, 3)
    # each copy of x0y0 is a maximum matching by itself
    assert count_containing_edge(Bigraph([[2, 0], [1, 0]]), 0, 0) == 2


def test_big_counts_stay_exact():
    a = np.full((12, 12), 9, dtype=np.int64)
    assert count_max_matchings(Bigraph(a)).count == 479001600 * 9**12


@given(matrices(max_nx=5, max_ny=5))
def test_engines_agree_with_brute_force(a):
    expected = MatchCount(*brute_phi(a))
    assert count_max_matchings(Bigraph(a)) == expected
    assert count_max_matchings_oracle(Bigraph(a)) == expected


@given(matrices(max_nx=5, max_ny=5))
def test_defect_reduction_matches_oracle(a):
    assert count_via_defect_reduction(Bigraph(a)) == count_max_matchings_oracle(Bigraph(a))


@given(matrices(max_nx=5, max_ny=5))
def test_count_is_isomorphism_and_transpose_invariant(a):
    rng = np.random.default_rng(a.size)
    b = a[rng.permutation(a.shape[0])][:, rng.permutation(a.shape[1])]
    c = count_max_matchings(Bigraph(a))
    assert count_max_matchings(Bigraph(b)) == c
    assert count_max_matchings(Bigraph(a.T)) == c


@given(matrices(max_nx=4, max_ny=4))
def test_edge_counts_sum_to_alpha_times_phi(a):
    G = Bigraph(a)
    mc = count_max_matchings(G)
    if mc.size:
        assert sum(count_containing_edge(G, i, j) for i, j, _ in G.edges()) == mc.size * mc.count


def test_batch_count_matches_scalar():
    rng = np.random.default_rng(7)
    for nx, ny in [(1, 3), (2, 2), (3, 2), (3, 4), (4, 4)]:
        mats = rng.integers(0, 3, size=(200, nx, ny))
        mats[rng.random(mats.shape) < 0.4] = 0
        alpha, phi = batch_count(mats)
        for k in range(len(mats)):
            assert (alpha[k], phi[k]) == brute_phi(mats[k])
