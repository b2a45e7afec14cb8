import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_closest_pairs
from speclink.closest_pairs import k_closest_pairs, k_closest_pairs_excluding


def test_points_on_a_line():
    res = k_closest_pairs(np.array([[0.0], [1.0], [3.0], [7.0]]), 2)
    assert list(res) == [(0, 1, 1.0), (1, 2, 2.0)]


def test_two_points():
    res = k_closest_pairs(np.array([[0.0, 0.0], [3.0, 4.0]]), 5)
    assert list(res) == [(0, 1, 5.0)]


def test_single_point_gives_nothing():
    assert len(k_closest_pairs(np.zeros((1, 3)), 3)) == 0


def test_rejects_nonpositive_k():
    with pytest.raises(ValueError):
        k_closest_pairs(np.zeros((4, 2)), 0)


@pytest.mark.parametrize("n,d,k", [(500, 8, 100), (2000, 8, 5000), (300, 2, 40000), (1000, 3, 1)])
def test_matches_brute_force(rng, n, d, k):
    P = rng.standard_normal((n, d))
    res = k_closest_pairs(P, k)
    pairs, sq = brute_closest_pairs(P, k)
    assert res.pairs() == pairs
    assert np.allclose(res.sqdist, sq, rtol=1e-12)


def test_duplicate_points(rng):
    P = np.repeat(rng.standard_normal((100, 4)), 2, axis=0)
    res = k_closest_pairs(P, 150)
    pairs, _ = brute_closest_pairs(P, 150)
    assert res.pairs() == pairs
    assert np.all(res.sqdist[:100] == 0)


def test_integer_grid_ties():
    xs, ys = np.meshgrid(np.arange(12), np.arange(12))
    P = np.column_stack([xs.ravel(), ys.ravel()]).astype(float)
    res = k_closest_pairs(P, 300)
    pairs, _ = brute_closest_pairs(P, 300)
    assert res.pairs() == pairs


def test_exclusion_example():
    P = np.array([[0.0], [1.0], [3.0], [7.0]])
    res = k_closest_pairs_excluding(P, 2, [(0, 1)])
    assert list(res) == [(1, 2, 2.0), (0, 2, 3.0)]


def test_exclusion_of_unordered_pairs():
    P = np.array([[0.0], [1.0], [3.0], [7.0]])
    res = k_closest_pairs_excluding(P, 1, [(1, 0), (2, 1)])
    assert list(res) == [(0, 2, 3.0)]


def test_exclusion_matches_brute_force(rng):
    P = rng.standard_normal((300, 4))
    base = k_closest_pairs(P, 3000)
    chosen = rng.choice(len(base), size=1000, replace=False)
    excluded = [(int(base.i[c]), int(base.j[c])) for c in chosen]
    res = k_closest_pairs_excluding(P, 50, excluded)
    pairs, sq = brute_closest_pairs(P, 50, excluded)
    assert res.pairs() == pairs
    assert np.allclose(res.sqdist, sq)


def test_exclusion_can_exhaust_all_pairs():
    P = np.array([[0.0], [1.0], [2.0]])
    res = k_closest_pairs_excluding(P, 5, [(0, 1), (1, 2)])
    assert res.pairs() == [(0, 2)]


def test_permutation_equivariance(rng):
    P = rng.standard_normal((400, 5))
    perm = rng.permutation(400)
    a = k_closest_pairs(P, 200)
    b = k_closest_pairs(P[perm], 200)
    mapped = {tuple(sorted((int(perm[i]), int(perm[j])))) for i, j in b.pairs()}
    assert mapped == set(a.pairs())


def test_scale_equivariance(rng):
    P = rng.standard_normal((400, 5))
    a = k_closest_pairs(P, 200)
    b = k_closest_pairs(P * 4.0, 200)
    assert a.pairs() == b.pairs()
    assert np.allclose(b.sqdist, 16 * a.sqdist)


@settings(max_examples=40, deadline=None)
@given(
    st.integers(2, 120),
    st.integers(1, 4),
    st.integers(1, 500),
    st.integers(0, 2**32 - 1),
    st.booleans(),
)
def test_random_clouds_against_brute_force(n, d, k, seed, rounded):
    P = np.random.default_rng(seed).standard_normal((n, d))
    if rounded:
        P = np.round(P)  # many exact ties
    res = k_closest_pairs(P, k)
    pairs, _ = brute_closest_pairs(P, k)
    assert res.pairs() == pairs


def test_exclusion_of_all_nearest_pairs(rng):
    # the excluded pairs crowd the low end, so the radius has to grow past them
    P = rng.standard_normal((1500, 3))
    near = k_closest_pairs(P, 4000)
    excluded = list(zip(near.i.tolist(), near.j.tolist()))
    res = k_closest_pairs_excluding(P, 300, excluded)
    pairs, _ = brute_closest_pairs(P, 4300)
    assert res.pairs() == pairs[4000:]


def test_low_intrinsic_dimension(rng):
    # points on a line inside R^8: pair counts grow like r, not r^8
    t = rng.standard_normal(1500)
    P = np.outer(t, rng.standard_normal(8))
    res = k_closest_pairs(P, 2000)
    pairs, _ = brute_closest_pairs(P, 2000)
    assert res.pairs() == pairs


def test_tiny_k_on_large_cloud(rng):
    from scipy.spatial import cKDTree

    P = rng.standard_normal((20000, 3))
    k = 10
    res = k_closest_pairs(P, k)
    # the k closest pairs all lie inside the k-nearest-neighbor lists
    dist, idx = cKDTree(P).query(P, k + 1)
    cand = {}
    for a in range(len(P)):
        for b, d in zip(idx[a, 1:], dist[a, 1:]):
            cand[(min(a, b), max(a, b))] = d
    ref = sorted(cand, key=lambda p: (cand[p], p))[:k]
    assert res.pairs() == ref


def test_many_duplicates_beyond_small_n(rng):
    P = np.repeat(rng.integers(0, 5, size=(40, 2)).astype(float), 5, axis=0)
    res = k_closest_pairs(P, 600)
    pairs, _ = brute_closest_pairs(P, 600)
    assert res.pairs() == pairs


def test_exclusion_rejects_out_of_range():
    with pytest.raises(ValueError):
        k_closest_pairs_excluding(np.zeros((3, 1)), 1, [(0, 5)])
