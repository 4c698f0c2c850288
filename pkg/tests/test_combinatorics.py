import itertools
import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from src.combinatorics import (
    SubsetRatioInput,
    lemma1_bounds,
    random_sweep,
    revolving_door,
    subset_power_ratio,
    verify_lemma1,
)
from src.errors import BudgetExceededError, DomainError


@pytest.mark.parametrize("n, k", [(4, 2), (5, 3), (6, 1), (6, 6), (7, 4)])
def test_revolving_door_visits_every_subset_once(n, k):
    subsets = list(revolving_door(n, k))
    assert sorted(subsets) == sorted(itertools.combinations(range(n), k))
    for a, b in zip(subsets, subsets[1:]):
        assert len(set(a) ^ set(b)) == 2


@pytest.mark.parametrize(
    "x, k, alpha, expected",
    [
        ((1.0, 0.0, 0.0), 2, 2.0, 2.0 / 3.0),
        ((1.0, 1.0, 1.0, 1.0), 2, 3.0, 0.125),
        ((0.3, 0.9, 0.1), 2, 1.0, 2.0 / 3.0),
        ((0.3, 0.0, 0.1), 1, 0.0, 1.0),
    ],
)
def test_ratio_examples(x, k, alpha, expected):
    assert subset_power_ratio(SubsetRatioInput(x, k, alpha)) == pytest.approx(expected, rel=1e-12)


def test_bounds():
    assert lemma1_bounds(4, 2, 2.0) == (0.25, 0.5)
    assert lemma1_bounds(4, 2, 0.5) == pytest.approx((0.5, 0.5 ** 0.5))
    with pytest.raises(DomainError):
        lemma1_bounds(4, 5, 1.0)


@pytest.mark.parametrize(
    "x, k, alpha",
    [((), 1, 1.0), ((1.0, -0.5), 1, 1.0), ((1.0, 1.0), 0, 1.0), ((1.0, 1.0), 1, -1.0)],
)
def test_input_validation(x, k, alpha):
    with pytest.raises(DomainError):
        SubsetRatioInput(x, k, alpha)


def test_zero_weights_rejected():
    with pytest.raises(DomainError):
        subset_power_ratio(SubsetRatioInput((0.0, 0.0), 1, 1.0))


def test_size_limit():
    with pytest.raises(BudgetExceededError):
        subset_power_ratio(SubsetRatioInput((1.0,) * 25, 12, 2.0))


def test_sharpness_witnesses_attain_the_bounds():
    for n in range(1, 8):
        for k in range(1, n + 1):
            spike = verify_lemma1(SubsetRatioInput((1.0,) + (0.0,) * (n - 1), k, 2.0))
            flat = verify_lemma1(SubsetRatioInput((1.0,) * n, k, 2.0))
            assert spike.ratio == pytest.approx(spike.hi, rel=1e-12)
            assert flat.ratio == pytest.approx(flat.lo, rel=1e-12)


@given(
    st.lists(st.floats(min_value=0.0, max_value=1.0), min_size=1, max_size=7),
    st.integers(min_value=1, max_value=7),
    st.sampled_from([0.0, 0.5, 1.0, 2.0, 3.0]),
)
def test_bounds_hold_on_random_weights(x, k, alpha):
    assume(k <= len(x) and sum(x) > 1e-6)
    assert verify_lemma1(SubsetRatioInput(tuple(x), k, alpha)).holds


def test_random_sweep_is_seeded():
    first = [r.to_dict() for r in random_sweep(5, 20, seed=3)]
    second = [r.to_dict() for r in random_sweep(5, 20, seed=3)]
    assert first == second
    assert all(row["holds"] for row in first)
    assert len(first[0]["x_hash"]) == 12


def test_ratio_keeps_small_weights_next_to_huge_ones():
    # a running sum would absorb the unit weights into 1e16
    x = (1e16, 1.0, 1.0)
    expected = (1e8 + 2.0) / math.sqrt(1e16 + 2.0) / 3.0
    assert subset_power_ratio(SubsetRatioInput(x, 1, 0.5)) == pytest.approx(expected, rel=1e-12)


def test_ratio_with_mixed_magnitudes_matches_direct_sums():
    x = (1.0, 1e-9, 3e8, 1e-9, 2.0, 5e15, 1.0, 7.0)
    total = math.fsum(x)
    for k in (1, 3):
        direct = math.fsum(
            (math.fsum(x[i] for i in subset) / total) ** 0.5 for subset in itertools.combinations(range(8), k)
        ) / math.comb(8, k)
        assert subset_power_ratio(SubsetRatioInput(x, k, 0.5)) == pytest.approx(direct, rel=1e-14)


weights = st.lists(st.one_of(st.just(0.0), st.floats(min_value=1e-6, max_value=1.0)), min_size=1, max_size=6)
alphas = st.sampled_from([0.0, 0.5, 1.0, 2.0, 3.0])


@given(weights, st.integers(min_value=1, max_value=6), alphas, st.floats(min_value=1e-3, max_value=1e3))
def test_ratio_is_scale_invariant(x, k, alpha, scale):
    assume(k <= len(x) and sum(x) > 1e-6)
    base = subset_power_ratio(SubsetRatioInput(tuple(x), k, alpha))
    scaled = subset_power_ratio(SubsetRatioInput(tuple(scale * value for value in x), k, alpha))
    assert scaled == pytest.approx(base, rel=1e-12)


@given(weights, st.integers(min_value=1, max_value=6), alphas)
def test_ratio_is_permutation_symmetric(x, k, alpha):
    assume(k <= len(x) and sum(x) > 1e-6)
    forward = subset_power_ratio(SubsetRatioInput(tuple(x), k, alpha))
    backward = subset_power_ratio(SubsetRatioInput(tuple(reversed(x)), k, alpha))
    assert backward == pytest.approx(forward, rel=1e-12)


@given(weights, st.integers(min_value=1, max_value=6))
def test_ratio_at_alpha_one_is_k_over_n(x, k):
    assume(k <= len(x) and sum(x) > 1e-6)
    assert subset_power_ratio(SubsetRatioInput(tuple(x), k, 1.0)) == pytest.approx(k / len(x), rel=1e-12)
