import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.errors import DimensionMismatchError, DomainError
from src.functional import VectorTuple
from src.hanner import (
    HannerMode,
    Verdict,
    falsify_hanner,
    half_sign_patterns,
    hanner_gap,
    hlawka_check,
    hlawka_search,
)
from src.norms import NormSpec


def test_half_sign_patterns():
    signs = half_sign_patterns(3)
    assert signs.shape == (4, 3)
    assert np.all(signs[:, 0] == 1.0)
    assert len({tuple(row) for row in signs}) == 4


def test_l1_coordinate_pair():
    report = hanner_gap(NormSpec.lp(1, 2), VectorTuple(np.eye(2)), 1.0, mode=HannerMode.TYPE)
    assert (report.lhs, report.rhs, report.gap) == (8.0, 4.0, 4.0)
    assert report.verdict is Verdict.VIOLATED_TYPE


def test_euclidean_gap_vanishes(rng):
    for _ in range(20):
        n, d = rng.integers(1, 6), rng.integers(1, 4)
        report = hanner_gap(NormSpec.lp(2, d), VectorTuple(rng.standard_normal((n, d))), 2.0)
        assert abs(report.gap) <= 1e-9 * report.lhs


def test_gap_validation():
    with pytest.raises(DomainError):
        hanner_gap(NormSpec.lp(2, 2), VectorTuple(np.eye(2)), 0.0)
    with pytest.raises(DimensionMismatchError):
        hanner_gap(NormSpec.lp(2, 3), VectorTuple(np.eye(2)), 2.0)
    with pytest.raises(DomainError):
        hanner_gap(NormSpec.lp(2, 1), VectorTuple(np.ones((21, 1))), 2.0)


def test_falsifier_finds_l1_type_violation_first():
    found = falsify_hanner(NormSpec.lp(1, 2), 1.0, 2, 2, HannerMode.TYPE, trials=10, seed=0)
    assert found is not None
    assert found.trial == 0
    assert np.linalg.norm(found.witness.rows) == pytest.approx(1.0)
    assert found.relative_violation == pytest.approx(0.5)


@pytest.mark.parametrize(
    "r, mode",
    [(1.0, HannerMode.COTYPE), (1.5, HannerMode.COTYPE), (2.0, HannerMode.COTYPE),
     (2.0, HannerMode.TYPE), (3.0, HannerMode.TYPE), (4.0, HannerMode.TYPE)],
)
def test_lp_exponent_is_consistent(r, mode):
    assert falsify_hanner(NormSpec.lp(r, 3), r, 3, 3, mode, trials=500, seed=11) is None


def test_falsifier_validation():
    with pytest.raises(DomainError):
        falsify_hanner(NormSpec.lp(1, 2), 1.0, 2, 2, HannerMode.TYPE, trials=0, seed=0)
    with pytest.raises(DimensionMismatchError):
        falsify_hanner(NormSpec.lp(1, 2), 1.0, 2, 3, HannerMode.TYPE, trials=1, seed=0)


def test_hlawka_examples():
    norm = NormSpec.lp(2, 2)
    report = hlawka_check(norm, [1.0, 0.0], [0.0, 1.0], [-1.0, -1.0])
    assert report.holds
    with pytest.raises(DimensionMismatchError):
        hlawka_check(norm, [1.0], [0.0], [1.0])


@pytest.mark.parametrize("r", [1.0, 2.0])
def test_hlawka_search_finds_nothing(r):
    assert hlawka_search(NormSpec.lp(r, 4), trials=1000, seed=2) is None


@settings(max_examples=50)
@given(st.lists(st.floats(min_value=-5, max_value=5), min_size=9, max_size=9))
def test_hlawka_triple_in_l1_is_cotype_consistent(values):
    triple = np.array(values).reshape(3, 3)
    norm = NormSpec.lp(1, 3)
    assert hlawka_check(norm, *triple).holds
    report = hanner_gap(norm, VectorTuple(triple), 1.0, mode=HannerMode.COTYPE)
    assert report.verdict is Verdict.COTYPE_CONSISTENT


def test_hlawka_rejects_ragged_points():
    with pytest.raises(DimensionMismatchError):
        hlawka_check(NormSpec.lp(1, 2), [1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0])
    with pytest.raises(DimensionMismatchError):
        hlawka_check(NormSpec.lp(1, 3), [1.0, 0.0], [1.0, 0.0], [0.0, 1.0])


triples = st.lists(st.floats(min_value=-5, max_value=5), min_size=6, max_size=6)
exponents = st.sampled_from([1.0, 1.5, 2.0, 3.0])


@settings(max_examples=50)
@given(triples, exponents, exponents)
def test_gap_is_invariant_under_the_sign_pattern_group(values, r, q):
    rows = np.array(values).reshape(3, 2)
    norm = NormSpec.lp(r, 2)
    base = hanner_gap(norm, VectorTuple(rows), q)
    tolerance = 1e-9 * max(base.lhs, base.rhs, 1e-12)
    permuted = hanner_gap(norm, VectorTuple(rows[[2, 0, 1]]), q)
    flipped_rows = rows.copy()
    flipped_rows[1] *= -1.0
    flipped = hanner_gap(norm, VectorTuple(flipped_rows), q)
    assert permuted.gap == pytest.approx(base.gap, abs=tolerance)
    assert flipped.gap == pytest.approx(base.gap, abs=tolerance)


@settings(max_examples=50)
@given(triples, exponents, exponents, st.floats(min_value=0.1, max_value=10.0))
def test_gap_scales_with_the_q_th_power(values, r, q, scale):
    rows = np.array(values).reshape(3, 2)
    norm = NormSpec.lp(r, 2)
    base = hanner_gap(norm, VectorTuple(rows), q)
    scaled = hanner_gap(norm, VectorTuple(scale * rows), q)
    tolerance = 1e-9 * scale ** q * max(base.lhs, base.rhs, 1e-12)
    assert scaled.gap == pytest.approx(scale ** q * base.gap, abs=tolerance)
