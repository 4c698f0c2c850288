import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.constants import gamma, khinchine_constants, lower_constant, upper_constant
from src.errors import DomainError


def test_p_two_is_exact():
    c = khinchine_constants(2.0)
    assert c.a_p == 1.0
    assert c.b_p == 1.0
    assert c.set_elements == (1.0, 1.0, 1.0)


@pytest.mark.parametrize(
    "p, a_p, b_p",
    [
        (1.0, 2.0 ** -0.5, 1.0),
        (4.0, 1.0, 3.0 ** 0.25),
        (3.0, 1.0, math.sqrt(2.0) * (1.0 / math.sqrt(math.pi)) ** (1.0 / 3.0)),
    ],
)
def test_closed_forms(p, a_p, b_p):
    c = khinchine_constants(p)
    assert c.a_p == pytest.approx(a_p, rel=1e-12)
    assert c.b_p == pytest.approx(b_p, rel=1e-12)


def test_lower_and_upper_helpers():
    assert lower_constant(1.0) == khinchine_constants(1.0).a_p
    assert upper_constant(6.0) == khinchine_constants(6.0).b_p


@pytest.mark.parametrize("p", [0.5, 0.0, -1.0, float("nan"), float("inf")])
def test_rejects_bad_exponents(p):
    with pytest.raises(DomainError):
        khinchine_constants(p)


def test_domain_error_is_a_value_error():
    with pytest.raises(ValueError):
        khinchine_constants(0.9)


def test_gamma_matches_factorial():
    assert gamma(5.0) == pytest.approx(24.0, rel=1e-14)
    assert gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)
    with pytest.raises(DomainError):
        gamma(0.0)


@given(st.floats(min_value=1.0, max_value=50.0))
def test_constants_sandwich_one(p):
    c = khinchine_constants(p)
    assert c.a_p <= 1.0 <= c.b_p
    assert 1.0 in c.set_elements


@given(st.floats(min_value=1.0, max_value=1.99), st.floats(min_value=0.001, max_value=0.5))
def test_lower_constant_increases_below_two(p, step):
    assert lower_constant(p) <= lower_constant(min(p + step, 2.0))


def test_to_dict_keys():
    assert set(khinchine_constants(3.0).to_dict()) == {"p", "a_p", "b_p", "set_elements"}
