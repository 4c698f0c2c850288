import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.distributions import (
    SymmetricAtoms,
    envelope_upper,
    f_norms,
    rademacher,
    random_step_law,
    superlevel_reduction,
    theorem1_l2_constants,
    theorem1_lower_constant,
    theorem1_upper_constant,
    two_valued_constants,
)
from src.errors import DomainError, PreconditionError, SpecParseError


def test_from_spec_sorts_levels():
    f = SymmetricAtoms.from_spec("atoms:1,1/4;2,1/8")
    assert f.atoms == ((2.0, 0.125), (1.0, 0.25))
    assert f.zero_mass == pytest.approx(0.25)
    assert SymmetricAtoms.from_spec("rademacher") == rademacher()


@pytest.mark.parametrize("text", ["atoms:2", "atoms:1,0.6", "atoms:-1,0.1", "levels:1,0.1", "atoms:1,x"])
def test_from_spec_rejects(text):
    with pytest.raises(SpecParseError):
        SymmetricAtoms.from_spec(text)


def test_constructor_invariants():
    with pytest.raises(DomainError):
        SymmetricAtoms(((1.0, 0.1), (2.0, 0.1)))
    with pytest.raises(DomainError):
        SymmetricAtoms.from_pairs([(1.0, 0.1), (1.0, 0.2)])


def test_serialization(two_atom_law):
    assert SymmetricAtoms.from_spec(two_atom_law.to_spec()) == two_atom_law
    assert SymmetricAtoms.from_dict(two_atom_law.to_dict()) == two_atom_law


def test_support_and_moments():
    values, weights = rademacher().support()
    assert sorted(values) == [-1.0, 1.0]
    assert weights.sum() == 1.0
    assert rademacher().moment(2.0) == 1.0
    assert rademacher().scaled(0).is_zero


def test_f_norms(two_atom_law):
    assert f_norms(two_atom_law) == pytest.approx((0.75, 2.0, 0.75))


def test_superlevel_reduction(two_atom_law):
    top = superlevel_reduction(two_atom_law, 0.125)
    assert top.atoms == ((2.0, 0.125),)
    whole = superlevel_reduction(two_atom_law, 0.375)
    assert whole.atoms[0] == pytest.approx((1.0, 0.375))
    with pytest.raises(DomainError):
        superlevel_reduction(two_atom_law, 0.5)


def test_envelope(two_atom_law):
    assert envelope_upper(two_atom_law).atoms == ((2.0, 0.375),)


def test_lower_constant_single_atom_p_equals_q_one():
    # the prefactor min{1, (2s)^(-1/2)} is 1 on s <= 1/4
    constant, s = theorem1_lower_constant(SymmetricAtoms(((2.0, 0.25),)), 1.0, 1.0)
    assert constant == pytest.approx(2.0 ** -0.5, rel=1e-12)
    assert s == 0.25


def test_rademacher_constants_in_hilbert_space():
    constant, _ = theorem1_lower_constant(rademacher(), 2.0, 2.0)
    assert constant == pytest.approx(1.0, rel=1e-12)
    assert theorem1_upper_constant(rademacher(), 2.0, 2.0) == pytest.approx(1.0, rel=1e-12)


def test_constant_sides_need_ordered_exponents():
    with pytest.raises(DomainError):
        theorem1_lower_constant(rademacher(), 1.5, 2.0)
    with pytest.raises(DomainError):
        theorem1_upper_constant(rademacher(), 3.0, 2.0)
    with pytest.raises(DomainError):
        theorem1_lower_constant(SymmetricAtoms(), 2.0, 1.0)


def test_lower_constant_two_atoms():
    # with beta = -1/2 the stationary point s = 0.09 is a minimum, the top atom wins
    f = SymmetricAtoms(((10.0, 0.01), (1.0, 0.49)))
    constant, s = theorem1_lower_constant(f, 2.0, 2.0)
    assert s == pytest.approx(0.01, rel=1e-12)
    assert constant == pytest.approx(math.sqrt(2.0), rel=1e-12)


def test_l2_constants_variants():
    f = SymmetricAtoms(((1.0, 0.125),))
    lower, upper = theorem1_l2_constants(f, 1.0)
    max_lower, max_upper = theorem1_l2_constants(f, 1.0, paper_variant=True)
    assert lower == pytest.approx(2.0 ** -0.5 * 0.25, rel=1e-12)
    assert max_lower == pytest.approx(2.0 * lower, rel=1e-12)
    assert upper == max_upper == pytest.approx(0.5, rel=1e-12)


def test_two_valued_constants():
    lower, upper = two_valued_constants(0.25, 2.0, 2.0, 2.0)
    assert lower == pytest.approx(math.sqrt(0.5))
    assert upper == pytest.approx(math.sqrt(0.5))
    with pytest.raises(PreconditionError):
        two_valued_constants(0.25, 1.0, 2.0, 2.0)
    with pytest.raises(DomainError):
        two_valued_constants(0.75, 2.0, 2.0, 2.0)


@given(st.integers(min_value=0, max_value=2 ** 32))
def test_random_step_laws_are_valid(seed):
    f = random_step_law(np.random.default_rng(seed))
    assert 1 <= len(f.atoms) <= 3
    assert 0 < 2.0 * f.total_mass <= 1.0 + 1e-12
    assert all(a > b for (a, _), (b, _) in zip(f.atoms, f.atoms[1:]))


laws = st.integers(min_value=0, max_value=2 ** 32).map(lambda seed: random_step_law(np.random.default_rng(seed)))
exponents = st.sampled_from([1.0, 1.5, 2.0, 3.0, 6.0])


@given(laws, exponents, st.floats(min_value=0.1, max_value=10.0))
def test_constants_are_one_homogeneous_in_levels(f, p, k):
    lower, _ = theorem1_lower_constant(f, p, 1.0)
    scaled_lower, _ = theorem1_lower_constant(f.scaled(k), p, 1.0)
    assert scaled_lower == pytest.approx(k * lower, rel=1e-12)
    scaled_upper = theorem1_upper_constant(f.scaled(k), p, p)
    assert scaled_upper == pytest.approx(k * theorem1_upper_constant(f, p, p), rel=1e-12)


@given(laws, exponents)
def test_cotype_constant_never_exceeds_type_constant(f, p):
    lower, _ = theorem1_lower_constant(f, p, p)
    assert lower <= theorem1_upper_constant(f, p, p) * (1 + 1e-12)


@given(laws, st.floats(min_value=0.01, max_value=1.0))
def test_superlevel_reduction_preserves_restricted_mass(f, fraction):
    s = fraction * f.total_mass
    remaining, integral = s, 0.0
    for level, mass in f.atoms:
        taken = min(mass, remaining)
        integral += level * taken
        remaining -= taken
    ((height, reduced_mass),) = superlevel_reduction(f, s).atoms
    assert reduced_mass == pytest.approx(s, rel=1e-12)
    assert height * reduced_mass == pytest.approx(integral, rel=1e-12)


@given(laws)
def test_envelope_dominates_every_level(f):
    ((level, mass),) = envelope_upper(f).atoms
    assert all(level >= a for a, _ in f.atoms)
    assert mass == pytest.approx(f.total_mass, rel=1e-12)
