"""Exact phases of the Walsh, b-adic, and hybrid function systems."""

import cmath
import math
from fractions import Fraction

import pytest

from etkbound.badic import DigitVector
from etkbound.systems import (
    BADIC,
    WALSH,
    HybridSystemSpec,
    PhaseFraction,
    chi_phase,
    gamma_phase,
    phase_counter_sum,
    phase_multiset,
    walsh_phase,
    xi_eval,
    xi_phase,
)


def test_phase_fraction_normalizes_mod_one():
    assert PhaseFraction(5, 4) == PhaseFraction(1, 4)
    assert PhaseFraction(-1, 4) == PhaseFraction(3, 4)
    assert PhaseFraction(2, 4) == PhaseFraction(1, 2)


def test_phase_fraction_add_and_conjugate():
    p = PhaseFraction(1, 3) + PhaseFraction(1, 2)
    assert p.fraction == Fraction(5, 6)
    assert PhaseFraction(1, 3).conjugate().fraction == Fraction(2, 3)
    assert PhaseFraction(0, 1).conjugate() == PhaseFraction(0, 1)


def test_quarter_phases_are_exact_complex():
    assert PhaseFraction(0, 1).to_complex() == 1 + 0j
    assert PhaseFraction(1, 2).to_complex() == -1 + 0j
    assert PhaseFraction(1, 4).to_complex() == 1j
    assert PhaseFraction(3, 4).to_complex() == -1j


def test_generic_phase_matches_cmath():
    for num, den in [(1, 3), (2, 5), (5, 7)]:
        got = PhaseFraction(num, den).to_complex()
        want = cmath.exp(2j * cmath.pi * num / den)
        assert abs(got - want) < 1e-15


def test_walsh_phase_values():
    # b=3, k=2, x = 2/3: phase (2*2)/3 = 1/3 after reduction mod 1
    x = DigitVector(3, (2,))
    assert walsh_phase(2, x, 3).fraction == Fraction(1, 3)
    # k=0 is the constant function
    assert walsh_phase(0, x, 3) == PhaseFraction(0, 1)


def test_walsh_phase_is_digitwise():
    """Adding digit vectors without carry multiplies Walsh values."""
    from etkbound.badic import add_without_carry

    base, k = 3, 7
    for a in range(9):
        for b in range(9):
            u = DigitVector.from_int(a, base, precision=2)
            v = DigitVector.from_int(b, base, precision=2)
            w = add_without_carry(u, v)
            lhs = walsh_phase(k, w, base).fraction
            rhs = (walsh_phase(k, u, base) + walsh_phase(k, v, base)).fraction
            assert lhs == rhs


def test_chi_phase_character_property():
    """chi_k is a character: additive with carry in the argument."""
    from etkbound.badic import add_with_carry

    base, k = 2, 3
    for a in range(8):
        for b in range(8):
            u = DigitVector.from_int(a, base, precision=5)
            v = DigitVector.from_int(b, base, precision=5)
            w = add_with_carry(u, v)
            lhs = chi_phase(k, w, base).fraction
            rhs = (chi_phase(k, u, base) + chi_phase(k, v, base)).fraction
            assert lhs == rhs


def test_chi_phase_value():
    # k=3 in base 2: radical inverse 3/4, z = 1 + 0*2 -> phase 3/4
    z = DigitVector(2, (1, 0))
    assert chi_phase(3, z, 2).fraction == Fraction(3, 4)


def test_gamma_phase_value():
    x = DigitVector(2, (1, 0))
    assert gamma_phase(2, x, 2).fraction == Fraction(1, 4)
    assert gamma_phase(2, x, 2).to_complex() == 1j


def test_phase_depends_on_vb_digits_only():
    """Index at level t reads exactly t digits of the point."""
    base, k = 2, 3  # vb = 2
    x1 = DigitVector(base, (1, 1, 0, 0))
    x2 = DigitVector(base, (1, 1, 1, 1))
    assert gamma_phase(k, x1, base) == gamma_phase(k, DigitVector(base, (1, 1)), base)
    assert walsh_phase(k, x1, base) == walsh_phase(k, x2, base)


def test_hybrid_spec_validation():
    with pytest.raises(ValueError):
        HybridSystemSpec(((2, "fourier"),))
    with pytest.raises(ValueError):
        HybridSystemSpec(((1, WALSH),))
    with pytest.raises(ValueError):
        HybridSystemSpec(())


def test_xi_phase_is_product_of_coordinates():
    spec = HybridSystemSpec(((2, WALSH), (2, BADIC)))
    x = (DigitVector(2, (1,)), DigitVector(2, (1,)))
    # walsh: 1*1/2, badic: k=2 at z=1 -> 1/4; total 3/4
    assert xi_phase(spec, (1, 2), x).fraction == Fraction(3, 4)
    assert xi_eval(spec, (1, 2), x) == -1j


def test_xi_phase_index_zero_is_one():
    spec = HybridSystemSpec(((3, BADIC), (2, WALSH)))
    x = (DigitVector(3, (2, 1)), DigitVector(2, (1,)))
    assert xi_eval(spec, (0, 0), x) == 1 + 0j


def test_phase_counter_sum_exact_coset_zero():
    """A full coset of a cyclic phase subgroup sums to exactly zero."""
    phases = [PhaseFraction(j, 5) for j in range(5)]
    total = phase_counter_sum(phase_multiset(phases))
    assert total == 0j
    doubled = phase_counter_sum({p: 2 for p in phases})
    assert doubled == 0j


def test_phase_counter_sum_offset_coset_is_zero():
    phases = [PhaseFraction(1 + 3 * j, 9) for j in range(3)]  # coset of the order-3 subgroup
    assert phase_counter_sum(phase_multiset(phases)) == 0j


def test_phase_counter_sum_generic():
    counts = {PhaseFraction(0, 1): 2, PhaseFraction(1, 3): 1}
    got = phase_counter_sum(counts)
    want = 2 + cmath.exp(2j * cmath.pi / 3)
    assert abs(got - want) < 1e-15


def test_phase_counter_sum_quarter_exact():
    counts = {PhaseFraction(1, 4): 3, PhaseFraction(1, 2): 1}
    assert phase_counter_sum(counts) == -1 + 3j


def test_walsh_full_period_sum_vanishes():
    """Sum over one period of any nonzero Walsh index is exactly zero."""
    base, g = 3, 2
    for k in range(1, base**g):
        phases = [
            walsh_phase(k, DigitVector.from_int(n, base, precision=g), base)
            for n in range(base**g)
        ]
        assert phase_counter_sum(phase_multiset(phases)) == 0j
