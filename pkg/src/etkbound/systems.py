"""Hybrid Walsh / b-adic function systems with exact rational phases.

Every system function here has modulus-one values e(phi) for an exact
rational phase phi, so evaluation is split in two: phase computation in
Fraction arithmetic (always exact) and a single conversion to complex at the
end.  Full character sums then cancel exactly instead of accumulating float
noise.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .badic import DigitVector, check_base, radical_inverse, vb

__all__ = [
    "BADIC",
    "WALSH",
    "HybridSystemSpec",
    "PhaseFraction",
    "chi_phase",
    "gamma_phase",
    "phase_counter_sum",
    "walsh_phase",
    "xi_eval",
    "xi_phase",
]

WALSH = "walsh"
BADIC = "badic"
_TAGS = (WALSH, BADIC)

# e(a/4) for a = 0..3; quarter phases are the only ones whose cos/sin are
# exact floats, so they get snapped instead of rounded.
_QUARTER = {0: 1 + 0j, 1: 1j, 2: -1 + 0j, 3: -1j}


@dataclass(frozen=True)
class PhaseFraction:
    """Exact phase a/M reduced mod 1: 0 <= numerator < modulus, lowest terms."""

    numerator: int
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        fr = Fraction(self.numerator, self.modulus) % 1
        object.__setattr__(self, "numerator", fr.numerator)
        object.__setattr__(self, "modulus", fr.denominator)

    @classmethod
    def from_fraction(cls, fr: Fraction) -> "PhaseFraction":
        fr = Fraction(fr) % 1
        return cls(fr.numerator, fr.denominator)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.numerator, self.modulus)

    def __add__(self, other: "PhaseFraction") -> "PhaseFraction":
        return PhaseFraction.from_fraction(self.fraction + other.fraction)

    def conjugate(self) -> "PhaseFraction":
        return PhaseFraction.from_fraction(-self.fraction)

    def to_complex(self) -> complex:
        """e(a/M) = exp(2 pi i a/M)."""
        if self.modulus in (1, 2, 4):
            return _QUARTER[self.numerator * (4 // self.modulus)]
        t = 2.0 * math.pi * self.numerator / self.modulus
        return complex(math.cos(t), math.sin(t))


ZERO_PHASE = PhaseFraction(0, 1)


@dataclass(frozen=True)
class HybridSystemSpec:
    """Per-coordinate (base, tag) choices; tags may interleave arbitrarily."""

    coordinates: tuple[tuple[int, str], ...]

    def __post_init__(self) -> None:
        coords = tuple((b, t) for b, t in self.coordinates)
        object.__setattr__(self, "coordinates", coords)
        if not coords:
            raise ValueError("a system needs at least one coordinate")
        for b, tag in coords:
            check_base(b)
            if tag not in _TAGS:
                raise ValueError(f"unknown tag {tag!r}, expected one of {_TAGS}")

    @classmethod
    def single(cls, base: int, tag: str) -> "HybridSystemSpec":
        return cls(((base, tag),))

    @classmethod
    def from_tags(cls, bases: Iterable[int], tags: Iterable[str]) -> "HybridSystemSpec":
        bases = tuple(bases)
        tags = tuple(tags)
        if len(bases) != len(tags):
            raise ValueError(f"{len(bases)} bases vs {len(tags)} tags")
        return cls(tuple(zip(bases, tags)))

    @property
    def s(self) -> int:
        return len(self.coordinates)

    @property
    def bases(self) -> tuple[int, ...]:
        return tuple(b for b, _ in self.coordinates)

    @property
    def tags(self) -> tuple[str, ...]:
        return tuple(t for _, t in self.coordinates)


def _check_coordinate(k: int, x: DigitVector, base: int) -> None:
    check_base(base)
    if k < 0:
        raise ValueError(f"expected a nonnegative index, got {k}")
    if x.base != base:
        raise ValueError(f"base mismatch: digit vector is base {x.base}, system is base {base}")


def walsh_phase(k: int, x: DigitVector, base: int) -> PhaseFraction:
    """Phase of the k-th Walsh function at x: (sum_j k_j x_j)/b mod 1.

    Only digits j < vb(k) contribute, so the modulus divides b.
    """
    _check_coordinate(k, x, base)
    total = 0
    j = 0
    while k:
        k, kj = divmod(k, base)
        total += kj * x.digit(j)
        j += 1
    return PhaseFraction(total % base, base)


def chi_phase(k: int, z: DigitVector, base: int) -> PhaseFraction:
    """Phase of the k-th additive character at the b-adic integer z.

    phi_b(k) * (z_0 + z_1 b + ...) mod 1, reading only the first vb(k)
    digits; the modulus divides b^vb(k).
    """
    _check_coordinate(k, z, base)
    v = vb(k, base)
    return PhaseFraction.from_fraction(radical_inverse(k, base) * z.as_integer(v))


def gamma_phase(k: int, x: DigitVector, base: int) -> PhaseFraction:
    """Phase of the k-th b-adic function at the point x.

    The b-adic system is the character system pulled back through the regular
    digit expansion, so this is chi_phase on x's digit vector.
    """
    return chi_phase(k, x, base)


def xi_phase(
    spec: HybridSystemSpec, k: tuple[int, ...], x: tuple[DigitVector, ...]
) -> PhaseFraction:
    """Total phase of the hybrid function: exact sum of per-coordinate phases."""
    if len(k) != spec.s or len(x) != spec.s:
        raise ValueError(f"expected {spec.s} coordinates, got k of {len(k)} and x of {len(x)}")
    total = Fraction(0)
    for ki, xi, (base, tag) in zip(k, x, spec.coordinates):
        phase = walsh_phase(ki, xi, base) if tag == WALSH else gamma_phase(ki, xi, base)
        total += phase.fraction
    return PhaseFraction.from_fraction(total)


def xi_eval(spec: HybridSystemSpec, k: tuple[int, ...], x: tuple[DigitVector, ...]) -> complex:
    """Value of the hybrid system function: one complex conversion of the exact phase."""
    return xi_phase(spec, k, x).to_complex()


def phase_counter_sum(counts: Mapping[PhaseFraction, int]) -> complex:
    """Sum of count * e(phase) over a phase multiset, exact where structure allows.

    A multiset whose phases form one full coset {phi_0 + j/d : j < d}, d >= 2,
    with equal counts sums to exactly zero; full character sums have that
    shape, so they return complex 0.0 with no float residue.  Everything else
    falls back to compensated (exactly rounded) float summation.
    """
    items = [(p.fraction, n) for p, n in counts.items() if n]
    if not items:
        return 0j
    d = len(items)
    if d >= 2:
        phases = {fr for fr, _ in items}
        step = Fraction(1, d)
        counts_equal = len({n for _, n in items}) == 1
        if counts_equal and all((fr + step) % 1 in phases for fr in phases):
            return 0j
    if all(fr.denominator in (1, 2, 4) for fr, _ in items):
        # quarter phases have exact unit values, so this sum has no rounding
        return complex(sum(n * PhaseFraction.from_fraction(fr).to_complex() for fr, n in items))
    re = math.fsum(n * math.cos(2.0 * math.pi * float(fr)) for fr, n in items)
    im = math.fsum(n * math.sin(2.0 * math.pi * float(fr)) for fr, n in items)
    return complex(re, im)


def phase_multiset(phases: Iterable[PhaseFraction]) -> Counter:
    """Group a stream of exact phases by value."""
    return Counter(phases)
