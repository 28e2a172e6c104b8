"""Randomized and exhaustive invariant suites behind the verify command.

Each suite returns a SuiteResult with the number of checks run and a list of
failure descriptions; an empty list is a pass.  The domination sweep is the
heavyweight one: seeded random configurations, bound versus exact oracle,
with the closed-form and truncation cross-checks folded into each trial.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .badic import DEFAULT_BUDGET, enumerate_delta
from .bounds import (
    EXTREME,
    STAR,
    _phase_numerators,
    cb_constant,
    corollary_bound,
    epsilon_fraction,
    etk_bound,
    rho_vec,
    weight_sum,
)
from .fourier import (
    Elint,
    elint_contains,
    elint_fourier_coeff,
    elint_partition,
    fc_upper_bound,
    partition_inner_product,
    reconstruct_indicator,
)
from .oracle import DOMINATION_SLACK, DominationReport, domination_check, star_discrepancy_exact
from .sequences import (
    DigitalConfig,
    GeneratorMatrix,
    HaltonConfig,
    PointSet,
    VdcConfig,
    generate_points,
    hybrid_points,
)
from .systems import BADIC, WALSH, HybridSystemSpec, xi_phase

__all__ = [
    "SUITES",
    "SuiteResult",
    "check_fc_bounds",
    "check_fourier",
    "check_orthonormality",
    "check_reconstruction",
    "check_weights",
    "domination_sweep",
    "full_period_report",
    "run_suites",
]


@dataclass
class SuiteResult:
    name: str
    checks: int
    failures: list[str] = field(default_factory=list)
    summary: str = ""

    @property
    def ok(self) -> bool:
        return not self.failures


def _spec(pairs) -> HybridSystemSpec:
    return HybridSystemSpec(tuple(pairs))


# (spec, g) menus: bases 2 and 3 with both tags and mixed-tag pairs, index
# boxes up to 81 cells, kept small enough for exhaustive pairwise checks.
_ORTHO_CONFIGS = (
    (_spec(((2, WALSH),)), (6,)),
    (_spec(((2, BADIC),)), (5,)),
    (_spec(((3, WALSH),)), (4,)),
    (_spec(((3, BADIC),)), (3,)),
    (_spec(((2, WALSH), (3, BADIC))), (2, 2)),
    (_spec(((2, BADIC), (3, WALSH))), (3, 1)),
    (_spec(((2, WALSH), (2, BADIC))), (3, 3)),
    (_spec(((3, BADIC), (3, BADIC))), (2, 2)),
)

_FOURIER_CONFIGS = (
    (_spec(((2, WALSH),)), (4,)),
    (_spec(((2, BADIC),)), (5,)),
    (_spec(((3, BADIC),)), (3,)),
    (_spec(((5, WALSH),)), (2,)),
    (_spec(((2, WALSH), (3, BADIC))), (2, 1)),
    (_spec(((2, BADIC), (2, WALSH))), (2, 2)),
    (_spec(((3, WALSH), (2, BADIC))), (1, 2)),
)

_RECONSTRUCTION_CONFIGS = (
    (_spec(((2, WALSH),)), (2,)),
    (_spec(((2, BADIC),)), (2,)),
    (_spec(((3, WALSH),)), (1,)),
    (_spec(((3, BADIC),)), (1,)),
    (_spec(((2, WALSH), (2, BADIC))), (1, 1)),
    (_spec(((3, BADIC), (2, WALSH))), (1, 1)),
)


def check_orthonormality(tol: float = 1e-12) -> SuiteResult:
    """Pairwise inner products over the tiling equal the identity matrix."""
    result = SuiteResult("orthonormality", 0)
    for spec, g in _ORTHO_CONFIGS:
        indices = list(enumerate_delta(spec.bases, g))
        anchors = [e.anchor_digits() for e in elint_partition(spec.bases, g)]
        table = np.array(
            [[xi_phase(spec, k, a).to_complex() for a in anchors] for k in indices]
        )
        gram = table @ table.conj().T / len(anchors)
        err = np.abs(gram - np.eye(len(indices))).max()
        result.checks += len(indices) ** 2
        if err > tol:
            result.failures.append(f"{spec.bases}/{spec.tags} g={g}: gram error {err:.3e}")
        # spot-check the exact-phase route against the matrix route
        k, l = indices[0], indices[-1]
        exact = partition_inner_product(spec, g, k, l)
        want = 1.0 if k == l else 0.0
        result.checks += 1
        if abs(exact - want) > tol:
            result.failures.append(f"{spec.bases}/{spec.tags} g={g}: ip(k0,klast) = {exact}")
    return result


def check_fourier(tol: float = 1e-12) -> SuiteResult:
    """Coefficient formula equals direct integration; zero outside the box exactly."""
    result = SuiteResult("fourier", 0)
    for spec, g in _FOURIER_CONFIGS:
        g_fine = tuple(gi + 1 for gi in g)
        fine_measure = 1.0
        for b, gi in zip(spec.bases, g_fine):
            fine_measure /= b**gi
        inside = [b**gi for b, gi in zip(spec.bases, g)]
        for e in elint_partition(spec.bases, g):
            for k in enumerate_delta(spec.bases, g_fine):
                coeff = elint_fourier_coeff(e, k, spec)
                direct = 0j
                for refinement in enumerate_delta(spec.bases, tuple(1 for _ in g)):
                    sub = Elint(
                        spec.bases,
                        g_fine,
                        tuple(c + j * m for c, j, m in zip(e.c, refinement, inside)),
                    )
                    direct += xi_phase(spec, k, sub.anchor_digits()).conjugate().to_complex()
                direct *= fine_measure
                result.checks += 1
                if any(ki >= m for ki, m in zip(k, inside)):
                    if coeff != 0:
                        result.failures.append(f"{spec.bases} g={g} k={k}: nonzero outside box")
                    if abs(direct) > tol:
                        result.failures.append(f"{spec.bases} g={g} k={k}: integral {direct}")
                elif abs(coeff - direct) > tol:
                    result.failures.append(
                        f"{spec.bases} g={g} c={e.c} k={k}: {coeff} vs {direct}"
                    )
    return result


def check_reconstruction(tol: float = 1e-10) -> SuiteResult:
    """Truncated series of an elint indicator reproduces membership on the fine grid."""
    result = SuiteResult("reconstruction", 0)
    for spec, g in _RECONSTRUCTION_CONFIGS:
        g_fine = tuple(gi + 1 for gi in g)
        probes = [cell.anchor_digits() for cell in elint_partition(spec.bases, g_fine)]
        for e in elint_partition(spec.bases, g):
            for x in probes:
                got = reconstruct_indicator(e, spec, x)
                want = 1.0 if elint_contains(e, x) else 0.0
                result.checks += 1
                if abs(got - want) > tol:
                    result.failures.append(
                        f"{spec.bases}/{spec.tags} g={g} c={e.c}: {got} vs {want}"
                    )
    return result


def check_fc_bounds(bases=(2, 3, 5), depth: int = 4, tol: float = 1e-12) -> SuiteResult:
    """|anchored coefficient| <= closed-form estimate on the full rational grid.

    Every beta = a/b^depth sits on a cell boundary of the depth-resolution
    tiling and every index below b^depth is constant on those cells, so the
    whole (k, beta) table is one cumulative sum of a phase-value matrix.
    """
    result = SuiteResult("fc-bounds", 0)
    for base in bases:
        grid = base**depth
        cells = sorted(elint_partition((base,), (depth,)), key=lambda e: e.lower[0])
        anchors = [e.anchor_digits()[0] for e in cells]
        limits = np.array([fc_upper_bound(k, base) for k in range(1, grid)])
        for tag in (WALSH, BADIC):
            table = _phase_numerators(anchors, base, tag, depth)
            values = np.exp(-2j * np.pi * table[1:] / grid)
            coeffs = np.cumsum(values, axis=1) / grid
            over = np.abs(coeffs) - limits[:, None]
            result.checks += coeffs.size
            for ki, ai in np.argwhere(over > tol):
                result.failures.append(
                    f"b={base} {tag} k={ki + 1} beta={ai + 1}/{grid}: "
                    f"excess {over[ki, ai]:.3e}"
                )
    return result


def check_weights(tol: float = 1e-10) -> SuiteResult:
    """Closed-form weight totals match explicit sums; C(b) stays under its bound."""
    result = SuiteResult("weights", 0)
    domains = [
        ((2,), (3,)),
        ((3,), (3,)),
        ((4,), (2,)),
        ((5,), (3,)),
        ((2, 3), (2, 3)),
        ((4, 5), (2, 2)),
        ((5, 5), (3, 3)),
    ]
    for bases, g in domains:
        for star in (False, True):
            explicit = math.fsum(
                rho_vec(k, bases, star=star) for k in enumerate_delta(bases, g)
            )
            closed = weight_sum(bases, g, star=star)
            result.checks += 1
            if abs(explicit - closed) > tol:
                result.failures.append(
                    f"bases={bases} g={g} star={star}: {explicit} vs {closed}"
                )
    for b in range(2, 101):
        result.checks += 1
        if not cb_constant(b) < (2.0 / math.pi) * math.log(b) + 0.4:
            result.failures.append(f"C({b}) breaks the logarithmic bound")
    # the corollary constants must dominate the per-coordinate weight factors
    for b in range(2, 101):
        result.checks += 1
        if 2.0 * cb_constant(b) > 2.43 * math.log(b) or cb_constant(b) > 1.22 * math.log(b):
            result.failures.append(f"C({b}) exceeds the corollary constants")
    return result


_SWEEP_BASES = (2, 3, 5)
_RESOLUTION_CAP = 32  # per-coordinate index range b^g stays at or below this
_DIGITAL_PRECISION = 8


def _max_g(base: int) -> int:
    g = 1
    while base ** (g + 1) <= _RESOLUTION_CAP:
        g += 1
    return g


def _draw_trial(rng: random.Random, variant: str):
    s_max = 2 if variant == EXTREME else 3
    s = rng.randint(1, s_max)
    n_points = rng.randint(1, 48 if variant == EXTREME else 64)
    kinds = ["halton", "digital"]
    if s == 1:
        kinds.append("vdc")
    else:
        kinds.append("hybrid")
    kind = rng.choice(kinds)
    tags = tuple(rng.choice((WALSH, BADIC)) for _ in range(s))
    if kind == "vdc":
        base = rng.choice(_SWEEP_BASES)
        bases = (base,)
        points_for = lambda spec: generate_points(VdcConfig(base), n_points)
    elif kind == "halton":
        bases = tuple(rng.choice(_SWEEP_BASES) for _ in range(s))
        points_for = lambda spec: generate_points(HaltonConfig(bases), n_points)
    elif kind == "digital":
        base = rng.choice(_SWEEP_BASES)
        bases = (base,) * s
        mats = tuple(
            GeneratorMatrix.random(base, _DIGITAL_PRECISION, rng) for _ in range(s)
        )
        cfg = DigitalConfig(base, mats)
        points_for = lambda spec: generate_points(cfg, n_points)
    else:  # hybrid: digital/vdc part on WALSH slots, Halton part on BADIC slots
        n_walsh = tags.count(WALSH)
        n_badic = s - n_walsh
        walsh_base = rng.choice(_SWEEP_BASES)
        if n_walsh == 0:
            walsh_part = None
        elif n_walsh == 1 and rng.random() < 0.5:
            walsh_part = VdcConfig(walsh_base)
        else:
            walsh_part = DigitalConfig(
                walsh_base,
                tuple(
                    GeneratorMatrix.random(walsh_base, _DIGITAL_PRECISION, rng)
                    for _ in range(n_walsh)
                ),
            )
        badic_bases = tuple(rng.choice(_SWEEP_BASES) for _ in range(n_badic))
        badic_part = HaltonConfig(badic_bases) if n_badic else None
        walsh_iter = iter(walsh_part.bases if walsh_part else ())
        badic_iter = iter(badic_bases)
        bases = tuple(next(walsh_iter) if t == WALSH else next(badic_iter) for t in tags)
        points_for = lambda spec: hybrid_points(spec, walsh_part, badic_part, n_points)
    spec = HybridSystemSpec.from_tags(bases, tags)
    g = tuple(rng.randint(1, _max_g(b)) for b in bases)
    points = points_for(spec)
    label = f"{kind} bases={bases} tags={''.join(t[0] for t in tags)} g={g} N={n_points}"
    return spec, g, points, label


def domination_sweep(
    variant: str,
    trials: int = 100,
    seed: int = 1,
    budget: int | None = DEFAULT_BUDGET,
) -> SuiteResult:
    """Seeded random configurations: bound >= exact discrepancy, every trial.

    Each trial also verifies the exact truncation-term bound (epsilon at most
    2 s delta, star half that) and that the closed-form corollary evaluated at
    B = max |S_N| dominates the streamed bound.
    """
    result = SuiteResult(f"domination-{variant}", 0, summary=f"seed={seed}")
    rng = random.Random(seed)
    worst = math.inf
    for _ in range(trials):
        spec, g, points, label = _draw_trial(rng, variant)
        rep: DominationReport = domination_check(spec, g, points, variant, budget=budget)
        result.checks += 1
        worst = min(worst, rep.margin)
        if not rep.ok:
            result.failures.append(
                f"{label}: bound {rep.bound.total:.12f} < exact {rep.discrepancy.value:.12f}"
            )
        star = variant == STAR
        eps = epsilon_fraction(spec.bases, g, star=star)
        delta = max(Fraction(1, b**gi) for b, gi in zip(spec.bases, g))
        result.checks += 1
        if eps > (1 if star else 2) * spec.s * delta:
            result.failures.append(f"{label}: truncation term above the s*delta bound")
        closed = corollary_bound(rep.bound.max_abs_sum, spec.bases, g, variant)
        result.checks += 1
        if closed < rep.bound.total - 1e-12:
            result.failures.append(
                f"{label}: corollary {closed:.12f} < streamed {rep.bound.total:.12f}"
            )
    result.summary = f"seed={seed}, worst margin {worst:.3e}"
    return result


def full_period_report(base: int, g: int, tag: str):
    """Full-period van der Corput bound and oracle: the exactness end-to-end case."""
    spec = HybridSystemSpec.single(base, tag)
    points = generate_points(VdcConfig(base), base**g)
    rep = etk_bound(spec, (g,), points, STAR, per_index=True)
    disc = star_discrepancy_exact(points)
    return rep, disc


SUITES = ("orthonormality", "fourier", "fc-bounds", "weights", "domination", "all")


def run_suites(
    name: str,
    trials: int = 100,
    seed: int = 1,
    budget: int | None = DEFAULT_BUDGET,
) -> list[SuiteResult]:
    """Run one named suite (or all of them) and collect the results."""
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}, expected one of {SUITES}")
    out: list[SuiteResult] = []
    if name in ("orthonormality", "all"):
        out.append(check_orthonormality())
    if name in ("fourier", "all"):
        out.append(check_fourier())
        out.append(check_reconstruction())
    if name in ("fc-bounds", "all"):
        out.append(check_fc_bounds())
    if name in ("weights", "all"):
        out.append(check_weights())
    if name in ("domination", "all"):
        out.append(domination_sweep(EXTREME, trials=trials, seed=seed, budget=budget))
        out.append(domination_sweep(STAR, trials=trials, seed=seed + 1, budget=budget))
    return out
