"""Exact brute-force discrepancy of finite point sets.

The supremum over boxes is attained, or approached one-sidedly, at corners of
the critical grid built from the point coordinates, so both discrepancy
variants reduce to finite enumerations.  Counting runs in numpy integers for
speed; every near-maximal candidate is then re-evaluated in Fraction
arithmetic, so the reported value is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .badic import DEFAULT_BUDGET
from .bounds import BoundReport, EXTREME, STAR, _check_variant, etk_bound
from .sequences import PointSet
from .systems import HybridSystemSpec

__all__ = [
    "DOMINATION_SLACK",
    "BoxWitness",
    "CapExceededError",
    "DiscrepancyResult",
    "DominationReport",
    "domination_check",
    "extreme_discrepancy_exact",
    "star_discrepancy_exact",
]

# Float maxima are trusted only up to this slack; everything within it is
# re-checked exactly.  The same slack defines domination failure.
DOMINATION_SLACK = 1e-9

_STAR_CAPS = {1: 256, 2: 256, 3: 64}
_EXTREME_CAPS = {1: 64, 2: 64}


class CapExceededError(RuntimeError):
    """The point set is too large for exact enumeration at this dimension."""


@dataclass(frozen=True)
class BoxWitness:
    """Corner description of a maximizing box; closure tells inner evaluation
    ("inner", supremum attained) from one-sided limit ("outer")."""

    lower: tuple[Fraction, ...]
    upper: tuple[Fraction, ...]
    closure: str


@dataclass(frozen=True)
class DiscrepancyResult:
    variant: str
    value: float
    exact: Fraction
    witness: BoxWitness
    attained: bool


def _columns(points: PointSet) -> list[list[Fraction]]:
    return [[pt[i].value for pt in points.points] for i in range(points.s)]


def _check_cap(points: PointSet, caps: dict[int, int], variant: str, max_points: int | None) -> None:
    s, n = points.s, points.n_points
    if n < 1:
        raise ValueError("empty point set")
    if s not in caps:
        raise CapExceededError(f"{variant} oracle supports s <= {max(caps)}, got s = {s}")
    cap = caps[s] if max_points is None else max_points
    if n > cap:
        raise CapExceededError(f"{n} points exceed the s={s} {variant} oracle cap of {cap}")


def star_discrepancy_exact(points: PointSet, max_points: int | None = None) -> DiscrepancyResult:
    """Exact star discrepancy: anchored boxes [0, v).

    Per corner of the critical grid (distinct coordinate values plus 1) both
    the strict count (the box [0,v) itself) and the boundary-inclusive count
    (the limit from just above v) are evaluated.
    """
    _check_cap(points, _STAR_CAPS, STAR, max_points)
    n = points.n_points
    cols = _columns(points)
    grids = [sorted(set(col) | {Fraction(1)}) for col in cols]
    strict_m, leq_m = [], []
    for col, grid in zip(cols, grids):
        pos = {v: j for j, v in enumerate(grid)}
        ranks = np.array([pos[v] for v in col], dtype=np.int32)
        idx = np.arange(len(grid), dtype=np.int32)[:, None]
        strict_m.append((ranks[None, :] < idx).astype(np.int32))
        leq_m.append((ranks[None, :] <= idx).astype(np.int32))
    counts = {
        "strict": _joint_counts(strict_m),
        "leq": _joint_counts(leq_m),
    }
    vols = _volume_tensor(grids)
    best = None
    for closure, count in counts.items():
        vals = np.abs(count / n - vols)
        cutoff = float(vals.max()) - DOMINATION_SLACK
        for idx in np.argwhere(vals >= cutoff):
            corner = tuple(grid[j] for grid, j in zip(grids, idx))
            vol = Fraction(1)
            for v in corner:
                vol *= v
            exact = abs(Fraction(int(count[tuple(idx)]), n) - vol)
            strict_count = int(counts["strict"][tuple(idx)])
            attained = closure == "strict" or int(count[tuple(idx)]) == strict_count
            key = (exact, attained)
            if best is None or key > best[0]:
                best = (key, corner, closure, attained)
    (exact, _), corner, closure, attained = best
    witness = BoxWitness(
        lower=(Fraction(0),) * points.s,
        upper=corner,
        closure="inner" if closure == "strict" else "outer",
    )
    return DiscrepancyResult(STAR, float(exact), exact, witness, attained)


def _joint_counts(members: list[np.ndarray]) -> np.ndarray:
    """Corner-count tensor from per-coordinate membership matrices (grid x N)."""
    if len(members) == 1:
        return members[0].sum(axis=1)
    if len(members) == 2:
        return members[0] @ members[1].T
    if len(members) == 3:
        return np.einsum("an,bn,cn->abc", *members)
    raise CapExceededError(f"joint counting supports s <= 3, got s = {len(members)}")


def _volume_tensor(grids: list[list[Fraction]]) -> np.ndarray:
    axes = [np.array([float(v) for v in grid]) for grid in grids]
    if len(axes) == 1:
        return axes[0]
    if len(axes) == 2:
        return np.multiply.outer(axes[0], axes[1])
    return np.einsum("a,b,c->abc", *axes)


def extreme_discrepancy_exact(points: PointSet, max_points: int | None = None) -> DiscrepancyResult:
    """Exact extreme discrepancy: arbitrary boxes [u, v).

    Grid-pair enumeration with, per box, the all-closed [u,v] and all-open
    (u,v) counts: |count/N - vol| is convex in the count and any mixed
    per-axis boundary choice lies between those two, so the pair of extremes
    dominates every boundary variant; both are one-sided limits of real boxes.
    """
    _check_cap(points, _EXTREME_CAPS, EXTREME, max_points)
    n = points.n_points
    cols = _columns(points)
    grids = [sorted(set(col) | {Fraction(0), Fraction(1)}) for col in cols]
    pair_idx, closed_m, open_m, lengths = [], [], [], []
    for col, grid in zip(cols, grids):
        pos = {v: j for j, v in enumerate(grid)}
        ranks = np.array([pos[v] for v in col], dtype=np.int32)
        pairs = [(a, c) for a in range(len(grid)) for c in range(a + 1, len(grid))]
        lo = np.array([a for a, _ in pairs], dtype=np.int32)[:, None]
        hi = np.array([c for _, c in pairs], dtype=np.int32)[:, None]
        closed_m.append(((ranks[None, :] >= lo) & (ranks[None, :] <= hi)).astype(np.float32))
        open_m.append(((ranks[None, :] > lo) & (ranks[None, :] < hi)).astype(np.float32))
        pair_idx.append(pairs)
        lengths.append(np.array([float(grid[c] - grid[a]) for a, c in pairs]))
    if points.s == 1:
        counts = {
            "closed": closed_m[0].sum(axis=1),
            "open": open_m[0].sum(axis=1),
        }
        vols = lengths[0]
    else:
        counts = {
            "closed": np.rint(closed_m[0] @ closed_m[1].T),
            "open": np.rint(open_m[0] @ open_m[1].T),
        }
        vols = np.multiply.outer(lengths[0], lengths[1])
    cands = []
    for count in counts.values():
        vals = np.abs(count / n - vols)
        cutoff = float(vals.max()) - DOMINATION_SLACK
        for idx in np.argwhere(vals >= cutoff):
            box = tuple(
                (grids[i][pair_idx[i][j][0]], grids[i][pair_idx[i][j][1]])
                for i, j in enumerate(idx)
            )
            vol = Fraction(1)
            for lo_v, hi_v in box:
                vol *= hi_v - lo_v
            c_here = int(count[tuple(idx)])
            cands.append((abs(Fraction(c_here, n) - vol), box, c_here))
    exact = max(val for val, _, _ in cands)
    # the point-level scan runs only on exact maximizers, stopping at the
    # first genuinely attained half-open box
    box, attained = None, False
    for val, bx, c_here in cands:
        if val != exact:
            continue
        if box is None:
            box = bx
        if _half_open_count(cols, bx) == c_here:
            box, attained = bx, True
            break
    witness = BoxWitness(
        lower=tuple(lo for lo, _ in box),
        upper=tuple(hi for _, hi in box),
        closure="inner" if attained else "outer",
    )
    return DiscrepancyResult(EXTREME, float(exact), exact, witness, attained)


def _half_open_count(cols: list[list[Fraction]], box: list[tuple[Fraction, Fraction]]) -> int:
    """Exact number of points in the half-open box prod [lo, hi)."""
    n = len(cols[0])
    total = 0
    for row in range(n):
        if all(lo <= col[row] < hi for col, (lo, hi) in zip(cols, box)):
            total += 1
    return total


@dataclass(frozen=True)
class DominationReport:
    """One bound-vs-truth comparison; ok means margin >= -DOMINATION_SLACK."""

    bound: BoundReport
    discrepancy: DiscrepancyResult
    margin: float
    ok: bool


def domination_check(
    spec: HybridSystemSpec,
    g: tuple[int, ...],
    points: PointSet,
    variant: str = EXTREME,
    *,
    budget: int | None = DEFAULT_BUDGET,
    max_points: int | None = None,
) -> DominationReport:
    """Evaluate the streamed bound and the exact discrepancy, and compare.

    The inequality guarantees bound >= discrepancy; margin is bound minus
    truth and only float summation noise may push it below zero.
    """
    _check_variant(variant)
    report = etk_bound(spec, g, points, variant, budget=budget)
    oracle_fn = star_discrepancy_exact if variant == STAR else extreme_discrepancy_exact
    disc = oracle_fn(points, max_points=max_points)
    margin = report.total - disc.value
    return DominationReport(report, disc, margin, ok=margin >= -DOMINATION_SLACK)
