"""Support-type construction for generalized convex functions.

Given n-1 interior knots, the coefficient of the last basis function is
estimated as the right-hand limit of the divided-difference map just past
the last knot, the remaining coefficients come from constrained
interpolation at the knots, and the difference between the target and the
resulting combination is checked for its alternating sign pattern: it must
not cross the combination the wrong way on any of the n knot-induced
subintervals, and must lie above it beyond the last knot. For a system of
order 2 this is the classical support line (graph never above the target);
for higher orders the combination changes sides at each interior knot.

Sign-pattern violations are data, not errors: for a target that is not
convex with respect to the system, they are exactly the evidence the
construction is designed to produce.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .convexity import (DEFAULT_ATOL, DEFAULT_RTOL, knot_exclusion,
                        require_positive)
from .determinants import MIN_SEPARATION_FACTOR, PointTuple, check_points
from .divdiff import gdd
from .errors import GeometryError, LimitDivergedError, PreconditionError, ResolutionError
from .interpolation import OmegaCombination, constrained_interpolate
from .systems import ChebyshevSystem, validate_grid

#: h0 defaults to this fraction of the span (capped by room to the right end).
H0_FACTOR = 1e-2
MAX_HALVINGS = 40

#: Tables must resolve the limit window at least this much finer than h0.
TABLE_SPACING_FACTOR = 2.0 ** -6


@dataclass(frozen=True)
class LimitDiagnostics:
    """Trace of the geometric-halving estimate of a one-sided limit."""

    h_sequence: tuple[tuple[float, float], ...]  # (h, value), h halving
    converged: bool
    estimate: float
    monotone_ok: bool


@dataclass(frozen=True)
class SegmentCheck:
    """Sign requirement and outcome on one knot-induced subinterval."""

    index: int  # 1-based, left to right
    lo: float
    hi: float
    required_sign: int  # +1: f - omega >= 0 on the segment; -1: <= 0
    points_checked: int
    violations: tuple[tuple[float, float], ...]  # (x, f(x) - omega(x))


@dataclass(frozen=True)
class SignPatternReport:
    segments: tuple[SegmentCheck, ...]
    overall: bool
    excluded: int  # grid points dropped by the knot-adjacent exclusion


@dataclass(frozen=True)
class SupportResult:
    knots: PointTuple
    omega: OmegaCombination
    c_n: LimitDiagnostics
    pattern: SignPatternReport


def _interior_knots(system: ChebyshevSystem, knots) -> PointTuple:
    if system.n < 2:
        raise PreconditionError("support construction needs a system of order >= 2")
    knots = check_points(system, knots, system.n - 1)
    if not knots.ordered:
        raise PreconditionError("knots must be strictly increasing")
    for k in knots:
        if not system.interval.interior_contains(k):
            raise PreconditionError(
                f"knot {k!r} is not interior to {system.interval.describe()}")
    return knots


def estimate_cn(system: ChebyshevSystem, f, knots,
                h0: Optional[float] = None, max_halvings: int = MAX_HALVINGS,
                atol: float = DEFAULT_ATOL,
                rtol: float = DEFAULT_RTOL) -> LimitDiagnostics:
    """Estimate the right-hand limit of the divided-difference map at the
    last knot by geometric halving.

    Evaluates the divided difference at (knots, last knot + h) for
    h = h0 / 2^k and stops once consecutive values agree within
    ``atol + rtol * |value|``. The h trace is kept for auditability;
    ``monotone_ok`` records whether the values were nonincreasing as h
    shrank (expected for a convex target), with slack widened by the
    conditioning of each evaluation so that cancellation noise near tiny h
    does not read as a violation.
    """
    knots = _interior_knots(system, knots)
    span = system.interval.tolerance_span
    x_last = knots[-1]
    room = system.interval.hi - x_last
    if math.isfinite(room):
        default_h0 = min(H0_FACTOR * span, 0.5 * room)
    else:
        default_h0 = H0_FACTOR * span
    h0 = default_h0 if h0 is None else float(h0)
    if h0 <= MIN_SEPARATION_FACTOR * span:
        raise GeometryError(f"h0={h0:.3e} leaves no room above the last knot")
    if getattr(f, "is_table", False):
        spacing = f.max_spacing_within(x_last, x_last + h0)
        if spacing > TABLE_SPACING_FACTOR * h0:
            raise ResolutionError(
                f"table spacing {spacing:.3e} in the limit window exceeds "
                f"{TABLE_SPACING_FACTOR * h0:.3e}")

    trace: list[tuple[float, float]] = []
    conditionings: list[float] = []
    estimate = None
    for k in range(max_halvings + 1):
        h = h0 * 2.0 ** -k
        x = x_last + h
        if x == x_last or not system.interval.contains(x):
            break
        dd = gdd(system, knots.points + (x,), f, min_separation=0.0)
        trace.append((h, dd.value))
        conditionings.append(dd.conditioning)
        if len(trace) >= 2:
            prev = trace[-2][1]
            if abs(dd.value - prev) <= atol + rtol * abs(dd.value):
                estimate = dd.value
                break
    monotone = _nonincreasing(trace, conditionings, atol, rtol)
    if estimate is None:
        diagnostics = LimitDiagnostics(tuple(trace), False,
                                       trace[-1][1] if trace else math.nan,
                                       monotone)
        raise LimitDivergedError(
            f"no convergence after {max_halvings} halvings from h0={h0:.3e}",
            diagnostics)
    return LimitDiagnostics(tuple(trace), True, estimate, monotone)


def _nonincreasing(trace: Sequence[tuple[float, float]],
                   conditionings: Sequence[float],
                   atol: float, rtol: float) -> bool:
    eps = 2.0 ** -52
    for i in range(1, len(trace)):
        v0, v1 = trace[i - 1][1], trace[i][1]
        mag = max(abs(v0), abs(v1))
        noise = 8.0 * eps * mag / max(min(conditionings[i - 1], conditionings[i]), eps)
        if v1 > v0 + atol + rtol * mag + noise:
            return False
    return True


def verify_sign_pattern(system: ChebyshevSystem, f, omega: OmegaCombination,
                        knots, grid: Sequence[float],
                        atol: float = DEFAULT_ATOL,
                        rtol: float = DEFAULT_RTOL) -> SignPatternReport:
    """Check the alternating sign pattern of f - omega across the knot-induced
    subintervals.

    Segment k of n carries the requirement sign (-1)^(n-k+1) for k < n and
    +1 for the last (rightmost) segment; for n = 2 that means f - omega >= 0
    on both sides, the classical support inequality. Grid points within the
    knot-adjacent exclusion are skipped: the difference vanishes at the
    knots, where signs are noise.
    """
    n = system.n
    knots = _interior_knots(system, knots)
    grid = validate_grid(system, grid, 1)
    delta = knot_exclusion(system)
    boundaries = knots.points
    per_segment: list[list[tuple[float, float]]] = [[] for _ in range(n)]
    excluded = 0
    for x in grid:
        if min(abs(x - k) for k in boundaries) <= delta:
            excluded += 1
            continue
        seg = sum(1 for k in boundaries if x > k)  # 0..n-1
        per_segment[seg].append((x, f(x) - omega(x)))
    segments = []
    overall = True
    lo_edge = system.interval.lo
    for seg in range(n):
        required = 1 if seg == n - 1 else (1 if (n - seg) % 2 == 0 else -1)
        lo = lo_edge if seg == 0 else boundaries[seg - 1]
        hi = system.interval.hi if seg == n - 1 else boundaries[seg]
        violations = []
        for x, diff in per_segment[seg]:
            if required * diff < -(atol + rtol * abs(f(x))):
                violations.append((x, diff))
        if violations:
            overall = False
        segments.append(SegmentCheck(seg + 1, lo, hi, required,
                                     len(per_segment[seg]), tuple(violations)))
    return SignPatternReport(tuple(segments), overall, excluded)


def build_support(system: ChebyshevSystem, f, knots, grid: Sequence[float],
                  atol: float = DEFAULT_ATOL,
                  rtol: float = DEFAULT_RTOL) -> SupportResult:
    """Limit estimate, constrained interpolation, sign-pattern check, chained.

    Requires (opportunistically) that the system and its truncation are
    positive on the grid. Pattern violations are reported, not raised: they
    are evidence that the target is not convex with respect to the system.
    """
    n = system.n
    knots = _interior_knots(system, knots)
    grid = validate_grid(system, grid, 2)
    require_positive(system, grid)
    if n >= 2:
        require_positive(system.truncate(n - 1), grid, "truncated system")
    limit = estimate_cn(system, f, knots, atol=atol, rtol=rtol)
    omega = constrained_interpolate(system, knots, f, limit.estimate)
    pattern = verify_sign_pattern(system, f, omega, knots, grid,
                                  atol=atol, rtol=rtol)
    return SupportResult(knots, omega, limit, pattern)
