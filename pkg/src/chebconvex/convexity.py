"""Grid-sampled certification of higher-order convexity with respect to a
positive Chebyshev system.

Four routes, deliberately independent so they can cross-check each other:

* ``theoremA``   - nonnegativity of the bordered determinant over ordered
  (n+1)-tuples drawn from the grid;
* ``corollary1`` - the sliding-window inequality between the divided
  differences of the two length-n windows of each (n+1)-tuple, each window
  evaluated by the determinant ratio;
* ``theorem2``   - monotonicity of the last-argument divided-difference map
  for a fixed knot tuple;
* ``definition`` - the alternating sign pattern of the difference between
  the target and its n-point interpolant.

Every verdict is certified-on-sample only: a grid check is necessary
evidence, never a proof on the continuum.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Optional, Sequence

from .determinants import PointTuple, check_points, classify_value, det_and_scale
from .divdiff import gdd
from .errors import NearSingularError, PreconditionError
from .interpolation import interpolate
from .sampling import DEFAULT_BUDGET, DEFAULT_SEED, ordered_index_tuples
from .systems import ChebyshevSystem, classify_on_grid, validate_grid

DEFAULT_ATOL = 1e-10
DEFAULT_RTOL = 1e-8

#: Fraction of the span excluded around knots in sign-pattern checks.
KNOT_EXCLUSION_FACTOR = 1e-4

CERTIFIED = "certified-on-sample"
VIOLATED = "violated"


@dataclass(frozen=True)
class ConvexityCertificate:
    """Sampled convexity verdict with the extremal quantity and its witness."""

    method: str
    verdict: str
    tuples_checked: int
    min_value: float
    witness: Optional[PointTuple]
    witness_value: Optional[float]
    atol: float
    rtol: float
    seed: Optional[int]
    skipped: int = 0
    linear_table: bool = False


@dataclass(frozen=True)
class MonotonicityReport:
    """Scan of the last-argument divided-difference map over a grid."""

    knots: PointTuple
    scan: tuple[tuple[float, float], ...]
    violations: tuple[tuple[tuple[float, float], tuple[float, float]], ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def require_positive(system: ChebyshevSystem, grid: Sequence[float],
                     label: str = "system") -> None:
    """Opportunistic positivity check over contiguous grid windows only."""
    result = classify_on_grid(system, grid, windows_only=True)
    if result.verdict != "positive":
        raise PreconditionError(
            f"{label} {system.describe()} is not positive on the grid: "
            f"verdict {result.verdict}, witness {result.witness}")


def knot_exclusion(system: ChebyshevSystem) -> float:
    return KNOT_EXCLUSION_FACTOR * system.interval.tolerance_span


def certify_theorem_a(system: ChebyshevSystem, f, grid: Sequence[float],
                      budget: int = DEFAULT_BUDGET, seed: int = DEFAULT_SEED,
                      atol: float = DEFAULT_ATOL,
                      rtol: float = DEFAULT_RTOL) -> ConvexityCertificate:
    """Certify via signs of the bordered determinant over ordered (n+1)-tuples.

    A tuple violates when its determinant falls below ``-(atol + rtol *
    scale)`` at that tuple's own scale. The reported minimum and witness are
    selected by value with lexicographic tie-breaking, so the outcome does
    not depend on enumeration order.
    """
    n = system.n
    grid = validate_grid(system, grid, n + 1)
    require_positive(system, grid)
    cols = [system.evaluate_basis(x) for x in grid]
    fvals = [f(x) for x in grid]
    best: Optional[tuple[float, tuple[int, ...]]] = None
    violated: Optional[tuple[float, tuple[int, ...]]] = None
    tuples = ordered_index_tuples(len(grid), n + 1, budget=budget, seed=seed)
    for t in tuples:
        rows = [[cols[j][i] for j in t] for i in range(n)]
        rows.append([fvals[j] for j in t])
        value, scale = det_and_scale(rows)
        key = (value, t)
        if best is None or key < best:
            best = key
        if value < -(atol + rtol * scale) and (violated is None or key < violated):
            violated = key
    min_value, _ = best
    if violated is not None:
        value, t = violated
        witness = PointTuple.of([grid[j] for j in t])
        return ConvexityCertificate("theoremA", VIOLATED, len(tuples), min_value,
                                    witness, value, atol, rtol, seed,
                                    linear_table=_used_linear(f))
    return ConvexityCertificate("theoremA", CERTIFIED, len(tuples), min_value,
                                None, None, atol, rtol, seed,
                                linear_table=_used_linear(f))


def certify_corollary1(system: ChebyshevSystem, f, grid: Sequence[float],
                       budget: int = DEFAULT_BUDGET, seed: int = DEFAULT_SEED,
                       atol: float = DEFAULT_ATOL,
                       rtol: float = DEFAULT_RTOL) -> ConvexityCertificate:
    """Certify via the sliding-window divided-difference inequality.

    For each ordered (n+1)-tuple the divided difference of the upper window
    must not fall below the lower window's beyond tolerance. Windows whose
    collocation determinant degenerates are skipped and counted.
    """
    n = system.n
    grid = validate_grid(system, grid, n + 1)
    require_positive(system, grid)
    if n >= 2:
        require_positive(system.truncate(n - 1), grid, "truncated system")
    cols = [system.evaluate_basis(x) for x in grid]
    fvals = [f(x) for x in grid]

    memo: dict[tuple[int, ...], Optional[float]] = {}

    def window_value(ix: tuple[int, ...]) -> Optional[float]:
        if ix in memo:
            return memo[ix]
        den_rows = [[cols[j][i] for j in ix] for i in range(n)]
        den, den_scale = det_and_scale(den_rows)
        if classify_value(den, den_scale).sign == "0":
            memo[ix] = None
            return None
        num_rows = [[cols[j][i] for j in ix] for i in range(n - 1)]
        num_rows.append([fvals[j] for j in ix])
        num, _ = det_and_scale(num_rows)
        memo[ix] = num / den
        return memo[ix]

    best: Optional[tuple[float, tuple[int, ...]]] = None
    violated: Optional[tuple[float, tuple[int, ...]]] = None
    skipped = 0
    tuples = ordered_index_tuples(len(grid), n + 1, budget=budget, seed=seed)
    for t in tuples:
        lo = window_value(t[:n])
        hi = window_value(t[1:])
        if lo is None or hi is None:
            skipped += 1
            continue
        diff = hi - lo
        key = (diff, t)
        if best is None or key < best:
            best = key
        if diff < -(atol + rtol * max(abs(hi), abs(lo))) and \
                (violated is None or key < violated):
            violated = key
    checked = len(tuples) - skipped
    if best is None:
        raise NearSingularError("every window degenerated; nothing was certified")
    min_value, _ = best
    if violated is not None:
        diff, t = violated
        witness = PointTuple.of([grid[j] for j in t])
        return ConvexityCertificate("corollary1", VIOLATED, checked, min_value,
                                    witness, diff, atol, rtol, seed, skipped,
                                    linear_table=_used_linear(f))
    return ConvexityCertificate("corollary1", CERTIFIED, checked, min_value,
                                None, None, atol, rtol, seed, skipped,
                                linear_table=_used_linear(f))


def scan_theorem2(system: ChebyshevSystem, f, knots, grid: Sequence[float],
                  atol: float = DEFAULT_ATOL,
                  rtol: float = DEFAULT_RTOL) -> MonotonicityReport:
    """Scan x -> divided difference at (knots, x) and report monotonicity breaks.

    Knots must be strictly increasing interior points; grid points within
    the knot-exclusion distance are dropped from the scan. The points of
    each evaluation tuple are assembled in sorted order, which leaves the
    value unchanged by symmetry.
    """
    n = system.n
    if n < 2:
        raise PreconditionError("the scan needs a system of order >= 2")
    knots = check_points(system, knots, n - 1)
    if not knots.ordered:
        raise PreconditionError("knots must be strictly increasing")
    for k in knots:
        if not system.interval.interior_contains(k):
            raise PreconditionError(f"knot {k!r} is not interior to "
                                    f"{system.interval.describe()}")
    grid = validate_grid(system, grid, 1)
    delta = knot_exclusion(system)
    scan: list[tuple[float, float]] = []
    for x in grid:
        if min(abs(x - k) for k in knots) <= delta:
            continue
        pts = tuple(sorted(knots.points + (x,)))
        scan.append((x, gdd(system, pts, f).value))
    violations = []
    for (x0, v0), (x1, v1) in zip(scan, scan[1:]):
        if v1 - v0 < -(atol + rtol * max(abs(v0), abs(v1))):
            violations.append(((x0, v0), (x1, v1)))
    return MonotonicityReport(knots, tuple(scan), tuple(violations))


def verify_definition(system: ChebyshevSystem, f, nodes, grid: Sequence[float],
                      atol: float = DEFAULT_ATOL,
                      rtol: float = DEFAULT_RTOL) -> ConvexityCertificate:
    """Check the alternating sign pattern of f minus its n-point interpolant.

    With nodes x_1 < ... < x_n the difference must satisfy, region by
    region (grid points within the knot-exclusion distance are skipped):
    sign (-1)^n left of x_1, then alternate across [x_i, x_(i+1)], ending
    nonnegative right of x_n. The minimum of the signed slack and its
    worst point are reported.
    """
    n = system.n
    nodes = check_points(system, nodes, n)
    if not nodes.ordered:
        raise PreconditionError("nodes must be strictly increasing")
    grid = validate_grid(system, grid, 1)
    omega = interpolate(system, nodes, [f(x) for x in nodes])
    delta = knot_exclusion(system)
    best: Optional[tuple[float, float]] = None  # (slack, x)
    violated: Optional[tuple[float, float]] = None
    checked = 0
    for x in grid:
        if min(abs(x - k) for k in nodes) <= delta:
            continue
        region = bisect.bisect_left(nodes.points, x)
        sign = -1.0 if (n + region) % 2 else 1.0
        slack = sign * (f(x) - omega(x))
        checked += 1
        key = (slack, x)
        if best is None or key < best:
            best = key
        if slack < -(atol + rtol * abs(f(x))) and (violated is None or key < violated):
            violated = key
    min_value = best[0] if best is not None else 0.0
    if violated is not None:
        slack, x = violated
        return ConvexityCertificate("definition", VIOLATED, checked, min_value,
                                    PointTuple.of([x]), slack, atol, rtol, None,
                                    linear_table=_used_linear(f))
    return ConvexityCertificate("definition", CERTIFIED, checked, min_value,
                                None, None, atol, rtol, None,
                                linear_table=_used_linear(f))


def _used_linear(f) -> bool:
    return bool(getattr(f, "uses_linear_interpolation", False))
