"""Collocation matrices, their determinants, and the shared elimination kernel.

The collocation determinant of a system at points (x_1, ..., x_n) is the
determinant of the matrix whose (i, j) entry is basis_i(x_j); the bordered
determinant appends a row of target-function values to it. All sign
decisions are scale-relative: a determinant counts as zero when its
magnitude falls below ``64 * eps * scale`` where ``scale`` is the product
of the pre-elimination row max-norms. Row scales of Vandermonde-type
matrices vary over many orders of magnitude, which makes absolute
tolerances meaningless here.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .errors import (ArgumentError, DegenerateInputError, DomainError,
                     NearSingularError, SourceEvalError)
from .systems import ChebyshevSystem

EPS = sys.float_info.epsilon

#: Multiplier on eps * scale used by every determinant zero test.
TAU_FACTOR = 64.0 * EPS

#: Default minimum point separation, as a fraction of the interval span.
MIN_SEPARATION_FACTOR = 1e-9


@dataclass(frozen=True)
class PointTuple:
    """Distinct evaluation points; ``ordered`` means strictly increasing."""

    points: tuple[float, ...]
    ordered: bool

    @classmethod
    def of(cls, pts: Union["PointTuple", Sequence[float]]) -> "PointTuple":
        if isinstance(pts, PointTuple):
            return pts
        values = tuple(float(x) for x in pts)
        if not values:
            raise ArgumentError("point tuple must not be empty")
        for x in values:
            if not math.isfinite(x):
                raise ArgumentError(f"non-finite point {x!r}")
        if len(set(values)) != len(values):
            raise DegenerateInputError(f"coincident points in {values}")
        ordered = all(a < b for a, b in zip(values, values[1:]))
        return cls(values, ordered)

    def sorted(self) -> "PointTuple":
        if self.ordered:
            return self
        return PointTuple(tuple(sorted(self.points)), True)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]


PointsLike = Union[PointTuple, Sequence[float]]


@dataclass(frozen=True)
class SignedValue:
    """A determinant value with its tolerance-aware sign and scale proxy."""

    value: float
    sign: str  # '+', '-', '0'
    scale: float

    @property
    def tau(self) -> float:
        return TAU_FACTOR * self.scale


def sign_of(value: float, scale: float) -> str:
    if abs(value) <= TAU_FACTOR * scale:
        return "0"
    return "+" if value > 0.0 else "-"


def classify_value(value: float, scale: float) -> SignedValue:
    return SignedValue(value, sign_of(value, scale), scale)


def det_and_scale(rows: Sequence[Sequence[float]]) -> tuple[float, float]:
    """Determinant by row-pivoted Gaussian elimination, plus the scale proxy.

    ``scale`` is the product of the row max-norms taken before elimination;
    it is the conditioning proxy behind every zero test in the library. The
    empty matrix has determinant 1 by convention.
    """
    n = len(rows)
    if n == 0:
        return 1.0, 1.0
    a = [list(r) for r in rows]
    scale = 1.0
    for r in a:
        if len(r) != n:
            raise ArgumentError("matrix must be square")
        scale *= max(abs(e) for e in r)
    det = 1.0
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(a[r][col]))
        if a[piv][col] == 0.0:
            return 0.0, scale
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        pivot = a[col][col]
        det *= pivot
        for r in range(col + 1, n):
            factor = a[r][col] / pivot
            if factor != 0.0:
                lower, upper = a[r], a[col]
                for c in range(col + 1, n):
                    lower[c] -= factor * upper[c]
    return det, scale


def solve_with_det(rows: Sequence[Sequence[float]], rhs: Sequence[float]
                   ) -> tuple[list[float], SignedValue]:
    """Solve a square system and report the determinant from one elimination.

    Shares the elimination (and therefore the zero tolerance) with
    :func:`det_and_scale`. Raises :class:`NearSingularError` when the
    determinant does not clear its scale-relative tolerance.
    """
    n = len(rows)
    a = [list(r) + [float(b)] for r, b in zip(rows, rhs)]
    if len(a) != n or any(len(r) != n + 1 for r in a):
        raise ArgumentError("system dimensions do not match")
    scale = 1.0
    for r in a:
        scale *= max(abs(e) for e in r[:n])
    det = 1.0
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(a[r][col]))
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        pivot = a[col][col]
        if pivot == 0.0:
            det = 0.0
            break
        det *= pivot
        for r in range(col + 1, n):
            factor = a[r][col] / pivot
            if factor != 0.0:
                lower, upper = a[r], a[col]
                for c in range(col + 1, n + 1):
                    lower[c] -= factor * upper[c]
    sv = classify_value(det, scale)
    if sv.sign == "0":
        raise NearSingularError(
            f"collocation matrix is numerically singular (|det|={abs(det):.3e} "
            f"<= tau={sv.tau:.3e})")
    x = [0.0] * n
    for i in range(n - 1, -1, -1):
        acc = a[i][n]
        for j in range(i + 1, n):
            acc -= a[i][j] * x[j]
        x[i] = acc / a[i][i]
    return x, sv


def check_points(system: ChebyshevSystem, pts: PointsLike, expected: int,
                 min_separation: Optional[float] = None) -> PointTuple:
    """Validate a point tuple against a system: size, containment, separation."""
    pts = PointTuple.of(pts)
    if len(pts) != expected:
        raise ArgumentError(f"expected {expected} points, got {len(pts)}")
    for x in pts:
        if not system.interval.contains(x):
            raise DomainError(f"point {x!r} outside {system.interval.describe()}")
    if min_separation is None:
        min_separation = MIN_SEPARATION_FACTOR * system.interval.tolerance_span
    if min_separation > 0.0:
        ordered = sorted(pts.points)
        gap = min(b - a for a, b in zip(ordered, ordered[1:])) if len(pts) > 1 else math.inf
        if gap < min_separation:
            raise DegenerateInputError(
                f"points closer than the minimum separation {min_separation:.3e}")
    return pts


def collocation_rows(system: ChebyshevSystem, pts: PointTuple) -> list[list[float]]:
    cols = [system.evaluate_basis(x) for x in pts]
    return [[cols[j][i] for j in range(len(pts))] for i in range(system.n)]


def function_row(f, pts: PointTuple) -> list[float]:
    try:
        return [float(f(x)) for x in pts]
    except SourceEvalError:
        raise
    except Exception as exc:
        raise SourceEvalError(f"target function failed at one of {pts.points}") from exc


def v_det(system: ChebyshevSystem, pts: PointsLike,
          min_separation: Optional[float] = None) -> SignedValue:
    """Collocation determinant of ``system`` at ``pts`` (one point per column)."""
    pts = check_points(system, pts, system.n, min_separation)
    value, scale = det_and_scale(collocation_rows(system, pts))
    return classify_value(value, scale)


def d_det(system: ChebyshevSystem, pts: PointsLike, f,
          min_separation: Optional[float] = None) -> SignedValue:
    """Bordered determinant: collocation rows of ``system`` plus the row of
    ``f`` values, at ``system.n + 1`` points."""
    pts = check_points(system, pts, system.n + 1, min_separation)
    rows = collocation_rows(system, pts)
    rows.append(function_row(f, pts))
    value, scale = det_and_scale(rows)
    return classify_value(value, scale)
