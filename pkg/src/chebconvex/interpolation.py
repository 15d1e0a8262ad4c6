"""Interpolation by linear combinations of a system's basis functions.

A Chebyshev system of n functions interpolates any n values at any n
distinct points uniquely. The constrained variant fixes the coefficient of
the last basis function and interpolates the target at n-1 knots with the
remaining n-1 coefficients; the pointwise difference between the target
and that combination then has a closed determinant form, whose residual is
exposed by :func:`lemma1_residual` as a built-in self-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .determinants import (PointsLike, PointTuple, check_points, d_det,
                           solve_with_det, v_det)
from .errors import ArgumentError, DegenerateInputError, NearSingularError
from .systems import ChebyshevSystem

#: Relative bound on interpolation residuals at the nodes.
NODE_RESIDUAL_RTOL = 1e-9


@dataclass(frozen=True)
class OmegaCombination:
    """A linear combination of a system's basis functions."""

    system: ChebyshevSystem
    coefficients: tuple[float, ...]

    def __post_init__(self):
        if len(self.coefficients) != self.system.n:
            raise ArgumentError("coefficient count must match the system order")

    def __call__(self, x: float) -> float:
        return math.fsum(c * func(x)
                         for c, func in zip(self.coefficients, self.system.basis))

    def describe(self) -> str:
        terms = [f"{c:g}*{func.describe()}"
                 for c, func in zip(self.coefficients, self.system.basis)]
        return " + ".join(terms)


def _check_node_residuals(omega: OmegaCombination, nodes: Sequence[float],
                          targets: Sequence[float]) -> None:
    # Tolerance is relative to the cancellation scale of each node equation.
    for x, want in zip(nodes, targets):
        terms = [c * func(x)
                 for c, func in zip(omega.coefficients, omega.system.basis)]
        scale = max(1.0, abs(want), sum(abs(t) for t in terms))
        if abs(math.fsum(terms) - want) > NODE_RESIDUAL_RTOL * scale:
            raise NearSingularError(
                f"interpolation residual at node {x!r} exceeds "
                f"{NODE_RESIDUAL_RTOL:g} of scale {scale:g}")


def interpolate(system: ChebyshevSystem, pts: PointsLike,
                values: Sequence[float]) -> OmegaCombination:
    """The unique combination matching ``values`` at the given points.

    Nodes are sorted ascending internally (determinant sign conventions
    assume ordered columns); the coefficient vector stays basis-ordered.
    """
    pts = check_points(system, pts, system.n)
    values = [float(v) for v in values]
    if len(values) != system.n:
        raise ArgumentError(f"expected {system.n} values, got {len(values)}")
    paired = sorted(zip(pts.points, values))
    nodes = [x for x, _ in paired]
    targets = [v for _, v in paired]
    matrix = [list(system.evaluate_basis(x)) for x in nodes]
    coeffs, _ = solve_with_det(matrix, targets)
    omega = OmegaCombination(system, tuple(coeffs))
    _check_node_residuals(omega, nodes, targets)
    return omega


def constrained_interpolate(system: ChebyshevSystem, knots: PointsLike, f,
                            c_n: float) -> OmegaCombination:
    """Interpolate ``f`` at n-1 knots with the last coefficient pinned.

    Solves the truncated (n-1)-system for the leading coefficients with
    right-hand side f(x_k) - c_n * (last basis)(x_k); the returned
    combination has all n coefficients, the last being ``c_n``.
    """
    n = system.n
    if n < 2:
        raise ArgumentError("constrained interpolation needs a system of order >= 2")
    knots = check_points(system, knots, n - 1).sorted()
    last = system.basis[n - 1]
    truncated = system.truncate(n - 1)
    matrix = [list(truncated.evaluate_basis(x)) for x in knots]
    targets = [f(x) - c_n * last(x) for x in knots]
    coeffs, _ = solve_with_det(matrix, targets)
    omega = OmegaCombination(system, tuple(coeffs) + (float(c_n),))
    _check_node_residuals(omega, knots.points, [f(x) for x in knots])
    return omega


def lemma1_residual(system: ChebyshevSystem, knots: PointsLike, f, c_n: float,
                    x: float) -> float:
    """Absolute residual of the constrained-interpolation difference identity.

    Compares f(x) - omega(x) against its determinant form
    (bordered(knots, x; f) - c_n * full(knots, x)) / truncated(knots),
    where ``x`` occupies the last column in both extended determinants.
    """
    n = system.n
    if n < 2:
        raise ArgumentError("the difference identity needs a system of order >= 2")
    knots = check_points(system, knots, n - 1).sorted()
    if any(k == x for k in knots):
        raise DegenerateInputError(f"evaluation point x={x!r} coincides with a knot")
    omega = constrained_interpolate(system, knots, f, c_n)
    lhs = f(x) - omega(x)
    extended = PointTuple.of(knots.points + (float(x),))
    bordered = d_det(system.truncate(n - 1), extended, f)
    full = v_det(system, extended)
    base = v_det(system.truncate(n - 1), knots)
    if base.sign == "0":
        raise NearSingularError("truncated determinant degenerated at the knots")
    rhs = (bordered.value - c_n * full.value) / base.value
    return abs(lhs - rhs)
