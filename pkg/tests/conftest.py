"""Shared fixtures, generators, and independent oracles for the test suite.

The determinant oracle expands by cofactors, so it shares no code with the
elimination kernel under test. Point generators are seeded and rejection
sample until the minimum separation holds.
"""

from __future__ import annotations

import random

import pytest
from hypothesis import strategies as st

from chebconvex import (ExpressionSource, Interval, exponential_system,
                        polynomial_system)


def det_bruteforce(rows):
    """Cofactor-expansion determinant; exact control oracle for small n."""
    n = len(rows)
    if n == 0:
        return 1.0
    if n == 1:
        return rows[0][0]
    total = 0.0
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * det_bruteforce(minor)
        total += -term if j % 2 else term
    return total


def draw_separated(rng: random.Random, n: int, lo=-1.0, hi=1.0, sep=0.05):
    """Sorted n points in [lo, hi] with pairwise separation >= sep."""
    while True:
        pts = sorted(rng.uniform(lo, hi) for _ in range(n))
        if all(b - a >= sep for a, b in zip(pts, pts[1:])):
            return tuple(pts)


def separated_points_strategy(n: int, lo=-1.0, hi=1.0, sep=0.05):
    """Hypothesis strategy for sorted separated points, built from gaps."""
    slack = (hi - lo) - (n - 1) * sep
    assert slack > 0
    start = st.floats(min_value=lo, max_value=lo + slack * 0.5,
                      allow_nan=False, allow_infinity=False)
    gap = st.floats(min_value=sep, max_value=sep + slack * 0.5 / max(n - 1, 1),
                    allow_nan=False, allow_infinity=False)
    gaps = st.lists(gap, min_size=n - 1, max_size=n - 1)

    def assemble(args):
        x0, steps = args
        pts = [x0]
        for g in steps:
            pts.append(pts[-1] + g)
        return tuple(pts)

    return st.tuples(start, gaps).map(assemble).filter(lambda p: p[-1] <= hi)


# Target functions used throughout.
F_CUBE = ExpressionSource("monomial", (3,))
F_SQUARE = ExpressionSource("monomial", (2,))
F_FIFTH = ExpressionSource("monomial", (5,))
F_EXP = ExpressionSource("exp", (1,))
F_NEG_CUBE = ExpressionSource("negmonomial", (3,))

FIXTURE_FUNCTIONS = (F_FIFTH, F_EXP, F_SQUARE)


@pytest.fixture
def poly3():
    return polynomial_system(3)


@pytest.fixture
def poly2():
    return polynomial_system(2)


@pytest.fixture
def poly3_box():
    return polynomial_system(3, Interval(-2.0, 3.0))


@pytest.fixture
def exp01():
    return exponential_system((0.0, 1.0), Interval(-1.0, 1.0))


def grid_on(lo: float, hi: float, count: int) -> list[float]:
    step = (hi - lo) / (count - 1)
    pts = [lo + i * step for i in range(count - 1)]
    pts.append(hi)
    return pts


def exp_rates(n: int) -> tuple[float, ...]:
    return tuple(float(k) for k in range(n))


def relgap(a: float, b: float, floor: float = 1.0) -> float:
    return abs(a - b) / max(abs(a), abs(b), floor)


def is_close(a: float, b: float, rel: float, floor: float = 1.0) -> bool:
    return relgap(a, b, floor) <= rel


def assert_halving(h_sequence):
    hs = [h for h, _ in h_sequence]
    assert all(h1 == pytest.approx(h0 / 2.0) for h0, h1 in zip(hs, hs[1:]))
    assert all(h0 > h1 for h0, h1 in zip(hs, hs[1:]))
