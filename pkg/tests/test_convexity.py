import math
import random

import pytest

from chebconvex import (CERTIFIED, VIOLATED, CallableSource, ExpressionSource,
                        Interval, PreconditionError, certify_corollary1,
                        certify_theorem_a, cosine_sine_system, d_det,
                        exponential_system, gdd, negated_polynomial_system,
                        polynomial_system, scan_theorem2, verify_definition)

from conftest import F_CUBE, F_EXP, F_NEG_CUBE, F_SQUARE, grid_on


class TestTheoremA:
    def test_exp_wrt_affine_certified(self):
        cert = certify_theorem_a(polynomial_system(2), F_EXP, grid_on(-1, 1, 50))
        assert cert.verdict == CERTIFIED
        assert cert.min_value > 0.0
        assert cert.tuples_checked == math.comb(50, 3)
        assert cert.witness is None

    def test_cube_wrt_quadratics_certified(self):
        cert = certify_theorem_a(polynomial_system(3), F_CUBE, grid_on(-1, 1, 30))
        assert cert.verdict == CERTIFIED
        assert cert.min_value > 0.0

    def test_negated_cube_violated_with_recomputable_witness(self):
        system = polynomial_system(3)
        cert = certify_theorem_a(system, F_NEG_CUBE, grid_on(-1, 1, 30))
        assert cert.verdict == VIOLATED
        assert cert.witness is not None and len(cert.witness) == 4
        recomputed = d_det(system, cert.witness, F_NEG_CUBE)
        assert recomputed.value == pytest.approx(cert.witness_value, rel=1e-12)
        assert recomputed.value < -(cert.atol + cert.rtol * recomputed.scale)

    def test_non_positive_system_is_a_precondition_error(self):
        system = cosine_sine_system().truncate(1)
        grid = grid_on(0.2, 3.0, 20)
        with pytest.raises(PreconditionError):
            certify_theorem_a(system, F_SQUARE, grid)
        with pytest.raises(PreconditionError):
            certify_theorem_a(negated_polynomial_system(1), F_SQUARE, grid_on(-1, 1, 10))

    def test_refinement_never_flips_violated_to_certified(self):
        system = polynomial_system(3)
        coarse = grid_on(-1, 1, 12)
        fine = sorted(set(coarse) | set(grid_on(-0.95, 0.9, 15)))
        assert certify_theorem_a(system, F_NEG_CUBE, coarse).verdict == VIOLATED
        assert certify_theorem_a(system, F_NEG_CUBE, fine).verdict == VIOLATED

    def test_budgeted_run_is_deterministic(self):
        system = polynomial_system(2)
        grid = grid_on(-1, 1, 80)  # C(80, 3) = 82160 > budget
        a = certify_theorem_a(system, F_EXP, grid, budget=3000, seed=5)
        b = certify_theorem_a(system, F_EXP, grid, budget=3000, seed=5)
        assert a == b
        assert a.verdict == CERTIFIED
        assert a.tuples_checked == 3000


class TestCorollary1:
    def test_agreement_on_the_three_fixtures(self):
        cases = [
            (polynomial_system(2), F_EXP, grid_on(-1, 1, 50)),
            (polynomial_system(3), F_CUBE, grid_on(-1, 1, 30)),
            (polynomial_system(3), F_NEG_CUBE, grid_on(-1, 1, 30)),
        ]
        for system, f, grid in cases:
            a = certify_theorem_a(system, f, grid)
            b = certify_corollary1(system, f, grid)
            assert a.verdict == b.verdict

    def test_last_basis_function_certifies_with_flat_windows(self):
        cert = certify_corollary1(polynomial_system(3), F_SQUARE, grid_on(-1, 1, 12))
        assert cert.verdict == CERTIFIED
        assert cert.min_value == pytest.approx(0.0, abs=1e-12)

    def test_parabola_wrt_affine(self):
        cert = certify_corollary1(polynomial_system(2), F_SQUARE, grid_on(-1, 1, 25))
        assert cert.verdict == CERTIFIED

    def test_violated_witness_recomputable_from_windows(self):
        system = polynomial_system(3)
        cert = certify_corollary1(system, F_NEG_CUBE, grid_on(-1, 1, 15))
        assert cert.verdict == VIOLATED
        t = cert.witness.points
        hi = gdd(system, t[1:], F_NEG_CUBE).value
        lo = gdd(system, t[:3], F_NEG_CUBE).value
        assert hi - lo == pytest.approx(cert.witness_value, rel=1e-10)
        assert hi - lo < -(cert.atol + cert.rtol * max(abs(hi), abs(lo)))

    def test_truncation_must_be_positive_too(self):
        # (x, x^3) has positive windows for the full pair on (0.1, 2) grids,
        # but its truncation (x) is fine there as well; use a grid touching
        # negative territory so the truncation flips sign.
        from chebconvex import BasisFunction, ChebyshevSystem
        system = ChebyshevSystem((BasisFunction("monomial", 1),
                                  BasisFunction("monomial", 3)))
        grid = grid_on(-2.0, 2.0, 12)
        with pytest.raises(PreconditionError):
            certify_corollary1(system, F_SQUARE, grid)


class TestTheorem2Scan:
    def test_cube_scan_is_shifted_identity(self):
        system = polynomial_system(3, Interval(-2.0, 3.0))
        report = scan_theorem2(system, F_CUBE, (0.0, 1.0), grid_on(-2, 3, 200))
        assert not report.violations
        assert len(report.scan) == 200
        for x, value in report.scan:
            assert value == pytest.approx(1.0 + x, abs=1e-8)

    def test_constant_map_for_last_basis_function(self):
        system = polynomial_system(3, Interval(-2.0, 3.0))
        report = scan_theorem2(system, F_SQUARE, (0.0, 1.0), grid_on(-2, 3, 60))
        assert not report.violations
        values = [v for _, v in report.scan]
        assert max(values) - min(values) <= 1e-10

    def test_negated_cube_scan_finds_violations(self):
        system = polynomial_system(3, Interval(-2.0, 3.0))
        report = scan_theorem2(system, F_NEG_CUBE, (0.0, 1.0), grid_on(-2, 3, 60))
        assert report.violations
        (x0, v0), (x1, v1) = report.violations[0]
        assert x0 < x1 and v1 < v0

    def test_scan_excludes_knot_neighborhoods(self):
        system = polynomial_system(3, Interval(-2.0, 3.0))
        grid = sorted(set(grid_on(-2, 3, 40)) | {0.0, 1.0, 1.0 + 1e-9})
        report = scan_theorem2(system, F_CUBE, (0.0, 1.0), grid)
        xs = [x for x, _ in report.scan]
        assert 0.0 not in xs and 1.0 not in xs and 1.0 + 1e-9 not in xs

    def test_boundary_knot_rejected(self):
        system = polynomial_system(3, Interval(0.0, 2.0))
        with pytest.raises(PreconditionError):
            scan_theorem2(system, F_CUBE, (0.0, 1.0), grid_on(0, 2, 30))

    def test_unsorted_knots_rejected(self):
        system = polynomial_system(3, Interval(-2.0, 3.0))
        with pytest.raises(PreconditionError):
            scan_theorem2(system, F_CUBE, (1.0, 0.0), grid_on(-2, 3, 30))

    def test_scan_on_certified_and_violated_fixtures(self):
        system = polynomial_system(3)
        grid = grid_on(-1, 1, 25)
        cert = certify_theorem_a(system, F_CUBE, grid)
        assert cert.verdict == CERTIFIED
        report = scan_theorem2(system, F_CUBE, (-0.5, 0.3), grid)
        assert not report.violations
        bad = certify_theorem_a(system, F_NEG_CUBE, grid)
        knots = bad.witness.points[:2]
        report = scan_theorem2(system, F_NEG_CUBE, knots, grid)
        assert report.violations


class TestDefinition:
    def test_chord_over_parabola(self):
        cert = verify_definition(polynomial_system(2), F_SQUARE, (0.0, 1.0),
                                 grid_on(-1, 2, 61))
        assert cert.verdict == CERTIFIED

    def test_f_equal_to_a_combination_certifies(self):
        f = ExpressionSource("poly", (0.5, 1.0, -2.0))
        cert = verify_definition(polynomial_system(3), f, (0.0, 0.5, 1.0),
                                 grid_on(-1, 2, 40))
        assert cert.verdict == CERTIFIED
        assert abs(cert.min_value) <= 1e-9

    def test_cube_alternates_around_three_nodes(self):
        nodes = (0.0, 1.0, 2.0)
        grid = grid_on(-1, 3, 81)
        cert = verify_definition(polynomial_system(3), F_CUBE, nodes, grid)
        assert cert.verdict == CERTIFIED
        # the interpolant is 3x^2 - 2x; the difference x(x-1)(x-2) alternates
        # -, +, -, + across the four regions
        delta = 1e-4 * 4.0
        for x in grid:
            if min(abs(x - k) for k in nodes) <= delta:
                continue
            diff = F_CUBE(x) - (3 * x * x - 2 * x)
            region = sum(1 for k in nodes if x > k)
            expected = (-1.0) ** (3 + region)
            assert expected * diff >= -1e-9 * max(1.0, abs(F_CUBE(x)))

    def test_negated_cube_violates_definition(self):
        cert = verify_definition(polynomial_system(3), F_NEG_CUBE, (0.0, 1.0, 2.0),
                                 grid_on(-1, 3, 81))
        assert cert.verdict == VIOLATED
        assert cert.witness is not None and len(cert.witness) == 1
        assert cert.witness_value < 0.0


class TestCrossMethod:
    def test_exp_system_agreement(self):
        system = exponential_system((0.0, 1.0), Interval(-1.0, 1.0))
        grid = grid_on(-1, 1, 20)
        convex = CallableSource(lambda x: x ** 4, "x^4")
        a = certify_theorem_a(system, convex, grid)
        b = certify_corollary1(system, convex, grid)
        assert a.verdict == b.verdict == CERTIFIED
        bumpy = CallableSource(lambda x: math.sin(3 * x), "sin3x")
        a = certify_theorem_a(system, bumpy, grid)
        b = certify_corollary1(system, bumpy, grid)
        assert a.verdict == b.verdict == VIOLATED

    def test_random_polynomials_agree(self):
        rng = random.Random(12)
        system = polynomial_system(3)
        grid = grid_on(-1, 1, 14)
        for _ in range(10):
            coeffs = tuple(rng.uniform(-1, 1) for _ in range(4))
            f = ExpressionSource("poly", coeffs)
            a = certify_theorem_a(system, f, grid)
            b = certify_corollary1(system, f, grid)
            assert a.verdict == b.verdict
