"""Tests for moduli of continuity, the approximation bounds and rate fits."""

import math
import os
import sys
import unittest

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

# Add the src directory to Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from vilenkin.analysis.approx import (
    ReportRow,
    VerificationReport,
    check_row,
    cond0_sum,
    fejer_rhs,
    lip_function,
    lip_profile_formula,
    modulus,
    modulus_profile,
    negative_probe,
    predicted_slope,
    rate_fit,
    thm1_rhs,
    thm2_rhs,
    thm3_rhs,
)
from vilenkin.analysis.means import fejer_mean, make_weights, t_mean
from vilenkin.analysis.spectral import (
    GridFunction,
    coset_indicator,
    lp_norm,
    rademacher,
)
from vilenkin.analysis.vgroup import build_group
from vilenkin.errors import RateFitError, WeightClassError
from vilenkin.tools.rng import random_function


class TestModulus(unittest.TestCase):
    def setUp(self):
        self.walsh = build_group([2], 3)

    def test_rademacher_modulus(self):
        r1 = rademacher(self.walsh, 1)
        self.assertAlmostEqual(modulus(r1, 1, 1), 2.0)
        self.assertAlmostEqual(modulus(r1, 1, 2), 0.0)

    def test_constant_modulus(self):
        c = GridFunction.constant(self.walsh, 4.0)
        self.assertEqual(modulus_profile(c, 2).omegas, (0.0,) * 4)

    def test_indicator_modulus(self):
        f = coset_indicator(self.walsh, 1)
        self.assertAlmostEqual(modulus(f, 1, 0), 1.0)

    def test_profile_matches_pointwise(self):
        spec = build_group([3, 2], 3)
        f = random_function(spec, 2)
        prof = modulus_profile(f, 1.5)
        for s in range(spec.level + 1):
            self.assertAlmostEqual(prof[s], modulus(f, 1.5, s), places=12)

    @settings(max_examples=20, deadline=None)
    @given(st.integers(min_value=0, max_value=2**40), st.sampled_from([1.0, 2.0, 4.0]))
    def test_profile_monotone_and_capped(self, seed, p):
        spec = build_group([2, 3], 4)
        f = random_function(spec, seed)
        omegas = modulus_profile(f, p).omegas
        self.assertTrue(all(a >= b - 1e-12 for a, b in zip(omegas, omegas[1:])))
        self.assertEqual(omegas[-1], 0.0)
        self.assertLessEqual(omegas[0], 2 * lp_norm(f, p) + 1e-12)

    def test_spectral_path(self):
        spec = build_group([3, 2, 4], 3)
        f = random_function(spec, 17)
        direct = modulus_profile(f, 2).omegas
        spectral = modulus_profile(f, 2, method="spectral").omegas
        self.assertLess(max(abs(a - b) for a, b in zip(direct, spectral)), 1e-10)
        with self.assertRaises(ValueError):
            modulus_profile(f, 1, method="spectral")


class TestLipFunction(unittest.TestCase):
    def test_walsh_profile_value(self):
        prof = lip_profile_formula(0.5, build_group([2], 4))
        self.assertAlmostEqual(prof[2], 2 * math.sqrt(0.375), places=6)
        self.assertAlmostEqual(prof[2], 1.224745, places=6)

    def test_formula_matches_measurement(self):
        for radices in ([2], [3, 2, 4]):
            spec = build_group(radices, 4)
            f = lip_function(0.5, spec)
            measured = modulus_profile(f, 2).omegas
            closed = lip_profile_formula(0.5, spec).omegas
            for a, b in zip(measured, closed):
                self.assertAlmostEqual(a, b, places=10)

    def test_rejects_non_positive_alpha(self):
        with self.assertRaises(ValueError):
            lip_function(0, build_group([2], 3))


class TestTheoremBounds(unittest.TestCase):
    """Hand-computed right sides on the Walsh group of order 8."""

    def setUp(self):
        self.spec = build_group([2], 3)
        self.r1 = rademacher(self.spec, 1)

    def test_non_increasing_bound(self):
        q = make_weights("const", nmax=8)
        rhs = thm1_rhs(self.r1, 1, q, 4)
        lhs = lp_norm(t_mean(self.r1, q, 4) - self.r1, 1)
        self.assertAlmostEqual(rhs, 576.0)
        self.assertAlmostEqual(lhs, 0.75)
        ratio, passed = check_row(lhs, rhs)
        self.assertAlmostEqual(ratio, 0.75 / 576)
        self.assertTrue(passed)

    def test_non_decreasing_bound(self):
        q = make_weights("pow", 1, 8)
        rhs, cond0 = thm2_rhs(self.r1, 1, q, 4)
        lhs = lp_norm(t_mean(self.r1, q, 4) - self.r1, 1)
        self.assertAlmostEqual(rhs, 921.6)
        self.assertAlmostEqual(lhs, 0.6)
        # (1/4) 2 + (2/4) 2 + 0
        self.assertAlmostEqual(cond0, 1.5)

    def test_subsequence_bound(self):
        q = make_weights("pow", 1, 8)
        rhs = thm3_rhs(self.r1, 1, q, 1)
        lhs = lp_norm(t_mean(self.r1, q, 2) - self.r1, 1)
        self.assertAlmostEqual(rhs, 80.0)
        self.assertAlmostEqual(lhs, 1.0)

    def test_zero_function(self):
        zero = GridFunction.zero(self.spec)
        q = make_weights("const", nmax=8)
        self.assertEqual(thm1_rhs(zero, 2, q, 5), 0.0)
        self.assertEqual(thm3_rhs(zero, 2, q, 2), 0.0)
        self.assertEqual(check_row(0.0, 0.0), (0.0, True))

    def test_class_mismatch(self):
        with self.assertRaises(WeightClassError):
            thm1_rhs(self.r1, 1, make_weights("pow", 1, 8), 4)
        with self.assertRaises(WeightClassError):
            thm2_rhs(self.r1, 1, make_weights("pow", -1, 8), 4)
        with self.assertRaises(WeightClassError):
            thm3_rhs(self.r1, 1, make_weights("custom", [1, 3, 2, 4, 5, 6, 7, 8]), 2)

    def test_random_ratios_hold(self):
        spec = build_group([2], 6)
        f = random_function(spec, 3)
        prof = modulus_profile(f, 2)
        dec = make_weights("pow", -0.5, spec.size)
        inc = make_weights("pow", 0.5, spec.size)
        for n in range(1, spec.size):
            err_dec = lp_norm(t_mean(f, dec, n) - f, 2)
            self.assertTrue(check_row(err_dec, thm1_rhs(f, 2, dec, n, prof))[1])
            err_inc = lp_norm(t_mean(f, inc, n) - f, 2)
            self.assertTrue(check_row(err_inc, thm2_rhs(f, 2, inc, n, prof)[0])[1])
            err_fejer = lp_norm(fejer_mean(f, n) - f, 2)
            self.assertTrue(check_row(err_fejer, fejer_rhs(f, 2, n, prof))[1])

    def test_profile_must_match_exponent(self):
        q = make_weights("const", nmax=8)
        prof = modulus_profile(self.r1, 2)
        with self.assertRaises(ValueError):
            thm1_rhs(self.r1, 1, q, 4, prof)


class TestCond0(unittest.TestCase):
    def test_readings_agree_on_walsh(self):
        prof = modulus_profile(random_function(build_group([2], 4), 1), 1)
        for N in range(5):
            self.assertAlmostEqual(cond0_sum(prof, N), cond0_sum(prof, N, "dyadic"))

    def test_dyadic_reading_needs_walsh(self):
        prof = modulus_profile(random_function(build_group([3], 2), 1), 1)
        with self.assertRaises(ValueError):
            cond0_sum(prof, 1, "dyadic")


class TestRows(unittest.TestCase):
    def test_pass_rule(self):
        self.assertTrue(check_row(1.0 + 1e-10, 1.0)[1])
        self.assertFalse(check_row(1.0 + 1e-8, 1.0)[1])
        self.assertEqual(check_row(1e-13, 0.0), (0.0, True))
        ratio, passed = check_row(1e-6, 0.0)
        self.assertEqual(ratio, math.inf)
        self.assertFalse(passed)

    def test_report_summary(self):
        report = VerificationReport("1", "m=2;L=3", "const", (1.0,))
        self.assertTrue(report.all_pass)
        self.assertEqual(report.max_ratio, 0.0)
        good = ReportRow("1", "m=2;L=3", "const", 1.0, "random:1", 2, 1, 4, 0.25, True)
        bad = ReportRow("1", "m=2;L=3", "const", 1.0, "random:1", 1, 2, 1, 2.0, False)
        report.extend([good, bad])
        report.sort()
        self.assertEqual([r.n for r in report.rows], [1, 2])
        self.assertEqual(report.max_ratio, 2.0)
        self.assertFalse(report.all_pass)

    def test_failed_check_fails_report(self):
        report = VerificationReport("2", "m=2;L=3", "pow:1", (1.0,))
        report.checks["cond0_bounded[random:1@p=1]"] = False
        self.assertFalse(report.all_pass)


class TestRates(unittest.TestCase):
    def test_exact_power_law(self):
        series = [(2**k, 3.0 * (2**k) ** -0.5) for k in range(1, 8)]
        slope, r2 = rate_fit(series)
        self.assertAlmostEqual(slope, -0.5, places=10)
        self.assertAlmostEqual(r2, 1.0, places=10)

    def test_constant_series(self):
        slope, _ = rate_fit([(2, 1.0), (4, 1.0), (8, 1.0)])
        self.assertAlmostEqual(slope, 0.0, places=12)

    def test_rejects_bad_series(self):
        with self.assertRaises(RateFitError):
            rate_fit([(2, 1.0), (4, 0.5)])
        with self.assertRaises(RateFitError):
            rate_fit([(2, 1.0), (4, 0.0), (8, 0.1)])

    def test_predicted_slopes(self):
        const = make_weights("const", nmax=4)
        self.assertEqual(predicted_slope(0.5, const), -0.5)
        self.assertEqual(predicted_slope(2.0, const), -1.0)
        self.assertEqual(predicted_slope(0.8, make_weights("pow", -0.5, 4)), -0.5)
        self.assertEqual(predicted_slope(0.3, make_weights("pow", -0.5, 4)), -0.3)
        self.assertEqual(predicted_slope(0.5, make_weights("pow", -1, 4)), 0.0)
        self.assertEqual(predicted_slope(0.5, make_weights("pow", 1, 4)), -0.5)

    def test_lipschitz_rate(self):
        spec = build_group([2], 14)
        f = lip_function(0.5, spec)
        q = make_weights("const", nmax=spec.size)
        series = [
            (spec.powers[n], lp_norm(t_mean(f, q, spec.powers[n]) - f, 1))
            for n in range(1, spec.level)
        ]
        slope, _ = rate_fit(series)
        self.assertGreaterEqual(slope, -0.65)
        self.assertLessEqual(slope, -0.35)


class TestNegativeProbe(unittest.TestCase):
    def test_probe_is_one(self):
        for radices in ([2], [3, 2, 4]):
            spec = build_group(radices, 5)
            for p in (1.0, 2.0):
                for _, value in negative_probe(spec, p):
                    self.assertAlmostEqual(value, 1.0, delta=1e-10)

    def test_probe_on_larger_walsh_group(self):
        spec = build_group([2], 12)
        for p in (1.0, 2.0):
            values = negative_probe(spec, p)
            self.assertEqual([n for n, _ in values], list(range(13)))
            for _, value in values:
                self.assertAlmostEqual(value, 1.0, delta=1e-10)


if __name__ == "__main__":
    unittest.main()
