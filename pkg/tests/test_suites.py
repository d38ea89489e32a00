"""Tests for the kernel, theorem and rate suites."""

import os
import sys
import unittest
from unittest.mock import patch

# Add the src directory to Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from vilenkin.analysis.vgroup import build_group, group_from_string
from vilenkin.errors import RateFitError, WeightClassError
from vilenkin.suites.kernel_suite import IdentityRow, KernelSuite
from vilenkin.suites.rate_suite import RateFit, RateSuite
from vilenkin.suites.theorem_suite import TheoremSuite, probe_report


class TestKernelSuite(unittest.TestCase):
    """Exhaustive kernel identities on small groups."""

    def test_mixed_group_passes(self):
        report = KernelSuite(group_from_string("m=2,3,4;L=3"), workers=2).run()
        self.assertTrue(report.all_pass, [r for r in report.rows if not r.passed])
        names = {r.identity for r in report.rows}
        self.assertEqual(
            names,
            {
                "dirichlet_closed",
                "fejer_closed",
                "dirichlet_complement",
                "dirichlet_complement_reflected",
                "fejer_integral",
                "fejer_l1",
                "fejer_pointwise",
            },
        )

    def test_walsh_passes(self):
        report = KernelSuite(build_group([2], 6)).run()
        self.assertTrue(report.all_pass)
        closed = [r.n for r in report.rows if r.identity == "dirichlet_closed"]
        self.assertEqual(closed, [1, 2, 4, 8, 16, 32, 64])

    def test_closed_form_residuals_absolute(self):
        suite = KernelSuite(group_from_string("m=2,3,4,2;L=4"))
        rows = suite.dirichlet_closed_rows() + suite.fejer_closed_rows()
        rows += KernelSuite(group_from_string("m=3,4;L=2")).complement_rows()
        for row in rows:
            self.assertEqual(row.bound, 1e-12)
            self.assertLessEqual(row.residual, 1e-12, row)

    def test_failing_row(self):
        row = IdentityRow("fejer_l1", 3, 40.0, 32.0)
        self.assertFalse(row.passed)
        self.assertEqual(row.cells(), ["fejer_l1", 3, 40.0, 32.0, False])

    @patch("vilenkin.suites.kernel_suite.SWEEP_MAX", 8)
    def test_large_groups_skip_sweep(self):
        suite = KernelSuite(build_group([2], 4))
        self.assertEqual(suite.sweep_rows(), [])

    def test_csv_render(self):
        report = KernelSuite(build_group([2], 2)).run()
        lines = report.render("csv").splitlines()
        self.assertEqual(lines[0], "identity,n,max_residual,bound,pass")
        self.assertEqual(len(lines), len(report.rows) + 1)


class TestTheoremSuite(unittest.TestCase):
    """Every ratio stays at or below one."""

    functions = ("random:1", "lip:0.5", "char:3")

    def assert_passes(self, report):
        failed = [r for r in report.rows if not r.passed]
        self.assertEqual(failed, [])
        self.assertTrue(report.all_pass)

    def test_theorem_one(self):
        suite = TheoremSuite(
            build_group([2, 3], 4), "1", "pow:-0.5", (1.0, 2.0), self.functions
        )
        report = suite.run()
        self.assert_passes(report)
        self.assertEqual(len(report.rows), 3 * 2 * (36 - 1))
        self.assertLessEqual(report.max_ratio, 1.0)

    def test_theorem_one_constant_weights(self):
        report = TheoremSuite(build_group([2], 5), "1", "const", (4.0,)).run()
        self.assert_passes(report)

    def test_theorem_two_reports_cond0(self):
        suite = TheoremSuite(build_group([2], 6), "2", "pow:1", (1.0,), ("random:7",))
        report = suite.run()
        self.assert_passes(report)
        self.assertIn("cond0_sup[random:7@p=1]", report.extra)
        self.assertIn("cond0_dyadic_last[random:7@p=1]", report.extra)
        self.assertLessEqual(report.extra["cond2[random:7@p=1]"], 2.0)
        self.assertTrue(report.checks["cond0_bounded[random:7@p=1]"])

    def test_theorem_three(self):
        suite = TheoremSuite(
            build_group([3, 2, 4], 4), "3", "pow:0.5", (1.0,), ("random:2",)
        )
        report = suite.run()
        self.assert_passes(report)
        self.assertEqual([r.n for r in report.rows], [1, 2, 3, 4])

    def test_fejer(self):
        report = TheoremSuite(build_group([2], 6), "fejer", p_values=(1.0, 2.0)).run()
        self.assert_passes(report)

    def test_weight_class_mismatch(self):
        with self.assertRaises(WeightClassError):
            TheoremSuite(build_group([2], 3), "2", "pow:-1")
        with self.assertRaises(WeightClassError):
            TheoremSuite(build_group([2], 3), "1", "pow:1")

    def test_norlund_is_unasserted(self):
        report = TheoremSuite(build_group([2], 4), "norlund", "pow:-0.5").run()
        self.assertFalse(report.asserted)

    def test_probe(self):
        report = probe_report(build_group([2], 8), (1.0, 3.0))
        self.assertTrue(report.all_pass)
        self.assertEqual(len(report.rows), 2 * 9)


class TestRateSuite(unittest.TestCase):
    def test_lipschitz_slope(self):
        suite = RateSuite(build_group([2], 12), alpha=0.5, tol=0.2)
        fits = suite.run()
        self.assertEqual(len(fits), 1)
        self.assertTrue(fits[0].passed, fits[0].summary())
        self.assertEqual(fits[0].target, -0.5)

    def test_lipschitz_slopes_both_norms(self):
        spec = build_group([2], 14)
        for alpha in (0.3, 0.5, 0.8):
            with self.subTest(alpha=alpha):
                fits = RateSuite(spec, alpha=alpha, p_values=(1.0, 2.0)).run()
                self.assertEqual([fit.p for fit in fits], [1.0, 2.0])
                for fit in fits:
                    self.assertEqual(fit.target, -alpha)
                    self.assertTrue(fit.passed, fit.summary())

    def test_smooth_function_saturates(self):
        suite = RateSuite(build_group([2], 14), alpha=2.0, p_values=(1.0, 2.0), tol=0.2)
        self.assertEqual(suite.target, -1.0)
        for fit in suite.run():
            self.assertTrue(fit.passed, fit.summary())

    def test_decreasing_weights_slope(self):
        suite = RateSuite(build_group([2], 14), alpha=0.5, weights="pow:-0.25")
        self.assertEqual(suite.target, -0.5)
        fits = suite.run()
        self.assertTrue(fits[0].passed, fits[0].summary())

    def test_series_csv(self):
        suite = RateSuite(build_group([2], 6), alpha=1.0, p_values=(1.0, 2.0))
        suite.measure_all()
        lines = suite.render_series().splitlines()
        self.assertEqual(lines[0], "p,n,err")
        self.assertEqual(len(lines), 1 + 2 * 5)

    def test_expected_slope_override(self):
        suite = RateSuite(build_group([2], 4), alpha=0.5, expect=-2.0)
        self.assertEqual(suite.target, -2.0)

    def test_too_few_levels(self):
        suite = RateSuite(build_group([2], 3), alpha=0.5)
        with self.assertRaises(RateFitError):
            suite.run()

    def test_fit_summary(self):
        fit = RateFit(1.0, -0.52, 0.99, -0.5, 0.15)
        self.assertTrue(fit.passed)
        self.assertIn("slope=-0.520000", fit.summary())
        self.assertTrue(fit.summary().endswith("pass"))


if __name__ == "__main__":
    unittest.main()
