"""Tests for weight sequences and the Fejer, T and Norlund means."""

import math
import os
import sys
import unittest

import numpy as np

# Add the src directory to Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from vilenkin.analysis.kernels import fejer_kernel, t_kernel, t_multipliers
from vilenkin.analysis.means import (
    abel_identity_residual,
    fejer_mean,
    fejer_mean_direct,
    make_weights,
    norlund_mean,
    norlund_mean_direct,
    t_mean,
    t_mean_abel,
    t_mean_direct,
    weights_from_string,
)
from vilenkin.analysis.spectral import (
    GridFunction,
    analyze,
    character,
    convolve,
    lp_norm,
    max_abs_diff,
)
from vilenkin.analysis.vgroup import build_group
from vilenkin.errors import ConfigError, IndexRangeError, WeightError
from vilenkin.tools.rng import random_function


class TestWeights(unittest.TestCase):
    def test_linear_weights(self):
        q = make_weights("pow", 1, 5)
        self.assertEqual(q.values, (1.0, 2.0, 3.0, 4.0, 5.0))
        self.assertEqual(q.partial(4), 10.0)
        self.assertTrue(q.is_non_decreasing)
        self.assertFalse(q.is_non_increasing)
        self.assertLessEqual(q.cond2, 2.0)
        self.assertTrue(q.regular)

    def test_constant_tagged_non_decreasing(self):
        q = make_weights("const", nmax=6)
        self.assertEqual(q.monotonicity, "non_decreasing")
        self.assertTrue(q.is_non_increasing)
        self.assertEqual(q.label, "const")

    def test_decreasing_weights(self):
        q = make_weights("pow", -0.5, 4)
        expected = (1.0, 2**-0.5, 3**-0.5, 0.5)
        for got, want in zip(q.values, expected):
            self.assertAlmostEqual(got, want)
        self.assertEqual(q.monotonicity, "non_increasing")
        self.assertEqual(q.label, "pow:-0.5")

    def test_logpow(self):
        q = make_weights("logpow", 1, 8)
        self.assertAlmostEqual(q.q(0), 1 / math.log(2))
        self.assertTrue(q.is_non_increasing)
        with self.assertRaises(WeightError):
            make_weights("logpow", 0, 8)

    def test_partials_strictly_increase(self):
        for kind, param in (("const", None), ("pow", -1), ("pow", 0.5), ("logpow", 1)):
            q = make_weights(kind, param, 64)
            diffs = np.diff(np.asarray(q.partials))
            self.assertTrue(np.all(diffs > 0), kind)

    def test_invalid_custom(self):
        with self.assertRaises(WeightError):
            make_weights("custom", [])
        with self.assertRaises(WeightError):
            make_weights("custom", [0, 1])
        with self.assertRaises(WeightError):
            make_weights("custom", [1, -1])

    def test_custom_other_class(self):
        q = make_weights("custom", [1, 3, 2])
        self.assertEqual(q.monotonicity, "other")
        self.assertEqual(q.label, "custom:1,3,2")

    def test_from_string(self):
        self.assertEqual(len(weights_from_string("pow:0.25", 16)), 16)
        self.assertEqual(weights_from_string("custom:1,2", 16).values, (1.0, 2.0))
        with self.assertRaises(ConfigError):
            weights_from_string("gauss:1", 16)


class TestFejerMean(unittest.TestCase):
    def setUp(self):
        self.spec = build_group([2], 3)

    def test_character_eigenvalue(self):
        got = fejer_mean(character(self.spec, 3), 8)
        self.assertLess(max_abs_diff(got, character(self.spec, 3) * 0.625), 1e-12)

    def test_first_character_at_blocks(self):
        f = character(self.spec, 1)
        for mn in self.spec.powers[1:]:
            expected = f * ((mn - 1) / mn)
            self.assertLess(max_abs_diff(fejer_mean(f, mn), expected), 1e-12)
            self.assertAlmostEqual(mn * lp_norm(fejer_mean(f, mn) - f, 2), 1.0)

    def test_reproduces_constants(self):
        c = GridFunction.constant(self.spec, 3.0)
        for n in range(1, self.spec.size + 1):
            self.assertLess(max_abs_diff(fejer_mean(c, n), c), 1e-12)

    def test_matches_direct(self):
        spec = build_group([3, 2], 3)
        f = random_function(spec, 4)
        for n in (1, 5, 17, 18):
            diff = max_abs_diff(fejer_mean(f, n), fejer_mean_direct(f, n))
            self.assertLess(diff, 1e-10)

    def test_index_range(self):
        with self.assertRaises(IndexRangeError):
            fejer_mean(character(self.spec, 1), 0)


class TestTMean(unittest.TestCase):
    def setUp(self):
        self.spec = build_group([2], 3)
        self.one = character(self.spec, 0)

    def test_constant_weights_drop_first_sum(self):
        q = make_weights("const", nmax=8)
        self.assertLess(max_abs_diff(t_mean(self.one, q, 4), self.one * 0.75), 1e-12)

    def test_increasing_weights(self):
        q = make_weights("custom", [1, 2, 3, 4])
        self.assertLess(max_abs_diff(t_mean(self.one, q, 4), self.one * 0.9), 1e-12)

    def test_rademacher_error(self):
        q = make_weights("const", nmax=8)
        r1 = character(self.spec, 2)
        self.assertAlmostEqual(lp_norm(t_mean(r1, q, 4) - r1, 1), 0.75)

    def test_constant_weights_relation(self):
        q = make_weights("const", nmax=8)
        f = random_function(self.spec, 9)
        for n in range(2, 9):
            expected = fejer_mean(f, n - 1) * ((n - 1) / n)
            self.assertLess(max_abs_diff(t_mean(f, q, n), expected), 1e-12)

    def test_character_eigenvalues(self):
        spec = build_group([3, 2], 3)
        q = make_weights("pow", 0.5, spec.size)
        n = 13
        f = random_function(spec, 2)
        coeffs = analyze(t_mean(f, q, n))
        source = analyze(f).coeffs
        for j in range(n - 1):
            factor = math.fsum(q.values[j + 1 : n]) / q.partial(n)
            self.assertAlmostEqual(coeffs.coeffs[j], source[j] * factor, places=10)
        self.assertLess(np.max(np.abs(coeffs.coeffs[n - 1 :])), 1e-12)

    def test_constants_shrink(self):
        q = make_weights("pow", 1, 8)
        c = GridFunction.constant(self.spec, 2.0)
        for n in range(1, 9):
            factor = (q.partial(n) - q.q(0)) / q.partial(n)
            self.assertLess(max_abs_diff(t_mean(c, q, n), c * factor), 1e-12)

    def test_matches_direct(self):
        q = make_weights("custom", [1, 2, 3, 4])
        f = random_function(self.spec, 6)
        self.assertLess(max_abs_diff(t_mean(f, q, 4), t_mean_direct(f, q, 4)), 1e-10)

    def test_multipliers_constant_weights(self):
        q = make_weights("const", nmax=8)
        np.testing.assert_allclose(t_multipliers(q, 4), [0.75, 0.5, 0.25, 0.0])

    def test_matches_direct_every_index(self):
        spec = build_group([2], 6)
        q = make_weights("pow", -0.5, spec.size)
        f = random_function(spec, 14)
        for n in range(1, spec.size + 1):
            diff = max_abs_diff(t_mean(f, q, n), t_mean_direct(f, q, n))
            self.assertLess(diff, 1e-10)

    def test_kernel_duality(self):
        spec = build_group([2, 3], 4)
        f = random_function(spec, 12)
        q = make_weights("pow", -0.5, spec.size)
        for n in range(1, spec.size + 1):
            self.assertLess(
                max_abs_diff(t_mean(f, q, n), convolve(f, t_kernel(spec, q, n))), 1e-10
            )
            self.assertLess(
                max_abs_diff(fejer_mean(f, n), convolve(f, fejer_kernel(spec, n))),
                1e-10,
            )


class TestAbelForm(unittest.TestCase):
    def test_scalar_identity(self):
        q = make_weights("pow", -0.5, 16)
        self.assertLessEqual(abel_identity_residual(q, 16), 1e-10)

    def test_scalar_identity_every_index(self):
        q = make_weights("custom", [3, 1, 4, 1, 5])
        for n in range(2, 6):
            self.assertLessEqual(abel_identity_residual(q, n), 1e-12)

    def test_matches_t_mean_both_classes(self):
        spec = build_group([2], 5)
        f = random_function(spec, 21)
        for param in (-0.5, 0.5):
            q = make_weights("pow", param, spec.size)
            for n in range(2, spec.size + 1):
                diff = max_abs_diff(t_mean_abel(f, q, n), t_mean(f, q, n))
                self.assertLess(diff, 1e-10)

    def test_custom_weights(self):
        spec = build_group([2], 2)
        q = make_weights("custom", [1, 2, 3, 4])
        f = random_function(spec, 3)
        self.assertLess(max_abs_diff(t_mean_abel(f, q, 4), t_mean(f, q, 4)), 1e-10)

    def test_needs_two_terms(self):
        spec = build_group([2], 2)
        q = make_weights("const", nmax=4)
        with self.assertRaises(IndexRangeError):
            t_mean_abel(character(spec, 1), q, 1)


class TestNorlundMean(unittest.TestCase):
    def setUp(self):
        self.spec = build_group([3, 2], 3)
        self.q = make_weights("pow", -0.5, self.spec.size)

    def test_reproduces_first_character(self):
        one = character(self.spec, 0)
        for n in range(1, self.spec.size + 1):
            self.assertLess(max_abs_diff(norlund_mean(one, self.q, n), one), 1e-12)

    def test_constant_weights_give_fejer(self):
        q = make_weights("const", nmax=self.spec.size)
        f = random_function(self.spec, 5)
        for n in range(1, self.spec.size + 1):
            diff = max_abs_diff(norlund_mean(f, q, n), fejer_mean(f, n))
            self.assertLess(diff, 1e-12)

    def test_first_mean_is_average(self):
        f = random_function(self.spec, 7) + GridFunction.constant(self.spec, 1.5)
        got = norlund_mean(f, self.q, 1)
        self.assertTrue(np.allclose(got.values, f.values.mean()))

    def test_matches_direct(self):
        f = random_function(self.spec, 8)
        for n in (1, 7, 18):
            direct = norlund_mean_direct(f, self.q, n)
            diff = max_abs_diff(norlund_mean(f, self.q, n), direct)
            self.assertLess(diff, 1e-10)


if __name__ == "__main__":
    unittest.main()
