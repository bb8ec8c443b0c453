import math
import unittest

import numpy as np

from growfrag.errors import InvalidDomain, InvalidParam
from growfrag.model import (
    capital_k,
    existence_condition,
    inf_phi_positive,
    kernel_k0,
    kernel_mellin_quadrature,
    kernel_second_moment,
    make_params,
    phi,
)


class TestProblemParams(unittest.TestCase):
    """
    Tests for parameter validation and the roots of Phi.
    """

    def test_conjugate_roots(self):
        """Test theta = 2 gives sigma = 1 -/+ i."""
        params = make_params(0.8, 2.0)
        self.assertAlmostEqual(params.sigma1, 1 - 1j, places=14)
        self.assertAlmostEqual(params.sigma2, 1 + 1j, places=14)
        self.assertTrue(params.conjugate_roots)
        self.assertAlmostEqual(params.blowup_time, 1.25)

    def test_real_roots(self):
        """Test theta = 0.75 gives sigma = 1/2, 3/2."""
        params = make_params(1.0, 0.75)
        self.assertAlmostEqual(params.sigma1, 0.5, places=14)
        self.assertAlmostEqual(params.sigma2, 1.5, places=14)
        self.assertFalse(params.conjugate_roots)

    def test_roots_satisfy_vieta(self):
        """Test sigma1 + sigma2 = 2 and sigma1 * sigma2 = theta."""
        for theta in [0.3, 1.5, 2.0, 5.0, 40.0]:
            params = make_params(1.0, theta)
            self.assertAlmostEqual(abs(params.sigma1 + params.sigma2 - 2), 0.0, places=12)
            self.assertAlmostEqual(abs(params.sigma1 * params.sigma2 - theta), 0.0, places=12)

    def test_invalid_params(self):
        """Test rejection of non-positive gamma, theta and the double root."""
        for gamma, theta in [(0.0, 2.0), (-1.0, 2.0), (1.0, 0.0), (1.0, -2.0), (1.0, 1.0), (float('nan'), 2.0)]:
            with self.assertRaises(InvalidParam):
                make_params(gamma, theta)

    def test_to_dict(self):
        """Test the serialisable view."""
        data = make_params(0.5, 2.0).to_dict()
        self.assertEqual(data["gamma"], 0.5)
        self.assertEqual(data["theta"], 2.0)
        self.assertIn("sigma1", data)


class TestKernel(unittest.TestCase):
    """
    Tests for the kernel and its Mellin transform.
    """

    def setUp(self):
        """Set up test environment before each test."""
        self.params = make_params(1.0, 2.0)

    def test_kernel_values(self):
        """Test the step kernel, zero at x = 1."""
        np.testing.assert_array_equal(kernel_k0(self.params, np.array([0.2, 0.999, 1.0, 1.5])), [2, 2, 0, 0])
        self.assertEqual(kernel_k0(self.params, 0.5), 2.0)

    def test_mellin_transform_matches_quadrature(self):
        """Test K(s) = theta / s against direct quadrature."""
        for s in [0.5, 1.0, 2 + 3j, 0.7 - 1.5j]:
            quad = kernel_mellin_quadrature(self.params, s)
            self.assertLess(abs(quad - capital_k(self.params, s)), 1e-10)

    def test_capital_k_rejects_left_half_plane(self):
        """Test InvalidDomain for Re s <= 0."""
        with self.assertRaises(InvalidDomain):
            capital_k(self.params, 0.0)
        with self.assertRaises(InvalidDomain):
            capital_k(self.params, np.array([1.0, -0.5 + 1j]))

    def test_second_moment(self):
        """Test the normalisation moment equals theta / 24."""
        self.assertAlmostEqual(kernel_second_moment(self.params), 2.0 / 24.0, places=12)


class TestPhi(unittest.TestCase):
    """
    Tests for Phi and the global-existence condition.
    """

    def test_forms_agree(self):
        """Test the additive and factored forms coincide on random points with 0 < Re s <= 10."""
        rng = np.random.default_rng(7)
        s = 10.0 * (1.0 - rng.random(1000)) + 1j * rng.uniform(-10.0, 10.0, 1000)
        for theta in [0.75, 2.0]:
            params = make_params(0.8, theta)
            np.testing.assert_allclose(phi(params, s), phi(params, s, form="factored"), rtol=1e-12, atol=1e-12)

    def test_roots_are_zeros(self):
        """Test Phi(sigma_i) = 0."""
        params = make_params(0.8, 2.0)
        self.assertLess(abs(phi(params, params.sigma1)), 1e-14)
        self.assertLess(abs(phi(params, params.sigma2)), 1e-14)

    def test_unknown_form(self):
        """Test ValueError on an unknown form."""
        with self.assertRaises(ValueError):
            phi(make_params(1.0, 2.0), 1.0, form="multiplicative")

    def test_infimum_theta_two(self):
        """Test inf Phi = 2(sqrt 2 - 1) at s = sqrt 2 for theta = 2."""
        report = existence_condition(make_params(1.0, 2.0))
        self.assertAlmostEqual(report.infimum, 2 * (math.sqrt(2) - 1), places=9)
        self.assertLess(abs(report.minimizer - math.sqrt(2)), 1e-6)
        self.assertFalse(report.satisfied)
        self.assertEqual(round(report.infimum, 7), 0.8284271)

    def test_infimum_other_thetas(self):
        """Test inf Phi = 2(sqrt(theta) - 1) across the conjugate regime."""
        for theta in [1.5, 5.0, 10.0]:
            value = inf_phi_positive(make_params(1.0, theta))
            self.assertAlmostEqual(value, 2 * (math.sqrt(theta) - 1), places=8)

    def test_minimizer_is_sqrt_theta(self):
        """Test the minimiser of Phi on s > 0 lands within 1e-6 of sqrt(theta)."""
        for theta in [0.3, 0.75, 1.5, 5.0, 10.0, 40.0]:
            report = existence_condition(make_params(1.0, theta))
            self.assertLess(abs(report.minimizer - math.sqrt(theta)), 1e-6, f"theta={theta}")
            self.assertAlmostEqual(report.infimum, 2 * (math.sqrt(theta) - 1), places=9)

    def test_subcritical_condition_holds(self):
        """Test theta < 1 satisfies the condition."""
        report = existence_condition(make_params(1.0, 0.75))
        self.assertTrue(report.satisfied)
        self.assertLess(report.infimum, 0)

    def test_inf_phi_positive_rejects_real_roots(self):
        """Test InvalidParam for theta <= 1."""
        with self.assertRaises(InvalidParam):
            inf_phi_positive(make_params(1.0, 0.75))


if __name__ == '__main__':
    unittest.main()
