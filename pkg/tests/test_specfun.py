import math
import unittest

import mpmath
import numpy as np

from growfrag.errors import DegenerateConnectionError, InvalidDomain, NonConvergenceError, PoleError
from growfrag.specfun import gamma, hyp2f1, log_gamma, nonpositive_integer_mask, rgamma


class TestGammaFunctions(unittest.TestCase):
    """
    Tests for the Lanczos Gamma family.
    """

    def setUp(self):
        """Set up test environment before each test."""
        mpmath.mp.dps = 30

    def assertClose(self, value, reference, rtol):
        reference = complex(reference)
        self.assertLessEqual(abs(value - reference), rtol * max(1.0, abs(reference)), f"{value} vs {reference}")

    def test_log_gamma_right_half_plane(self):
        """Test log_gamma against mpmath where the principal branch is returned."""
        for z in [0.5, 1.0, 2.5, 3 + 4j, 10 - 2j, 0.7 + 30j]:
            self.assertClose(log_gamma(z), mpmath.loggamma(z), 1e-12)

    def test_log_gamma_left_half_plane(self):
        """Test the principal branch where Re z < 0.5, including the negative real axis."""
        for z in [-2.5 + 1j, -2.5, -0.5, 0.25 - 3j, -7.3 - 4j, -0.5 + 25j, 0.3 - 22j, -40.2 + 0.5j]:
            self.assertClose(log_gamma(z), mpmath.loggamma(z), 1e-12)

    def test_log_gamma_branch_is_continuous(self):
        """Test that the imaginary part does not jump across Re z = 0.5 or along a vertical line."""
        z = np.concatenate((np.linspace(-6.0, 3.0, 901) + 2.0j, -3.3 + 1j * np.linspace(0.1, 5.0, 491)))
        steps = np.abs(np.diff(np.asarray(log_gamma(z)).imag))
        self.assertLess(steps.max(), 0.1)

    def test_reflection_identity(self):
        """Test Gamma(z) Gamma(1 - z) sin(pi z) / pi = 1."""
        for z in [0.3 + 0.4j, -1.7 + 0.2j, 2.5 - 1j, 0.5 + 3j, -4.25 - 2j, 0.1]:
            product = gamma(z) * gamma(1 - z) * np.sin(np.pi * z) / np.pi
            self.assertLess(abs(product - 1.0), 1e-12, f"z = {z}")
        value = abs(np.exp(log_gamma(1 + 1j)) * gamma(1 - 1j))
        self.assertAlmostEqual(value, math.pi / math.sinh(math.pi), places=13)

    def test_gamma_with_reflection(self):
        """Test gamma on both sides of Re z = 0.5."""
        for z in [-0.5, -2.5 + 1j, 0.25 - 3j, 1 - 1j, 4.5, -0.5 + 25j, 0.3 - 22j]:
            reference = complex(mpmath.gamma(z))
            self.assertLessEqual(abs(gamma(z) - reference), 1e-11 * abs(reference), f"z = {z}")

    def test_gamma_known_modulus(self):
        """Test |Gamma(2 + i)|^2 = 2 pi / sinh(pi)."""
        self.assertAlmostEqual(abs(gamma(2 + 1j)) ** 2, 2 * math.pi / math.sinh(math.pi), places=13)

    def test_gamma_integers(self):
        """Test Gamma(n) = (n - 1)!."""
        for n in range(1, 12):
            self.assertAlmostEqual(gamma(n).real / math.factorial(n - 1), 1.0, places=12)

    def test_poles_raise(self):
        """Test that Gamma poles raise PoleError."""
        for z in [0.0, -3.0, -1.0 + 1e-14]:
            with self.assertRaises(PoleError):
                log_gamma(z)
            with self.assertRaises(PoleError):
                gamma(z)

    def test_rgamma(self):
        """Test the reciprocal Gamma, zero at poles."""
        self.assertEqual(rgamma(-2.0), 0.0)
        self.assertEqual(rgamma(0.0), 0.0)
        self.assertAlmostEqual(rgamma(3.0).real, 0.5, places=14)
        values = rgamma(np.array([-1.0, 2.0, 0.5]))
        self.assertEqual(values.shape, (3,))
        self.assertEqual(values[0], 0.0)
        self.assertAlmostEqual(values[2].real, 1.0 / math.sqrt(math.pi), places=13)

    def test_array_input(self):
        """Test that arrays come back as arrays and scalars as complex."""
        z = np.array([[0.5, 1.5], [2.5, -0.5]])
        self.assertEqual(gamma(z).shape, (2, 2))
        self.assertIsInstance(gamma(1.5), complex)

    def test_nonpositive_integer_mask(self):
        """Test pole detection."""
        mask = nonpositive_integer_mask(np.array([0.0, -2.0, 1.0, -1.5, -3 + 1e-3j]))
        np.testing.assert_array_equal(mask, [True, True, False, False, False])


class TestHyp2f1(unittest.TestCase):
    """
    Tests for the Gauss hypergeometric function.
    """

    def setUp(self):
        """Set up parameter sets with non-integer c - a - b."""
        mpmath.mp.dps = 30
        self.parameter_sets = [
            (2.25 - 1.25j, 2.25 + 1.25j, 2.0),  # regular density at gamma = 0.8, theta = 2
            (0.3, 0.7 + 0.2j, 1.9),
            (2.5 + 1.25j, 2.5 - 1.25j, 3.75),  # Omega at s = 3
        ]
        self.arguments = [-3.0, -0.5, 0.0, 0.3, 0.85, 0.9, 0.95, 0.999]

    def test_against_mpmath(self):
        """Test every branch (Pfaff, series, connection) against mpmath."""
        for a, b, c in self.parameter_sets:
            for z in self.arguments:
                reference = complex(mpmath.hyp2f1(a, b, c, z))
                value = hyp2f1(a, b, c, z)
                self.assertLessEqual(
                    abs(value - reference), 1e-9 * abs(reference), f"a={a} b={b} c={c} z={z}"
                )

    def assertRelClose(self, value, reference, rtol, msg=None):
        self.assertLessEqual(abs(value - reference), rtol * abs(reference), msg)

    def test_closed_form_examples(self):
        """Test F(1, 1; 2; 0.5) = 2 ln 2 and F(a, b; a; z) = (1 - z)^(-b)."""
        self.assertRelClose(hyp2f1(1.0, 1.0, 2.0, 0.5), 2.0 * math.log(2.0), 1e-14)
        a, b = 1.7 + 0.3j, 0.4 - 1.1j
        for z in [-2.0, 0.3, 0.9]:
            self.assertRelClose(hyp2f1(a, b, a, z), (1.0 - z) ** (-b), 1e-12, f"z={z}")

    def test_conjugate_parameters_give_real_values(self):
        """Test that F(a, conj(a); c; z) is real for real c and z."""
        self.assertLess(abs(hyp2f1(1 + 1j, 1 - 1j, 2.0, 0.3).imag), 1e-12)
        for a, c in [(1 + 1j, 2.5), (2.25 - 1.25j, 2.0), (0.4 + 3j, 1.1)]:
            for z in self.arguments:
                value = hyp2f1(a, a.conjugate(), c, z)
                self.assertLessEqual(abs(value.imag), 1e-12 * max(1.0, abs(value.real)), f"a={a} c={c} z={z}")

    def test_euler_transformation(self):
        """Test F(a, b; c; z) = (1 - z)^(c - a - b) F(c - a, c - b; c; z) for random a, b."""
        rng = np.random.default_rng(20240611)
        for _ in range(5):
            a, b = rng.uniform(0.0, 2.0, 2) + 1j * rng.uniform(-2.0, 2.0, 2)
            c = a + b + 1.3
            for z in [-5.0, -1.0, 0.0, 0.25, 0.5, 0.9]:
                transformed = (1.0 - z) ** (c - a - b) * hyp2f1(c - a, c - b, c, z)
                self.assertRelClose(hyp2f1(a, b, c, z), transformed, 1e-10, f"a={a} b={b} z={z}")

    def test_pfaff_transformation(self):
        """Test both Pfaff forms for z < 0."""
        for a, b, c in self.parameter_sets:
            for z in [-0.5, -2.0, -4.0]:
                w = z / (z - 1.0)
                value = hyp2f1(a, b, c, z)
                self.assertRelClose(value, (1.0 - z) ** (-a) * hyp2f1(a, c - b, c, w), 1e-10, f"z={z}")
                self.assertRelClose(value, (1.0 - z) ** (-b) * hyp2f1(c - a, b, c, w), 1e-10, f"z={z}")

    def test_gauss_summation_limit(self):
        """Test the value at 1 - 1e-6 against Gamma(c)Gamma(c-a-b) / (Gamma(c-a)Gamma(c-b))."""
        for a, b, c in [(0.3, 0.7 + 0.2j, 1.9), (0.5 + 1j, 0.5 - 1j, 2.75)]:
            limit = complex(mpmath.gamma(c) * mpmath.gamma(c - a - b) / (mpmath.gamma(c - a) * mpmath.gamma(c - b)))
            self.assertRelClose(hyp2f1(a, b, c, 1.0 - 1e-6), limit, 1e-4, f"a={a} b={b} c={c}")

    def test_broadcasting(self):
        """Test that array arguments broadcast and match scalar calls."""
        a, b, c = self.parameter_sets[0]
        z = np.array(self.arguments)
        values = hyp2f1(a, b, c, z)
        self.assertEqual(values.shape, z.shape)
        for zi, vi in zip(z, values):
            self.assertEqual(vi, hyp2f1(a, b, c, float(zi)))

        c_grid = np.array([1.5, 2.5, 3.5])[:, None]
        self.assertEqual(hyp2f1(0.5, 0.25, c_grid, np.array([0.1, 0.2])).shape, (3, 2))

    def test_value_at_zero(self):
        """Test F(a, b; c; 0) = 1."""
        self.assertEqual(hyp2f1(1.3 + 2j, -0.7, 2.2, 0.0), 1.0)

    def test_terminating_series(self):
        """Test that a non-positive integer a gives the exact polynomial for z near 1."""
        z = 0.99
        expected = sum(
            complex(mpmath.rf(-3, n) * mpmath.rf(2.5, n) / (mpmath.rf(1.5, n) * mpmath.factorial(n))) * z ** n
            for n in range(4)
        )
        self.assertAlmostEqual(abs(hyp2f1(-3.0, 2.5, 1.5, z) - expected), 0.0, places=12)

    def test_degenerate_connection_raises(self):
        """Test that c - a - b = 0 near z = 1 raises."""
        with self.assertRaises(DegenerateConnectionError):
            hyp2f1(1.0, 1.0, 2.0, 0.95)

    def test_domain_and_pole_errors(self):
        """Test argument validation."""
        with self.assertRaises(InvalidDomain):
            hyp2f1(0.5, 0.5, 1.5, 1.0)
        with self.assertRaises(PoleError):
            hyp2f1(0.5, 0.5, -2.0, 0.5)

    def test_non_convergence(self):
        """Test that a tiny term budget raises NonConvergenceError."""
        with self.assertRaises(NonConvergenceError):
            hyp2f1(0.5, 0.7, 1.3, 0.8, max_terms=5)


if __name__ == '__main__':
    unittest.main()
