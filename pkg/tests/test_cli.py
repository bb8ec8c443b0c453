import io
import os
import tempfile
import unittest
from unittest.mock import patch

import pandas as pd

from growfrag.cli import EXIT_CHECK_FAILED, EXIT_INVALID, EXIT_OK, EXIT_USAGE, run
from growfrag.config import CONFIG_ENV_VAR


def run_captured(argv):
    """Run the CLI and return (exit code, stdout text)."""
    with patch('sys.stdout', new_callable=io.StringIO) as out, patch('sys.stderr', new_callable=io.StringIO):
        code = run(argv)
    return code, out.getvalue()


class TestProfileCommand(unittest.TestCase):
    """
    Tests for the profile subcommand.
    """

    def test_header_and_rows(self):
        """Test the atom header and one row per cell."""
        code, output = run_captured(["profile", "--gamma", "1", "--theta", "2", "--t", "0.5", "--cells", "1000"])
        self.assertEqual(code, EXIT_OK)
        lines = output.splitlines()
        self.assertEqual(lines[0], "# gamma=1 theta=2 t=0.5 atom_location=2 atom_mass=0.5")
        self.assertEqual(lines[1], "x,u_regular")
        self.assertEqual(len(lines), 1002)

        frame = pd.read_csv(io.StringIO(output), comment="#")
        self.assertTrue((frame["u_regular"] >= 0).all())
        self.assertTrue((frame.loc[frame["x"] > 2.0, "u_regular"] == 0).all())

    def test_output_file_is_deterministic(self):
        """Test that two runs write identical bytes."""
        with tempfile.TemporaryDirectory() as tmpdir:
            paths = [os.path.join(tmpdir, f"run{i}.csv") for i in range(2)]
            for path in paths:
                code, _ = run_captured(["profile", "--t-frac", "0.5", "--cells", "500", "-o", path])
                self.assertEqual(code, EXIT_OK)
            with open(paths[0], 'rb') as a, open(paths[1], 'rb') as b:
                self.assertEqual(a.read(), b.read())

    def test_needs_exactly_one_time(self):
        """Test exit 1 for zero or two times."""
        self.assertEqual(run_captured(["profile"])[0], EXIT_INVALID)
        self.assertEqual(run_captured(["profile", "--t", "0.1,0.2"])[0], EXIT_INVALID)

    def test_config_from_environment(self):
        """Test that $GROWFRAG_CONFIG supplies defaults that flags override."""
        with tempfile.TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, "env.conf")
            with open(path, 'w') as f:
                f.write("theta = 5\ngamma = 0.5\ncells = 100\n")
            with patch.dict(os.environ, {CONFIG_ENV_VAR: path}):
                code, output = run_captured(["profile", "--gamma", "1", "--t", "0.5"])
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(output.startswith("# gamma=1 theta=5 t=0.5"))
        self.assertEqual(len(output.splitlines()), 102)


class TestReportCommands(unittest.TestCase):
    """
    Tests for moments, blowup and phi.
    """

    def test_phi(self):
        """Test the infimum and the verdict for theta = 2."""
        code, output = run_captured(["phi", "--theta", "2"])
        self.assertEqual(code, EXIT_OK)
        self.assertIn("inf Phi = 0.8284271", output)
        self.assertIn("not satisfied", output)

    def test_phi_subcritical(self):
        """Test that theta < 1 satisfies the condition."""
        code, output = run_captured(["phi", "--theta", "0.75"])
        self.assertEqual(code, EXIT_OK)
        self.assertIn("condition inf Phi < 0: satisfied", output)

    def test_moments(self):
        """Test the moment table columns and size."""
        code, output = run_captured(["moments", "--t-frac", "0.1,0.5", "--r", "0.5,2"])
        self.assertEqual(code, EXIT_OK)
        frame = pd.read_csv(io.StringIO(output))
        self.assertEqual(list(frame.columns), ["t", "r", "moment", "scaled_moment", "limit_constant", "rel_err"])
        self.assertEqual(len(frame), 4)

    def test_moments_at_time_zero(self):
        """Test that t = 0 gives the initial moments and no scaled values."""
        code, output = run_captured(["moments", "--t", "0,0.5", "--r", "0.5,1,2"])
        self.assertEqual(code, EXIT_OK)
        frame = pd.read_csv(io.StringIO(output))
        initial = frame[frame["t"] == 0]
        self.assertEqual(len(initial), 3)
        for value in initial["moment"]:
            self.assertAlmostEqual(value, 1.0, places=12)
        self.assertTrue(initial["scaled_moment"].isna().all())
        self.assertTrue(initial["rel_err"].isna().all())
        self.assertFalse(frame[frame["t"] == 0.5]["scaled_moment"].isna().any())

    def test_blowup_errors_decrease(self):
        """Test that the scaled second moment approaches its constant."""
        code, output = run_captured(["blowup", "--r", "2"])
        self.assertEqual(code, EXIT_OK)
        frame = pd.read_csv(io.StringIO(output))
        self.assertEqual(list(frame.columns), ["t", "r", "scaled_moment", "blowup_constant", "rel_err"])
        self.assertEqual(len(frame), 5)
        self.assertTrue(frame["rel_err"].is_monotonic_decreasing)


class TestExitCodes(unittest.TestCase):
    """
    Tests for usage errors, invalid input and failed checks.
    """

    def test_usage_errors(self):
        """Test exit 64 for an unknown subcommand or flag."""
        self.assertEqual(run_captured(["frobnicate"])[0], EXIT_USAGE)
        self.assertEqual(run_captured(["phi", "--bogus"])[0], EXIT_USAGE)
        self.assertEqual(run_captured([])[0], EXIT_USAGE)
        self.assertEqual(run_captured(["phi", "--gamma", "fast"])[0], EXIT_USAGE)

    def test_invalid_parameters(self):
        """Test exit 1 for theta = 1 and a missing configuration file."""
        self.assertEqual(run_captured(["phi", "--theta", "1"])[0], EXIT_INVALID)
        self.assertEqual(run_captured(["phi", "--config", "/nonexistent/growfrag.conf"])[0], EXIT_INVALID)
        self.assertEqual(run_captured(["moments", "--t-frac", "1.5"])[0], EXIT_INVALID)

    def test_failed_check_exit_code(self):
        """Test exit 2 and a FAIL line when a tolerance is tightened."""
        with tempfile.TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, "strict.conf")
            with open(path, 'w') as f:
                f.write("tol.profile = 1e-12\n")
            code, output = run_captured(["verify-closedform", "--config", path])
        self.assertEqual(code, EXIT_CHECK_FAILED)
        self.assertIn("FAIL profile", output)

    def test_passing_suite_writes_csv(self):
        """Test exit 0 and the check table as CSV."""
        with tempfile.TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, "checks.csv")
            code, _ = run_captured(["verify-closedform", "-o", path])
            frame = pd.read_csv(path)
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(frame["passed"].all())
        self.assertIn("front_jump", list(frame["check"]))


if __name__ == '__main__':
    unittest.main()
