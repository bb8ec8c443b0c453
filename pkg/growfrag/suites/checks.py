"""
Result type shared by the verification suites.
"""

from dataclasses import dataclass
from typing import List

import numpy as np


@dataclass(frozen=True)
class CheckResult:
    """One tolerance comparison: passes when value <= tolerance."""

    name: str
    value: float
    tolerance: float
    detail: str = ""

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.value) and self.value <= self.tolerance)

    def fail_line(self) -> str:
        """Machine-readable summary, e.g. ``FAIL pde_l1 0.041 0.03``."""
        return f"FAIL {self.name} {self.value:.6g} {self.tolerance:.6g}"


def relative_error(value: complex, reference: complex) -> float:
    return float(abs(value - reference) / max(abs(reference), np.finfo(float).tiny))


def failures(results: List[CheckResult]) -> List[CheckResult]:
    return [r for r in results if not r.passed]
