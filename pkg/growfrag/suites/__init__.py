"""
Verification suites

Each module bundles the checks of one area and exposes a single
run_*_checks(config) function returning a list of CheckResult:
- closedform: roots of Phi, Omega identities, positivity, limit profile
- mellin: functional equation, Mellin identities, forward and inverse transforms
- pde: finite-volume solver and atom characteristic
- weak: weak-form residuals against product bumps
- blowup: blow-up rates of the moments
"""

from .blowup import run_blowup_checks
from .checks import CheckResult
from .closedform import run_closedform_checks
from .mellin import run_mellin_checks
from .pde import run_pde_checks
from .weak import run_weak_checks

__all__ = [
    'CheckResult',
    'run_blowup_checks',
    'run_closedform_checks',
    'run_mellin_checks',
    'run_pde_checks',
    'run_weak_checks',
]
