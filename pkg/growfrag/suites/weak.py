"""
Weak-form checks of the full measure-valued solution.
"""

import logging
from typing import List

from .. import pdesolver
from ..config import RunConfig
from .checks import CheckResult

logger = logging.getLogger('growfrag.suites.weak')

# (t centre, x centre, t half width, x half width), times as fractions of 1/gamma
BUMPS = (
    (0.4, 1.2, 0.1, 0.4),
    (0.3, 0.6, 0.1, 0.3),
    (0.55, 1.8, 0.08, 0.5),
)
FAR_BUMP = (0.4, 40.0, 0.1, 5.0)
COARSE_NODES = 64
FINE_NODES = 256


def _bump(params, spec) -> pdesolver.WeakTestFunction:
    t, x, t_width, x_width = spec
    return pdesolver.WeakTestFunction.centered(t / params.gamma, x, t_width / params.gamma, x_width)


def run_weak_checks(config: RunConfig) -> List[CheckResult]:
    """
    Test the explicit solution against smooth product bumps.

    Each bump must give a residual below tolerance at 256 Gauss nodes per
    axis without exceeding its 64-node value. The zero measure and a bump far
    beyond the support must give zero.

    Args:
        config: Validated run configuration

    Returns:
        List of CheckResult, one per check
    """
    params = config.params()
    logger.info(f"Weak-form checks for gamma={params.gamma}, theta={params.theta}")
    results = []
    for i, spec in enumerate(BUMPS, start=1):
        phi = _bump(params, spec)
        coarse = pdesolver.weak_residual(params, phi, COARSE_NODES)
        fine = pdesolver.weak_residual(params, phi, FINE_NODES)
        results.append(CheckResult(f"weak_bump{i}", fine, config.tolerance("weak"),
                                   detail=f"{COARSE_NODES} nodes: {coarse:.3e}"))
        results.append(CheckResult(f"weak_refine{i}", fine, max(coarse, 1e-12)))

    far = pdesolver.weak_residual(params, _bump(params, FAR_BUMP), COARSE_NODES)
    zero = pdesolver.weak_residual(params, _bump(params, BUMPS[0]), COARSE_NODES, trial=pdesolver.ZeroTrial())
    results.append(CheckResult("weak_far", max(far, zero), config.tolerance("weak_far")))
    logger.info(f"Weak-form checks done: {sum(r.passed for r in results)}/{len(results)} passed")
    return results
