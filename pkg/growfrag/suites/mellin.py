"""
Mellin-side checks: the functional equation, the beta-type integral, the
decomposition of Omega into atom and regular part, and forward/inverse
transforms against the closed form.
"""

import logging
from typing import List

import numpy as np

from .. import closedform, mellin
from ..config import RunConfig
from ..grid import RadialGrid
from ..model import make_params
from .checks import CheckResult, relative_error

logger = logging.getLogger('growfrag.suites.mellin')

ODE_T_FRAC = 0.32
ODE_POINT = 2.0
ODE_STEPS = (1e-3, 5e-4, 2.5e-4)
ODE_ACCEPT_STEP = 1e-4
BETA_CASES = (
    # (gamma, t, n, s)
    (2.0, 0.25, 3, 1.5 + 0.5j),
    (1.0, 0.5, 1, 1.0),
    (0.8, 0.625, 0, 0.7),
    (0.8, 0.625, 4, 2.0 + 1.0j),
)
REASSEMBLY_T_FRACS = (0.1, 0.3, 0.5, 0.7, 0.9)
REASSEMBLY_POINTS = (0.5, 1.0, 2.0, 3.7, 1.0 + 2.0j)
FORWARD_POINTS = (0.7, 1.0, 2.0, 3.3, 2.0 + 1.0j)
INVERSE_POINTS = (0.5, 1.0, 2.0)
INVERSE_ABSCISSAE = (0.5, 2.0)
SNAPSHOT_CELLS = 64


def _ode_checks(config: RunConfig) -> List[CheckResult]:
    params = config.params()
    t = ODE_T_FRAC / params.gamma
    residual = mellin.mellin_ode_residual(params, t, ODE_POINT, ODE_ACCEPT_STEP)

    series = [mellin.mellin_ode_residual(params, t, ODE_POINT, dt) for dt in ODE_STEPS]
    ratios = [coarse / fine for coarse, fine in zip(series[:-1], series[1:])]
    spread = max(abs(ratio / 4.0 - 1.0) for ratio in ratios)

    at_root = mellin.mellin_ode_residual(params, t, params.sigma1, ODE_ACCEPT_STEP)
    return [
        CheckResult("ode_residual", residual, config.tolerance("ode_residual")),
        CheckResult("ode_ratio", spread, config.tolerance("ode_ratio"),
                    detail=f"ratios {', '.join(f'{r:.3f}' for r in ratios)}"),
        CheckResult("ode_root", at_root, config.tolerance("ode_root")),
    ]


def _beta_checks(config: RunConfig) -> List[CheckResult]:
    worst = 0.0
    for gamma, t, n, s in BETA_CASES:
        params = make_params(gamma, config.theta)
        exact = mellin.beta_moment_integral(params, t, n, s)
        worst = max(worst, relative_error(mellin.beta_moment_quadrature(params, t, n, s), exact))

    params = config.params()
    reassembly = 0.0
    for frac in REASSEMBLY_T_FRACS:
        t = frac / params.gamma
        for s in REASSEMBLY_POINTS:
            reassembly = max(
                reassembly,
                relative_error(mellin.reassembled_omega(params, t, s), closedform.omega(params, t, s)),
            )
    return [
        CheckResult("beta", worst, config.tolerance("beta")),
        CheckResult("reassembly", reassembly, config.tolerance("reassembly")),
    ]


def _transform_checks(config: RunConfig) -> List[CheckResult]:
    params = config.params()
    t = 0.5 / params.gamma
    front = closedform.front_location(params, t)
    grid = RadialGrid.log_uniform(config.x_min, 1.5 * front, SNAPSHOT_CELLS)
    snap = closedform.snapshot(params, t, grid)

    forward = max(
        relative_error(mellin.forward_mellin(snap, s), closedform.omega(params, t, s))
        for s in FORWARD_POINTS
    )
    forward = max(forward, abs(mellin.forward_mellin(snap, params.sigma1) - 1.0))

    tol = config.tolerance("inverse")
    inverse = 0.0
    abscissa = 0.0
    for x in INVERSE_POINTS:
        exact = closedform.u_regular(params, t, x)
        found = []
        for s0 in INVERSE_ABSCISSAE:
            contour = mellin.ContourSpec(s0=s0, height=config.contour.height, nodes=config.contour.nodes)
            result = mellin.inverse_mellin_regular_detailed(params, t, x, contour, tol=tol)
            # the check passes when the error stays inside max(tol, tail)
            inverse = max(inverse, abs(result.value - exact) * tol / max(tol, result.tail_estimate))
            found.append(result)
        allowed = 2.0 * max(tol, *(r.tail_estimate for r in found))
        abscissa = max(abscissa, abs(found[0].value - found[1].value) * tol / allowed)
    return [
        CheckResult("forward", forward, config.tolerance("forward")),
        CheckResult("inverse", inverse, tol),
        CheckResult("contour_abscissa", abscissa, tol),
    ]


def run_mellin_checks(config: RunConfig) -> List[CheckResult]:
    """
    Run the Mellin-side checks for the configured (gamma, theta) and contour.

    Args:
        config: Validated run configuration

    Returns:
        List of CheckResult, one per check
    """
    logger.info(f"Mellin checks for gamma={config.gamma}, theta={config.theta}, contour {config.contour}")
    results = _ode_checks(config) + _beta_checks(config) + _transform_checks(config)
    logger.info(f"Mellin checks done: {sum(r.passed for r in results)}/{len(results)} passed")
    return results
