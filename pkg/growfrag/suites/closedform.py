"""
Checks of the explicit solution: roots of Phi, the two forms of Omega,
non-negativity, the front jump, the limit profile and the initial moments.
"""

import logging
from typing import List

import numpy as np

from .. import closedform
from ..config import RunConfig
from ..model import existence_condition, inf_phi_positive, make_params
from .checks import CheckResult, relative_error

logger = logging.getLogger('growfrag.suites.closedform')

ROOT_THETAS = (1.5, 2.0, 5.0)
SUBCRITICAL_THETA = 0.75
OMEGA_T_FRACS = (0.1, 0.3, 0.5, 0.7, 0.9)
OMEGA_POINTS = (0.5, 1.0, 2.0, 3.7, 1.0 + 2.0j)
ROOT_T_FRACS = (0.0, 0.5, 0.9, 0.99)
POSITIVITY_GAMMAS = (0.5, 1.0, 2.0)
POSITIVITY_T_FRACS = (0.2, 0.5, 0.8)
POSITIVITY_POINTS = 2000
PROFILE_POINTS = (0.5, 1.0, 2.0)
PROFILE_DEFECT = 1e-4
INITIAL_ORDERS = (0.5, 1.0, 2.0, 3.0)
INITIAL_T_FRAC = 1e-8


def _root_checks(config: RunConfig) -> List[CheckResult]:
    results = []
    worst_roots = 0.0
    worst_inf = 0.0
    for theta in ROOT_THETAS:
        params = make_params(config.gamma, theta)
        worst_roots = max(
            worst_roots,
            abs(params.sigma1 * params.sigma2 - theta) / theta,
            abs(params.sigma1 + params.sigma2 - 2.0),
        )
        worst_inf = max(worst_inf, abs(inf_phi_positive(params) - 2.0 * (np.sqrt(theta) - 1.0)))
    results.append(CheckResult("roots", worst_roots, config.tolerance("roots")))
    results.append(CheckResult("phi_infimum", worst_inf, config.tolerance("phi_infimum")))

    report = existence_condition(make_params(config.gamma, SUBCRITICAL_THETA))
    results.append(CheckResult(
        "subcritical_condition", 0.0 if report.satisfied else 1.0, 0.0,
        detail=f"inf Phi = {report.infimum:.6g} at theta = {SUBCRITICAL_THETA}",
    ))
    return results


def _omega_checks(config: RunConfig) -> List[CheckResult]:
    params = config.params()
    g = params.gamma
    forms = 0.0
    for frac in OMEGA_T_FRACS:
        for s in OMEGA_POINTS:
            direct = closedform.omega(params, frac / g, s, form="direct")
            euler = closedform.omega(params, frac / g, s, form="euler")
            forms = max(forms, relative_error(euler, direct))

    roots = max(abs(closedform.omega(params, 0.0, s) - 1.0) for s in OMEGA_POINTS)
    for frac in ROOT_T_FRACS:
        for sigma in (params.sigma1, params.sigma2):
            roots = max(roots, abs(closedform.omega(params, frac / g, sigma) - 1.0))
    return [
        CheckResult("omega_forms", forms, config.tolerance("omega_forms")),
        CheckResult("omega_roots", roots, config.tolerance("omega_roots")),
    ]


def _positivity_checks(config: RunConfig) -> List[CheckResult]:
    lowest = np.inf
    worst_jump = 0.0
    for gamma in POSITIVITY_GAMMAS:
        for theta in ROOT_THETAS:
            params = make_params(gamma, theta)
            for frac in POSITIVITY_T_FRACS:
                t = frac / gamma
                front = closedform.front_location(params, t)
                x = np.geomspace(1e-3, 1.5 * front, POSITIVITY_POINTS)
                lowest = min(lowest, float(np.min(closedform.u_regular(params, t, x))))

                inside = closedform.u_regular(params, t, front)
                outside = closedform.u_regular(params, t, front * (1.0 + 1e-9))
                worst_jump = max(worst_jump, relative_error(inside - outside, closedform.front_jump(params, t)))
    return [
        CheckResult("positivity", max(0.0, -lowest), config.tolerance("positivity"),
                    detail=f"min u_regular = {lowest:.3e}"),
        CheckResult("front_jump", worst_jump, config.tolerance("front_jump")),
    ]


def _profile_checks(config: RunConfig) -> List[CheckResult]:
    params = config.params()
    t = (1.0 - PROFILE_DEFECT) / params.gamma
    x = np.array(PROFILE_POINTS)
    worst = float(np.max(np.abs(closedform.u_regular(params, t, x) / closedform.profile_limit(params, x) - 1.0)))
    return [CheckResult("profile", worst, config.tolerance("profile"))]


def _initial_checks(config: RunConfig) -> List[CheckResult]:
    params = config.params()
    t = INITIAL_T_FRAC / params.gamma
    worst = max(abs(closedform.moment(params, t, r) - 1.0) for r in INITIAL_ORDERS)
    return [CheckResult("initial", worst, config.tolerance("initial"))]


def run_closedform_checks(config: RunConfig) -> List[CheckResult]:
    """
    Run the closed-form checks for the configured (gamma, theta).

    Args:
        config: Validated run configuration

    Returns:
        List of CheckResult, one per check
    """
    logger.info(f"Closed-form checks for gamma={config.gamma}, theta={config.theta}")
    results = (
        _root_checks(config)
        + _omega_checks(config)
        + _positivity_checks(config)
        + _profile_checks(config)
        + _initial_checks(config)
    )
    logger.info(f"Closed-form checks done: {sum(r.passed for r in results)}/{len(results)} passed")
    return results
