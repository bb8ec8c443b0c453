"""
Finite-volume checks of the regular part and the RK4 check of the atom.
"""

import logging
from typing import List, Tuple

import numpy as np

from .. import closedform, pdesolver
from ..config import RunConfig
from ..grid import RadialGrid
from .checks import CheckResult, relative_error

logger = logging.getLogger('growfrag.suites.pde')

T0_FRAC = 0.2
T1_FRAC = 0.5
INTERIOR_FRAC = 0.6
REFINEMENTS = (1, 2, 4, 8)
CFL = 0.9


def _solve(config: RunConfig, cells: int):
    params = config.params()
    t0, t1 = T0_FRAC / params.gamma, T1_FRAC / params.gamma
    grid = RadialGrid.build(config.x_min, config.x_max, cells, config.spacing)
    report = pdesolver.solve_regular_detailed(params, t0, t1, grid, cfl=CFL)
    exact = closedform.cell_averages(params, t1, grid)
    return report, exact


def convergence_order(config: RunConfig) -> Tuple[float, List[float]]:
    """
    Observed L1 order on x <= 0.6 front(t1) over cells N/2, N, 2N and 4N.

    Returns the least-squares slope of log error against log cells, and the
    orders between consecutive grids.
    """
    params = config.params()
    front = closedform.front_location(params, T1_FRAC / params.gamma)
    smear = (INTERIOR_FRAC * front, np.inf)
    cells = [max(config.cells // 2, 1) * k for k in REFINEMENTS]
    errors = []
    for n in cells:
        report, exact = _solve(config, n)
        errors.append(pdesolver.l1_error(report.solution, exact, exclude=smear))
    logger.info(f"Interior L1 errors: {', '.join(f'{e:.3e}' for e in errors)}")
    slope = -float(np.polyfit(np.log(cells), np.log(errors), 1)[0])
    pairs = [float(np.log2(coarse / fine)) for coarse, fine in zip(errors[:-1], errors[1:])]
    return slope, pairs


def run_pde_checks(config: RunConfig) -> List[CheckResult]:
    """
    Solve the regular part on the configured grid from 0.2/gamma to 0.5/gamma
    and compare with the closed form.

    Args:
        config: Validated run configuration

    Returns:
        List of CheckResult, one per check
    """
    params = config.params()
    t0, t1 = T0_FRAC / params.gamma, T1_FRAC / params.gamma
    logger.info(f"PDE checks on {config.cells} {config.spacing} cells over [{t0}, {t1}]")

    report, exact = _solve(config, config.cells)
    solution = report.solution
    grid = solution.grid
    results = [CheckResult("pde_l1", pdesolver.l1_error(solution, exact), config.tolerance("pde_l1"))]

    slope, orders = convergence_order(config)
    results.append(CheckResult(
        "order_dev", abs(slope - 1.0), config.tolerance("order_dev"),
        detail=f"fitted order {slope:.3f}; pairwise {', '.join(f'{o:.3f}' for o in orders)}",
    ))

    # the atom carries exactly one unit of first moment at every time
    start = closedform.cell_averages(params, t0, grid)
    discrete = solution.moment(1.0) - start.moment(1.0)
    analytic = closedform.moment(params, t1, 1.0) - closedform.moment(params, t0, 1.0)
    results.append(CheckResult("first_moment", relative_error(discrete, analytic), config.tolerance("first_moment")))

    results.append(CheckResult(
        "positivity", max(0.0, -float(solution.values.min())), config.tolerance("positivity"),
    ))

    front = closedform.front_location(params, t1)
    found = pdesolver.numerical_front(solution, 0.5 * closedform.front_jump(params, t1))
    width = grid.widths[grid.locate(front)]
    results.append(CheckResult("front_cells", abs(found - front) / width, config.tolerance("front_cells")))

    atom = pdesolver.atom_ode_check(params, t1)
    expected = closedform.atom_state(params, t1)
    results.append(CheckResult(
        "atom_ode",
        max(relative_error(atom.location, expected.location), relative_error(atom.mass, expected.mass)),
        config.tolerance("atom_ode"),
    ))
    logger.info(f"PDE checks done: {sum(r.passed for r in results)}/{len(results)} passed")
    return results
