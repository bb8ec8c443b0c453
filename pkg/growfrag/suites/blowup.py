"""
Finite-time blow-up of the moments as gamma t -> 1.

Moments of order r > 1 grow like (1 - gamma t)^(-(r-1)/gamma), the first
moment like -log(1 - gamma t), and moments of order r < 1 stay bounded.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Sequence

import numpy as np
import pandas as pd

from .. import closedform
from ..config import RunConfig
from ..model import ProblemParams
from .checks import CheckResult, relative_error

logger = logging.getLogger('growfrag.suites.blowup')

DEFECT_EXPONENTS = (2, 3, 4, 5, 6)
POWER_ORDERS = (0.5, 2.0, 3.3)

MOMENT_COLUMNS = ["t", "r", "moment", "scaled_moment", "limit_constant", "rel_err"]


def _row(params: ProblemParams, t: float, r: float) -> dict:
    value = closedform.moment(params, t, r)
    limit = closedform.blowup_constant(params, r)
    if t == 0:
        # no blow-up normalisation at the initial time
        return {"t": t, "r": r, "moment": value, "scaled_moment": np.nan, "limit_constant": limit, "rel_err": np.nan}
    scaled = closedform.scaled_moment(params, t, r)
    return {
        "t": t,
        "r": r,
        "moment": value,
        "scaled_moment": scaled,
        "limit_constant": limit,
        "rel_err": relative_error(scaled, limit),
    }


def moment_table(params: ProblemParams, times: Sequence[float], orders: Sequence[float], jobs: int = 1) -> pd.DataFrame:
    """
    Moments, scaled moments and their blow-up limits on a (t, r) grid.

    Rows come out in (t, r) order whatever the number of worker threads.
    """
    cases = [(t, r) for t in times for r in orders]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        rows = list(pool.map(lambda case: _row(params, *case), cases))
    return pd.DataFrame(rows, columns=MOMENT_COLUMNS)


def blowup_times(params: ProblemParams, exponents: Sequence[int] = DEFECT_EXPONENTS) -> List[float]:
    """Times with 1 - gamma t = 10^-k."""
    return [(1.0 - 10.0 ** (-k)) / params.gamma for k in exponents]


def log_rate_slope(params: ProblemParams, t_early: float, t_late: float) -> float:
    """Increase of the first moment per unit of -log(1 - gamma t) between two times."""
    rise = closedform.moment(params, t_late, 1.0) - closedform.moment(params, t_early, 1.0)
    run = np.log1p(-params.gamma * t_early) - np.log1p(-params.gamma * t_late)
    return float(rise / run)


def run_blowup_checks(config: RunConfig) -> List[CheckResult]:
    """
    Compare scaled moments at 1 - gamma t = 10^-2 ... 10^-6 with their limits.

    For r in {0.5, 2, 3.3} the scaled moment must reach its limit within
    tolerance at 10^-6. The first moment is checked through its slope against
    -log(1 - gamma t) between the last two times, and the ratio
    moment / -log(1 - gamma t) must approach its limit monotonically.

    Args:
        config: Validated run configuration

    Returns:
        List of CheckResult, one per check
    """
    params = config.params()
    times = blowup_times(params)
    logger.info(f"Blow-up checks for gamma={params.gamma}, theta={params.theta} at {len(times)} times")
    table = moment_table(params, times, POWER_ORDERS + (1.0,), jobs=config.jobs)

    results = []
    final = table[table["t"] == times[-1]]
    for r in POWER_ORDERS:
        err = float(final.loc[final["r"] == r, "rel_err"].iloc[0])
        results.append(CheckResult(f"blowup_r{r:g}", err, config.tolerance("blowup")))

    slope = log_rate_slope(params, times[-2], times[-1])
    results.append(CheckResult(
        "log_rate", relative_error(slope, closedform.log_rate_constant(params)), config.tolerance("log_rate"),
        detail=f"slope {slope:.8g}",
    ))

    ratio_errors = table.loc[table["r"] == 1.0, "rel_err"].to_numpy()
    increases = np.diff(ratio_errors)
    results.append(CheckResult(
        "log_ratio_monotone", float(max(0.0, increases.max())), 0.0,
        detail=f"ratio errors {', '.join(f'{e:.3e}' for e in ratio_errors)}",
    ))
    logger.info(f"Blow-up checks done: {sum(r.passed for r in results)}/{len(results)} passed")
    return results
