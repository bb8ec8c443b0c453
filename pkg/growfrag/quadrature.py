"""
Composite Gauss-Legendre quadrature with panel doubling.

Integrands are evaluated on all nodes at once, so they must accept numpy
arrays. Results are accumulated panel by panel in a fixed order, which keeps
repeated runs bit-identical.
"""

import logging
from functools import lru_cache
from typing import Callable, Sequence, Tuple

import numpy as np

from .errors import QuadratureFailure

logger = logging.getLogger('growfrag.quadrature')

GAUSS_ORDER = 20
MAX_DOUBLINGS = 8


@lru_cache(maxsize=16)
def gauss_legendre(order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [-1, 1]."""
    return np.polynomial.legendre.leggauss(order)


def _panel_sum(func: Callable, edges: np.ndarray, order: int):
    nodes, weights = gauss_legendre(order)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    points = mid[:, None] + half[:, None] * nodes[None, :]
    values = np.asarray(func(points.ravel())).reshape(points.shape)
    return np.sum((values * weights[None, :]).sum(axis=1) * half)


def composite_gauss(
    func: Callable[[np.ndarray], np.ndarray],
    breakpoints: Sequence[float],
    panels: int = 16,
    order: int = GAUSS_ORDER,
    rtol: float = 1e-10,
    atol: float = 0.0,
    max_doublings: int = MAX_DOUBLINGS,
):
    """
    Integrate ``func`` over [breakpoints[0], breakpoints[-1]].

    Each interval between consecutive breakpoints is split into ``panels``
    equal panels; the panel count doubles until two successive estimates
    agree to ``rtol`` (relative) or ``atol`` (absolute).

    Args:
        func: Vectorised integrand (real or complex valued)
        breakpoints: Increasing points where the integrand may be non-smooth
        panels: Initial panels per interval
        order: Gauss-Legendre nodes per panel
        rtol: Relative tolerance
        atol: Absolute tolerance
        max_doublings: Maximum number of panel doublings

    Returns:
        Tuple of (value, error estimate)

    Raises:
        QuadratureFailure: If the tolerance is not met after max_doublings doublings
    """
    breakpoints = np.asarray(breakpoints, dtype=float)

    def estimate(n: int):
        edges = np.concatenate(
            [np.linspace(lo, hi, n + 1)[:-1] for lo, hi in zip(breakpoints[:-1], breakpoints[1:])]
            + [breakpoints[-1:]]
        )
        return _panel_sum(func, edges, order)

    previous = estimate(panels)
    for doubling in range(1, max_doublings + 1):
        panels *= 2
        current = estimate(panels)
        error = abs(current - previous)
        if error <= max(atol, rtol * abs(current)):
            logger.debug(f"Composite Gauss converged with {panels} panels, error {error:.3e}")
            return current, error
        previous = current

    raise QuadratureFailure(
        f"Composite Gauss did not reach rtol={rtol} with {panels} panels "
        f"(last change {error:.3e}, value {current})"
    )
