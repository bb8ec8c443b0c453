"""
Direct numerical checks of the explicit solution.

The regular part obeys

    d/dt u + d/dx(x^(g+1) u) + x^g u = theta int_x^inf y^(g-1) u(y) dy
                                       + theta (1 - g t)^((2-g)/g) H(X(t) - x),

where the last term is the fragmentation gain fed by the atom. It is
advanced by a conservative first-order upwind finite-volume scheme with
explicit Euler steps. The atom is checked separately along its
characteristic, and the full measure is tested against the weak form of the
equation with smooth product bumps.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from numpy.polynomial import Polynomial

from . import closedform
from .closedform import AtomComponent
from .errors import CFLViolation, DomainTooSmall, InvalidParam, QuadratureFailure, TimeOutOfRange
from .grid import GridFunction, RadialGrid
from .model import ProblemParams
from .quadrature import gauss_legendre

logger = logging.getLogger('growfrag.pdesolver')

ATOM_STEP = 1e-4
MIN_WEAK_NODES = 64

__all__ = [
    "RadialGrid",
    "GridFunction",
    "Bump",
    "WeakTestFunction",
    "ClosedFormTrial",
    "ZeroTrial",
    "SolveReport",
    "gain_integral",
    "source_term",
    "solve_regular",
    "solve_regular_detailed",
    "atom_ode_check",
    "weak_residual",
    "l1_error",
    "numerical_front",
    "moment",
]


# Gain operator and source

def gain_integral(params: ProblemParams, f: GridFunction, x: float) -> float:
    """
    theta times the integral of f(y) y^(g-1) over (x, inf) for piecewise-constant f.

    Each cell contributes f_j (e_{j+1}^g - e_j^g) / g; the cell containing x
    contributes only its part above x. Zero at and beyond the top edge.
    """
    grid = f.grid
    g = params.gamma
    if x >= grid.x_max:
        return 0.0
    x = max(x, grid.x_min)
    k = grid.locate(x)
    upper = grid.edges[k + 1:]
    lower = grid.edges[k:-1]
    lower = np.concatenate(([x], lower[1:]))
    return float(params.theta * np.sum(f.values[k:] * (upper ** g - lower ** g)) / g)


def _gain_at_centers(params: ProblemParams, grid: RadialGrid, values: np.ndarray) -> np.ndarray:
    g = params.gamma
    edges_g = grid.edges ** g
    cell = values * (edges_g[1:] - edges_g[:-1]) / g
    above = np.concatenate((np.cumsum(cell[::-1])[::-1][1:], [0.0]))
    partial = values * (edges_g[1:] - grid.centers ** g) / g
    return params.theta * (above + partial)


def source_term(params: ProblemParams, grid: RadialGrid, t: float) -> np.ndarray:
    """
    Cell averages of theta (1 - g t)^((2-g)/g) H(front(t) - x).

    The cell cut by the front receives the covered fraction of its width.
    """
    front = closedform.front_location(params, t)
    height = params.theta * (1.0 - params.gamma * t) ** ((2.0 - params.gamma) / params.gamma)
    covered = np.clip((front - grid.edges[:-1]) / grid.widths, 0.0, 1.0)
    return height * covered


# Finite-volume solver

@dataclass(frozen=True, eq=False)
class SolveReport:
    """Solver output and its stepping statistics."""

    solution: GridFunction
    t0: float
    t1: float
    steps: int
    dt: float


def _stable_step(params: ProblemParams, grid: RadialGrid, cfl: float) -> float:
    g = params.gamma
    widths = grid.widths
    rate = grid.edges[1:] ** (g + 1.0) + widths * grid.centers ** g
    return cfl * float(np.min(widths / rate))


def solve_regular_detailed(
    params: ProblemParams,
    t0: float,
    t1: float,
    grid: RadialGrid,
    cfl: float = 0.9,
) -> SolveReport:
    """
    Evolve u^R from its exact cell averages at t0 to t1.

    Args:
        params: Problem parameters
        t0: Start time, in (0, 1/gamma)
        t1: End time, t0 <= t1 < 1/gamma
        grid: Spatial grid whose top edge lies above the front at t1
        cfl: Courant number in (0, 1]

    Returns:
        SolveReport with the solution at t1

    Raises:
        CFLViolation: If cfl is outside (0, 1]
        TimeOutOfRange: If the times are not ordered inside (0, 1/gamma)
        DomainTooSmall: If the front at t1 reaches the top of the grid
    """
    if not 0 < cfl <= 1:
        raise CFLViolation(f"cfl must lie in (0, 1], got {cfl}")
    if not (0 < t0 <= t1 and params.gamma * t1 < 1):
        raise TimeOutOfRange(f"Need 0 < t0 <= t1 < {params.blowup_time}, got t0={t0}, t1={t1}")
    front = closedform.front_location(params, t1)
    if front >= grid.x_max:
        raise DomainTooSmall(f"Front {front:.6g} at t1={t1} leaves the grid (x_max={grid.x_max})")

    g = params.gamma
    u = closedform.cell_averages(params, t0, grid).values.copy()
    if t1 == t0:
        return SolveReport(solution=GridFunction(grid, u), t0=t0, t1=t1, steps=0, dt=0.0)

    steps = int(np.ceil((t1 - t0) / _stable_step(params, grid, cfl)))
    dt = (t1 - t0) / steps
    logger.info(f"Solving u^R on {grid.size} cells from t={t0} to t={t1}: {steps} steps of {dt:.3e}")

    speed = grid.edges ** (g + 1.0)
    loss = grid.centers ** g
    widths = grid.widths
    flux = np.empty(grid.size + 1)
    for k in range(steps):
        t = t0 + k * dt
        # upwind edge fluxes, zero-gradient inflow at x_min
        flux[0] = speed[0] * u[0]
        flux[1:] = speed[1:] * u
        rhs = (
            -(flux[1:] - flux[:-1]) / widths
            - loss * u
            + _gain_at_centers(params, grid, u)
            + source_term(params, grid, t)
        )
        u = u + dt * rhs

    logger.info(f"Finished at t={t1}; min value {u.min():.3e}")
    return SolveReport(solution=GridFunction(grid, u), t0=t0, t1=t1, steps=steps, dt=dt)


def solve_regular(
    params: ProblemParams,
    t0: float,
    t1: float,
    grid: RadialGrid,
    cfl: float = 0.9,
) -> GridFunction:
    """Solution at t1 of solve_regular_detailed."""
    return solve_regular_detailed(params, t0, t1, grid, cfl).solution


def l1_error(
    f: GridFunction,
    reference: GridFunction,
    exclude: Optional[Tuple[float, float]] = None,
) -> float:
    """
    Relative L1 distance ||f - reference|| / ||reference|| on a shared grid.

    Cells whose centres fall in ``exclude`` are left out of both norms.
    """
    if not np.array_equal(f.grid.edges, reference.grid.edges):
        raise ValueError("l1_error needs both functions on the same grid")
    mask = None
    if exclude is not None:
        lo, hi = exclude
        mask = ~((f.grid.centers >= lo) & (f.grid.centers <= hi))
    difference = GridFunction(f.grid, f.values - reference.values)
    return difference.l1_norm(mask) / reference.l1_norm(mask)


def numerical_front(f: GridFunction, threshold: float) -> float:
    """Centre of the last cell whose value exceeds ``threshold`` (nan if none)."""
    above = np.nonzero(f.values > threshold)[0]
    if above.size == 0:
        return float("nan")
    return float(f.grid.centers[above[-1]])


def moment(f: GridFunction, r: float) -> float:
    """Integral of x^r f over the grid."""
    return f.moment(r)


# Atom characteristic

def atom_ode_check(params: ProblemParams, t1: float) -> AtomComponent:
    """
    Integrate X' = X^(1+g), m' = -X^g m from (X, m) = (1, 1) with RK4.

    The step is 1e-4/gamma, shortened so that t1 is hit exactly.

    Raises:
        TimeOutOfRange: If t1 is outside [0, 1/gamma)
    """
    if not (0 <= t1 and params.gamma * t1 < 1):
        raise TimeOutOfRange(f"t1 = {t1} outside [0, {params.blowup_time})")
    g = params.gamma

    def rhs(state):
        x, m = state
        return np.array([x ** (1.0 + g), -(x ** g) * m])

    state = np.array([1.0, 1.0])
    steps = int(np.ceil(t1 / (ATOM_STEP / g)))
    if steps:
        h = t1 / steps
        for _ in range(steps):
            k1 = rhs(state)
            k2 = rhs(state + 0.5 * h * k1)
            k3 = rhs(state + 0.5 * h * k2)
            k4 = rhs(state + h * k3)
            state = state + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    logger.debug(f"Atom ODE: {steps} RK4 steps to t={t1}, state {state}")
    return AtomComponent(location=float(state[0]), mass=float(state[1]))


# Weak formulation

_BUMP = Polynomial([1.0, 0.0, -1.0]) ** 4
_BUMP_DERIV = _BUMP.deriv()
_BUMP_INTEG = _BUMP.integ(lbnd=-1.0)


@dataclass(frozen=True)
class Bump:
    """The C^3 bump (1 - xi^2)^4, xi = (x - center) / half_width, zero outside |xi| < 1."""

    center: float
    half_width: float

    def __post_init__(self):
        if not self.half_width > 0:
            raise InvalidParam(f"Bump half width must be > 0, got {self.half_width}")

    @property
    def support(self) -> Tuple[float, float]:
        return self.center - self.half_width, self.center + self.half_width

    def _xi(self, x):
        return np.clip((np.asarray(x, dtype=float) - self.center) / self.half_width, -1.0, 1.0)

    def value(self, x):
        return _BUMP(self._xi(x))

    def derivative(self, x):
        return _BUMP_DERIV(self._xi(x)) / self.half_width

    def antiderivative(self, x):
        """Integral of the bump from -inf to x."""
        return self.half_width * _BUMP_INTEG(self._xi(x))


@dataclass(frozen=True)
class WeakTestFunction:
    """Product test function phi(t, x) = time_bump(t) * space_bump(x)."""

    time_bump: Bump
    space_bump: Bump

    def __post_init__(self):
        if self.space_bump.support[0] <= 0:
            raise InvalidParam(f"Space support {self.space_bump.support} must lie in (0, inf)")

    @classmethod
    def centered(cls, t: float, x: float, t_width: float, x_width: float) -> "WeakTestFunction":
        return cls(time_bump=Bump(t, t_width), space_bump=Bump(x, x_width))


class ClosedFormTrial:
    """The explicit solution, atom plus regular density."""

    def __init__(self, params: ProblemParams):
        self.params = params

    def atom(self, t: float) -> AtomComponent:
        return closedform.atom_state(self.params, t)

    def regular(self, t: float, x: np.ndarray) -> np.ndarray:
        return closedform.u_regular(self.params, t, x)

    def support_edge(self, t: float) -> float:
        return closedform.front_location(self.params, t)


class ZeroTrial:
    """The zero measure."""

    def atom(self, t: float) -> AtomComponent:
        return AtomComponent(location=1.0, mass=0.0)

    def regular(self, t: float, x: np.ndarray) -> np.ndarray:
        return np.zeros_like(x)

    def support_edge(self, t: float) -> float:
        return 0.0


def _weak_integrand(params: ProblemParams, phi: WeakTestFunction, t: float, x):
    # -phi_t - x^(g+1) phi_x + x^g phi - theta x^(g-1) int_0^x phi
    g = params.gamma
    x = np.asarray(x, dtype=float)
    tb, sb = phi.time_bump, phi.space_bump
    T, dT = tb.value(t), tb.derivative(t)
    return (
        -dT * sb.value(x)
        - x ** (g + 1.0) * T * sb.derivative(x)
        + x ** g * T * sb.value(x)
        - params.theta * x ** (g - 1.0) * T * sb.antiderivative(x)
    )


def weak_residual(
    params: ProblemParams,
    phi: WeakTestFunction,
    quad_nodes: int = 256,
    trial=None,
) -> float:
    """
    Absolute residual of the weak form against a product test function.

    Evaluates the time integral of <u(t), -phi_t - x^(g+1) phi_x + x^g phi>
    minus theta <u(t, y), y^(g-1) int_0^y phi(t, x) dx>. The atom enters as
    mass(t) times the integrand at location(t); the regular part uses
    Gauss-Legendre rules with ``quad_nodes`` points in t and on each smooth
    piece in x (the space support and the region from its top to the front).

    Args:
        params: Problem parameters
        phi: Product test function, time support inside (0, 1/gamma)
        quad_nodes: Gauss nodes per axis, >= 64
        trial: Measure to test (ClosedFormTrial by default, ZeroTrial for sanity)

    Returns:
        Absolute residual

    Raises:
        InvalidParam: On too few nodes or a time support outside (0, 1/gamma)
        QuadratureFailure: If the quadrature produces a non-finite value
    """
    if quad_nodes < MIN_WEAK_NODES:
        raise InvalidParam(f"weak_residual needs at least {MIN_WEAK_NODES} nodes, got {quad_nodes}")
    t_lo, t_hi = phi.time_bump.support
    if not (t_lo > 0 and params.gamma * t_hi < 1):
        raise InvalidParam(f"Time support {phi.time_bump.support} must lie in (0, {params.blowup_time})")
    trial = trial if trial is not None else ClosedFormTrial(params)

    nodes, weights = gauss_legendre(quad_nodes)
    x_lo, x_hi = phi.space_bump.support
    t_half = 0.5 * (t_hi - t_lo)
    times = 0.5 * (t_hi + t_lo) + t_half * nodes

    slices = np.empty(quad_nodes)
    for k, t in enumerate(times):
        atom = trial.atom(t)
        total = atom.mass * float(_weak_integrand(params, phi, t, atom.location))
        edge = trial.support_edge(t)
        for lo, hi in ((x_lo, min(x_hi, edge)), (x_hi, edge)):
            if hi <= lo:
                continue
            half = 0.5 * (hi - lo)
            x = 0.5 * (hi + lo) + half * nodes
            total += half * float(np.sum(weights * trial.regular(t, x) * _weak_integrand(params, phi, t, x)))
        slices[k] = total

    residual = abs(t_half * float(np.sum(weights * slices)))
    if not np.isfinite(residual):
        raise QuadratureFailure(f"Weak residual is not finite for {phi}")
    logger.debug(f"Weak residual with {quad_nodes} nodes: {residual:.3e}")
    return residual
