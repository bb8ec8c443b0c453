"""
Explicit solution of the growth-fragmentation problem with initial data
delta(x - 1) and the constant kernel theta * H(1 - x).

The solution is the sum of an atom riding the growth characteristic and a
regular density cut off at the same moving front:

    u(t) = m(t) delta(x - X(t)) + u^R(t, x),
    X(t) = (1 - gamma t)^(-1/gamma),  m(t) = (1 - gamma t)^(1/gamma),
    u^R(t, x) = theta (1 - gamma t)^(2/gamma) t F(1 + s1/g, 1 + s2/g; 2; z) H(X(t) - x),
    z = gamma t (1 + (gamma t - 1) x^gamma).

Its Mellin transform is Omega(t, s) = F((s - s1)/g, (s - s2)/g; s/g; gamma t).
Everything here is defined for 0 <= t < 1/gamma only.
"""

import logging
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DegenerateConnectionError, InvalidDomain, InvalidParam, TimeOutOfRange
from .grid import GridFunction, RadialGrid
from .model import ProblemParams
from .quadrature import composite_gauss, gauss_legendre
from .specfun import hyp2f1, log_gamma

logger = logging.getLogger('growfrag.closedform')

ArrayOrScalar = Union[float, complex, np.ndarray]

R_ONE_TOL = 1e-12
IMAG_TOL = 1e-12
# e^-36 is below double precision relative to O(1) integrals
MELLIN_CUTOFF = 36.0
CELL_NODES = 4


@dataclass(frozen=True)
class AtomComponent:
    """Dirac mass of the solution: position and weight."""

    location: float
    mass: float

    def mellin(self, s: ArrayOrScalar) -> ArrayOrScalar:
        """Mellin image mass * location^(s - 1)."""
        return self.mass * np.exp((np.asarray(s, dtype=np.complex128) - 1.0) * np.log(self.location))


@dataclass(frozen=True, eq=False)
class SolutionSnapshot:
    """The exact solution at time t, with u^R sampled at grid centres."""

    t: float
    atom: AtomComponent
    regular: GridFunction
    params: ProblemParams


def _check_time(params: ProblemParams, t: float, allow_zero: bool = True) -> None:
    lower_ok = t >= 0 if allow_zero else t > 0
    if not (np.isfinite(t) and lower_ok and params.gamma * t < 1.0):
        bound = "[0" if allow_zero else "(0"
        raise TimeOutOfRange(f"t = {t} outside {bound}, {params.blowup_time})")


def _check_half_plane(s: ArrayOrScalar) -> None:
    if np.any(np.real(s) <= 0):
        raise InvalidDomain(f"Mellin variable must satisfy Re s > 0, got {s}")


def _defect_power(params: ProblemParams, t: float, exponent: ArrayOrScalar) -> ArrayOrScalar:
    """(1 - gamma t)^exponent for real or complex exponents."""
    return np.exp(np.asarray(exponent, dtype=np.complex128) * np.log1p(-params.gamma * t))


def _as_output(value: np.ndarray, like) -> ArrayOrScalar:
    return complex(value) if np.ndim(like) == 0 else value


def front_location(params: ProblemParams, t: float) -> float:
    """Right edge of the support, (1 - gamma t)^(-1/gamma)."""
    _check_time(params, t)
    return float((1.0 - params.gamma * t) ** (-1.0 / params.gamma))


def front_jump(params: ProblemParams, t: float) -> float:
    """Height of the jump of u^R at the front, theta t (1 - gamma t)^(2/gamma)."""
    _check_time(params, t)
    return float(params.theta * t * (1.0 - params.gamma * t) ** (2.0 / params.gamma))


def atom_state(params: ProblemParams, t: float) -> AtomComponent:
    """
    Location and mass of the atom at time t.

    Raises:
        TimeOutOfRange: If t < 0 or t >= 1/gamma
    """
    _check_time(params, t)
    defect = 1.0 - params.gamma * t
    return AtomComponent(
        location=float(defect ** (-1.0 / params.gamma)),
        mass=float(defect ** (1.0 / params.gamma)),
    )


def u_regular(params: ProblemParams, t: float, x: ArrayOrScalar) -> ArrayOrScalar:
    """
    Density of the absolutely continuous part of the solution.

    At x exactly on the front the interior limit theta t (1 - gamma t)^(2/gamma)
    is returned.

    Args:
        params: Problem parameters
        t: Time in (0, 1/gamma)
        x: Size(s), > 0; scalar or numpy array

    Returns:
        Real, non-negative value(s) of u^R(t, x)

    Raises:
        TimeOutOfRange: If t is outside (0, 1/gamma)
        InvalidDomain: If some x <= 0
    """
    _check_time(params, t, allow_zero=False)
    x_arr = np.asarray(x, dtype=float)
    if np.any(x_arr <= 0):
        raise InvalidDomain(f"u_regular requires x > 0, got min x = {x_arr.min()}")

    g = params.gamma
    gt = g * t
    inside = x_arr <= front_location(params, t)
    out = np.zeros(x_arr.shape)
    if np.any(inside):
        z = gt * (1.0 + (gt - 1.0) * x_arr[inside] ** g)
        series = np.asarray(hyp2f1(1.0 + params.sigma1 / g, 1.0 + params.sigma2 / g, 2.0, z))
        residue = float(np.max(np.abs(series.imag)))
        if residue > IMAG_TOL * max(1.0, float(np.max(np.abs(series.real)))):
            logger.debug(f"u_regular: imaginary residue {residue:.3e} discarded")
        out[inside] = front_jump(params, t) * series.real

    return float(out) if out.ndim == 0 else out


def omega(params: ProblemParams, t: float, s: ArrayOrScalar, form: str = "direct") -> ArrayOrScalar:
    """
    Mellin transform Omega(t, s) of the full solution.

    Args:
        params: Problem parameters
        t: Time in [0, 1/gamma)
        s: Complex scalar or array with Re s > 0
        form: "direct" for F((s - s1)/g, (s - s2)/g; s/g; gamma t), "euler" for
            (1 - gamma t)^((2 - s)/g) F(s1/g, s2/g; s/g; gamma t)

    Returns:
        Complex value(s)

    Raises:
        InvalidDomain: If Re s <= 0
        TimeOutOfRange: If t is outside [0, 1/gamma)
        ValueError: On an unknown form
    """
    _check_half_plane(s)
    _check_time(params, t)
    g = params.gamma
    s_arr = np.asarray(s, dtype=np.complex128)

    if form == "direct":
        value = hyp2f1((s_arr - params.sigma1) / g, (s_arr - params.sigma2) / g, s_arr / g, g * t)
    elif form == "euler":
        value = _defect_power(params, t, (2.0 - s_arr) / g) * hyp2f1(
            params.sigma1 / g, params.sigma2 / g, s_arr / g, g * t
        )
    else:
        raise ValueError(f"Unknown form for omega: {form}")
    return _as_output(np.asarray(value), s)


def complex_moment(params: ProblemParams, t: float, s: ArrayOrScalar) -> ArrayOrScalar:
    """Integral of x^(s-1) u(t, dx) for complex s, equal to Omega(t, s)."""
    return omega(params, t, s)


def omega_regular(params: ProblemParams, t: float, s: ArrayOrScalar) -> ArrayOrScalar:
    """
    Mellin transform of u^R alone: Omega minus the atom image.

    Uses the Euler form, (1 - gamma t)^((2 - s)/g) (F(s1/g, s2/g; s/g; gamma t) - 1),
    which stays accurate for large |Im s| where the direct form cancels.
    """
    _check_half_plane(s)
    _check_time(params, t)
    g = params.gamma
    s_arr = np.asarray(s, dtype=np.complex128)
    series = hyp2f1(params.sigma1 / g, params.sigma2 / g, s_arr / g, g * t)
    value = _defect_power(params, t, (2.0 - s_arr) / g) * (np.asarray(series) - 1.0)
    return _as_output(value, s)


def regular_mellin_quadrature(params: ProblemParams, t: float, s: complex, rtol: float = 1e-11) -> complex:
    """
    Quadrature of the integral of x^(s-1) u^R(t, x) over (0, front].

    Integrates in y = log x, where the integrand is smooth up to the front, by
    composite Gauss-Legendre with panel doubling.

    Raises:
        QuadratureFailure: If the tolerance is not reached
    """
    _check_half_plane(s)
    _check_time(params, t, allow_zero=False)
    s = complex(s)
    y_front = np.log(front_location(params, t))
    y_low = min(y_front - 1.0, -MELLIN_CUTOFF / s.real)

    def integrand(y):
        return np.exp(s * y) * u_regular(params, t, np.exp(y))

    value, error = composite_gauss(integrand, [y_low, y_front], rtol=rtol)
    logger.debug(f"Mellin quadrature of u^R at t={t}, s={s}: {value} (error {error:.2e})")
    return complex(value)


def moment(params: ProblemParams, t: float, r: float) -> float:
    """
    Moment of order r: the integral of x^r u(t, dx), equal to Re Omega(t, r + 1).

    When Omega's connection formula is degenerate (r = 1 close to blow-up),
    the atom is added to a quadrature of the closed-form density instead.

    Raises:
        InvalidParam: If r <= -1
        TimeOutOfRange: If t is outside [0, 1/gamma)
    """
    if r <= -1:
        raise InvalidParam(f"moment order must be > -1, got {r}")
    s = r + 1.0
    try:
        value = complex(omega(params, t, s))
    except DegenerateConnectionError as e:
        logger.warning(f"Omega degenerate at t={t}, r={r} ({e}); using quadrature of the density")
        value = complex(atom_state(params, t).mellin(s)) + regular_mellin_quadrature(params, t, s)

    if abs(value.imag) > IMAG_TOL * max(1.0, abs(value.real)):
        logger.debug(f"moment t={t} r={r}: imaginary part {value.imag:.3e} discarded")
    return value.real


def _gamma_ratio(numer, denom) -> complex:
    return complex(np.exp(sum(log_gamma(a) for a in numer) - sum(log_gamma(b) for b in denom)))


def log_rate_constant(params: ProblemParams) -> float:
    """Gamma(2/g) / (Gamma(s1/g) Gamma(s2/g)), the rate of logarithmic first-moment blow-up."""
    g = params.gamma
    return _gamma_ratio([2.0 / g], [params.sigma1 / g, params.sigma2 / g]).real


def blowup_constant(params: ProblemParams, r: float) -> float:
    """
    Limit of the scaled moment of order r as gamma t -> 1.

    Args:
        params: Problem parameters
        r: Moment order, > 0; r = 1 gives the logarithmic rate constant

    Returns:
        Real constant

    Raises:
        InvalidParam: If r <= 0
        PoleError: If a Gamma argument is a pole
    """
    if r <= 0:
        raise InvalidParam(f"blow-up constants need r > 0, got {r}")
    g = params.gamma
    s1, s2 = params.sigma1, params.sigma2

    if abs(r - 1.0) < R_ONE_TOL:
        return log_rate_constant(params)
    if r > 1.0:
        value = _gamma_ratio([(r + 1.0) / g, (r - 1.0) / g], [(r + 1.0 - s1) / g, (r + 1.0 - s2) / g])
    else:
        value = _gamma_ratio([(r + 1.0) / g, (1.0 - r) / g], [s1 / g, s2 / g])
    logger.debug(f"blow-up constant r={r}: {value}")
    return value.real


def scaled_moment(params: ProblemParams, t: float, r: float) -> float:
    """
    Moment of order r times its blow-up normalisation.

    r > 1 is multiplied by (1 - gamma t)^((r - 1)/g), r = 1 divided by
    -log(1 - gamma t), and r in (0, 1) is left unscaled.
    """
    _check_time(params, t, allow_zero=False)
    value = moment(params, t, r)
    if abs(r - 1.0) < R_ONE_TOL:
        return value / -np.log1p(-params.gamma * t)
    if r > 1.0:
        return value * (1.0 - params.gamma * t) ** ((r - 1.0) / params.gamma)
    return value


def profile_limit(params: ProblemParams, x: ArrayOrScalar) -> ArrayOrScalar:
    """
    Limit of u^R as gamma t -> 1: g Gamma(2/g) / (Gamma(s1/g) Gamma(s2/g)) (1 + x^g)^(-2/g).

    Raises:
        InvalidDomain: If some x <= 0
        PoleError: If a Gamma argument is a pole
    """
    x_arr = np.asarray(x, dtype=float)
    if np.any(x_arr <= 0):
        raise InvalidDomain(f"profile_limit requires x > 0, got min x = {x_arr.min()}")
    g = params.gamma
    value = g * log_rate_constant(params) * (1.0 + x_arr ** g) ** (-2.0 / g)
    return float(value) if value.ndim == 0 else value


def snapshot(params: ProblemParams, t: float, grid: RadialGrid) -> SolutionSnapshot:
    """Sample the exact solution at time t on a grid."""
    return SolutionSnapshot(
        t=t,
        atom=atom_state(params, t),
        regular=GridFunction(grid=grid, values=u_regular(params, t, grid.centers)),
        params=params,
    )


def cell_averages(params: ProblemParams, t: float, grid: RadialGrid, nodes: int = CELL_NODES) -> GridFunction:
    """
    Cell averages of u_regular at time t, by Gauss-Legendre on each cell.

    The cell cut by the front is integrated up to the front only, so the
    jump never falls between two nodes.
    """
    lower = grid.edges[:-1]
    covered = np.clip(np.minimum(grid.edges[1:], front_location(params, t)) - lower, 0.0, None)
    values = np.zeros(grid.size)
    active = covered > 0
    if np.any(active):
        x, w = gauss_legendre(nodes)
        half = 0.5 * covered[active]
        points = (lower[active] + half)[:, None] + half[:, None] * x[None, :]
        samples = u_regular(params, t, points)
        values[active] = half * (samples @ w) / grid.widths[active]
    return GridFunction(grid=grid, values=values)
