"""
Numerical Mellin analysis of the explicit solution.

- forward_mellin: transform of a snapshot by quadrature
- inverse_mellin_regular: pointwise inversion of Omega along a vertical line
- mellin_ode_residual: residual of d/dt Omega(t, s) = Phi(s) Omega(t, s + gamma)
- beta_moment_integral, mellin_of_v: the Mellin identities behind uniqueness
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from . import closedform
from .closedform import SolutionSnapshot
from .errors import ContourTooShort, InvalidDomain, InvalidParam
from .model import ProblemParams, phi
from .specfun import hyp2f1, log_gamma

logger = logging.getLogger('growfrag.mellin')

MIN_CONTOUR_NODES = 16
ROOT_PRODUCT_RTOL = 1e-12
FRONT_EXCLUSION = 1e-6
TAIL_FIT_FRACTION = 0.1


@dataclass(frozen=True)
class ContourSpec:
    """Truncated vertical contour Re s = s0, |Im s| <= height, sampled at ``nodes`` points."""

    s0: float = 1.0
    height: float = 400.0
    nodes: int = 20000

    def __post_init__(self):
        if not self.s0 > 0:
            raise InvalidDomain(f"Contour abscissa must be > 0, got {self.s0}")
        if not self.height > 0:
            raise InvalidParam(f"Contour height must be > 0, got {self.height}")
        if self.nodes < MIN_CONTOUR_NODES:
            raise InvalidParam(f"Contour needs at least {MIN_CONTOUR_NODES} nodes, got {self.nodes}")

    def points(self) -> np.ndarray:
        return self.s0 + 1j * np.linspace(-self.height, self.height, self.nodes)


@dataclass(frozen=True)
class ContourResult:
    """Inverse transform value together with its estimated truncation tail."""

    value: float
    tail_estimate: float


def forward_mellin(snapshot: SolutionSnapshot, s: complex, method: str = "adaptive") -> complex:
    """
    Mellin transform of a snapshot at s.

    Args:
        snapshot: Exact solution at some time
        s: Complex point with Re s > 0
        method: "adaptive" integrates the closed-form density with panel
            doubling; "grid" integrates x^(s-1) exactly over each cell against
            the piecewise-constant snapshot values

    Returns:
        Atom image plus the transform of the regular part

    Raises:
        InvalidDomain: If Re s <= 0
        QuadratureFailure: If the adaptive rule misses its tolerance
    """
    s = complex(s)
    if s.real <= 0:
        raise InvalidDomain(f"Mellin variable must satisfy Re s > 0, got {s}")
    atom = complex(snapshot.atom.mellin(s))

    if method == "adaptive":
        regular = closedform.regular_mellin_quadrature(snapshot.params, snapshot.t, s)
    elif method == "grid":
        edges = snapshot.regular.grid.edges.astype(np.complex128)
        regular = complex(np.sum(snapshot.regular.values * (edges[1:] ** s - edges[:-1] ** s)) / s)
    else:
        raise ValueError(f"Unknown forward Mellin method: {method}")
    return atom + regular


def _step_image(params: ProblemParams, t: float, s: np.ndarray) -> np.ndarray:
    # Mellin image of the jump theta t (1 - gamma t)^(2/gamma) H(front - x)
    log_defect = np.log1p(-params.gamma * t)
    return params.theta * t * np.exp((2.0 - s) / params.gamma * log_defect) / s


def inverse_mellin_regular_detailed(
    params: ProblemParams,
    t: float,
    x: float,
    contour: ContourSpec,
    tol: float = 1e-4,
) -> ContourResult:
    """
    Recover u^R(t, x) from its Mellin transform.

    The atom image and the image of the front step are removed from Omega
    before the trapezoid sum along Re s = s0, leaving an integrand that decays
    like |s|^-2; the step is added back in x. The tail beyond the truncation
    height is estimated from the decay constant fitted on the outer nodes.

    Args:
        params: Problem parameters
        t: Time in (0, 1/gamma)
        x: Size, > 0 and not within a relative 1e-6 of the front
        contour: Truncated contour
        tol: Largest acceptable tail estimate

    Returns:
        ContourResult with the reconstructed value and the tail estimate

    Raises:
        ContourTooShort: If the tail estimate exceeds ``tol``
        InvalidDomain: If x <= 0 or x sits on the front
    """
    if x <= 0:
        raise InvalidDomain(f"inverse Mellin needs x > 0, got {x}")
    front = closedform.front_location(params, t)
    if abs(x - front) <= FRONT_EXCLUSION * front:
        raise InvalidDomain(f"x = {x} is on the front {front}; the inverse is not pointwise there")

    s = contour.points()
    remainder = np.asarray(closedform.omega_regular(params, t, s)) - _step_image(params, t, s)
    integrand = np.exp(-s * np.log(x)) * remainder
    value = float(integrate.trapezoid(integrand, s.imag).real / (2.0 * np.pi))
    if x < front:
        value += closedform.front_jump(params, t)

    outer = np.abs(s.imag) >= (1.0 - TAIL_FIT_FRACTION) * contour.height
    decay = float(np.max(np.abs(remainder[outer]) * np.abs(s[outer]) ** 2))
    separation = abs(np.log(x / front))
    tail = (
        x ** (-contour.s0) * decay / (np.pi * contour.height)
        * min(1.0, 1.0 / (contour.height * separation))
    )
    logger.debug(
        f"Inverse Mellin at t={t}, x={x}: value {value:.12g}, fitted C={decay:.3e}, tail {tail:.3e}"
    )
    if tail > tol:
        raise ContourTooShort(
            f"Tail estimate {tail:.3e} exceeds {tol:.1e} at height {contour.height}; raise the height"
        )
    return ContourResult(value=value, tail_estimate=tail)


def inverse_mellin_regular(
    params: ProblemParams, t: float, x: float, contour: ContourSpec, tol: float = 1e-4
) -> float:
    """Value of inverse_mellin_regular_detailed."""
    return inverse_mellin_regular_detailed(params, t, x, contour, tol).value


def mellin_ode_residual(params: ProblemParams, t: float, s: complex, dt: float) -> float:
    """
    Residual |(Omega(t+dt, s) - Omega(t-dt, s)) / (2 dt) - Phi(s) Omega(t, s + gamma)|.

    Raises:
        InvalidParam: If dt is not below min(t, 1/gamma - t) / 2
        InvalidDomain: If Re s <= 0
    """
    if not 0 < dt < min(t, params.blowup_time - t) / 2.0:
        raise InvalidParam(f"dt = {dt} must lie in (0, min(t, 1/gamma - t)/2) for t = {t}")
    derivative = (closedform.omega(params, t + dt, s) - closedform.omega(params, t - dt, s)) / (2.0 * dt)
    rhs = phi(params, s) * closedform.omega(params, t, s + params.gamma)
    return float(abs(derivative - rhs))


def _check_moment_args(params: ProblemParams, t: float, s: complex) -> None:
    if complex(s).real <= 0:
        raise InvalidDomain(f"Mellin variable must satisfy Re s > 0, got {s}")
    if not 0 < params.gamma * t < 1:
        raise InvalidParam(f"t = {t} outside (0, {params.blowup_time})")


def beta_moment_integral(params: ProblemParams, t: float, n: int, s: complex) -> complex:
    """
    Closed form of the integral of (1 + (gamma t - 1) x^gamma)^n x^(s-1) over (0, front):

        (1 - gamma t)^(-s/gamma) Gamma(n + 1) Gamma(s/gamma) / (gamma Gamma(1 + s/gamma + n))

    Raises:
        InvalidParam: If n is not a non-negative integer or t is outside (0, 1/gamma)
        PoleError: If a Gamma argument is a pole
    """
    if int(n) != n or n < 0:
        raise InvalidParam(f"n must be a non-negative integer, got {n}")
    _check_moment_args(params, t, s)
    g = params.gamma
    c = complex(s) / g
    log_value = (
        -c * np.log1p(-g * t)
        + log_gamma(n + 1.0)
        + log_gamma(c)
        - log_gamma(1.0 + c + n)
    )
    return complex(np.exp(log_value) / g)


def beta_moment_quadrature(params: ProblemParams, t: float, n: int, s: complex) -> complex:
    """QUADPACK evaluation of the same integral in y = log x."""
    _check_moment_args(params, t, s)
    g = params.gamma
    s = complex(s)
    y_front = np.log(closedform.front_location(params, t))

    def integrand(y):
        return (1.0 + (g * t - 1.0) * np.exp(g * y)) ** n * np.exp(s * y)

    re, _ = integrate.quad(lambda y: integrand(y).real, -np.inf, y_front, epsabs=0.0, epsrel=1e-12, limit=400)
    im, _ = integrate.quad(lambda y: integrand(y).imag, -np.inf, y_front, epsabs=0.0, epsrel=1e-12, limit=400)
    return complex(re, im)


def mellin_of_v(params: ProblemParams, t: float, s: complex) -> complex:
    """
    Mellin transform of v = u^R / (theta t (1 - gamma t)^(2/gamma)):

        (1 - gamma t)^(-s/gamma) (F(s1/g, s2/g; s/g; gamma t) - 1) / (theta t)

    theta is used as the product sigma1 * sigma2, which is checked.

    Raises:
        InvalidParam: If sigma1 * sigma2 differs from theta
    """
    _check_moment_args(params, t, s)
    product = params.sigma1 * params.sigma2
    if abs(product - params.theta) > ROOT_PRODUCT_RTOL * params.theta:
        raise InvalidParam(f"sigma1 * sigma2 = {product} differs from theta = {params.theta}")
    g = params.gamma
    s = complex(s)
    series = hyp2f1(params.sigma1 / g, params.sigma2 / g, s / g, g * t)
    return complex(np.exp(-s / g * np.log1p(-g * t)) * (series - 1.0) / (params.theta * t))


def reassembled_omega(params: ProblemParams, t: float, s: complex) -> complex:
    """Atom image plus theta t (1 - gamma t)^(2/gamma) times the transform of v."""
    atom = complex(closedform.atom_state(params, t).mellin(s))
    return atom + closedform.front_jump(params, t) * mellin_of_v(params, t, s)
