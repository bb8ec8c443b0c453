"""
Problem parameters and the symbols of the constant dislocation kernel.

The kernel is k0(x) = theta * H(1 - x). Its Mellin transform is K(s) = theta / s
and the cumulant-type function is Phi(s) = K(s) + s - 2, whose roots
sigma1, sigma2 = 1 -/+ sqrt(1 - theta) are complex conjugate for theta > 1.
"""

import logging
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy import integrate, optimize

from .errors import InvalidDomain, InvalidParam

logger = logging.getLogger('growfrag.model')

ArrayOrScalar = Union[float, complex, np.ndarray]

THETA_CRITICAL_TOL = 1e-12
SCAN_POINTS = 1000
SCAN_LOWER = 1e-3


@dataclass(frozen=True)
class ProblemParams:
    """Immutable problem parameters: growth exponent, kernel height and Phi's roots."""

    gamma: float
    theta: float
    sigma1: complex
    sigma2: complex

    @property
    def blowup_time(self) -> float:
        return 1.0 / self.gamma

    @property
    def conjugate_roots(self) -> bool:
        return self.theta > 1.0

    def to_dict(self) -> dict:
        return {
            "gamma": self.gamma,
            "theta": self.theta,
            "sigma1": str(self.sigma1),
            "sigma2": str(self.sigma2),
        }


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of the global-existence test inf_{s>0} Phi(s) < 0."""

    infimum: float
    minimizer: float
    satisfied: bool


def make_params(gamma: float, theta: float) -> ProblemParams:
    """
    Build ProblemParams and compute the roots of Phi.

    Args:
        gamma: Growth exponent, > 0
        theta: Kernel height, > 0 and != 1

    Returns:
        ProblemParams with sigma1 = 1 - sqrt(1 - theta), sigma2 = 1 + sqrt(1 - theta)

    Raises:
        InvalidParam: If gamma <= 0, theta <= 0 or theta is within 1e-12 of 1
    """
    if not np.isfinite(gamma) or gamma <= 0:
        raise InvalidParam(f"gamma must be > 0, got {gamma}")
    if not np.isfinite(theta) or theta <= 0:
        raise InvalidParam(f"theta must be > 0, got {theta}")
    if abs(theta - 1.0) < THETA_CRITICAL_TOL:
        raise InvalidParam(f"theta = {theta} gives a double root of Phi; not supported")

    root = np.sqrt(complex(1.0 - theta))
    params = ProblemParams(
        gamma=float(gamma),
        theta=float(theta),
        sigma1=complex(1.0 - root),
        sigma2=complex(1.0 + root),
    )
    logger.debug(f"Problem parameters: {params.to_dict()}")
    return params


def kernel_k0(params: ProblemParams, x: ArrayOrScalar) -> ArrayOrScalar:
    """Dislocation kernel theta * H(1 - x), with the value 0 at x = 1."""
    values = np.where(np.asarray(x) < 1.0, params.theta, 0.0)
    return float(values) if values.ndim == 0 else values


def _check_half_plane(s: ArrayOrScalar) -> None:
    if np.any(np.real(s) <= 0):
        raise InvalidDomain(f"Mellin variable must satisfy Re s > 0, got {s}")


def capital_k(params: ProblemParams, s: ArrayOrScalar) -> ArrayOrScalar:
    """
    Mellin transform of the kernel, K(s) = theta / s.

    Raises:
        InvalidDomain: If Re s <= 0
    """
    _check_half_plane(s)
    value = params.theta / np.asarray(s, dtype=np.complex128)
    return complex(value) if np.ndim(s) == 0 else value


def kernel_mellin_quadrature(params: ProblemParams, s: complex) -> complex:
    """
    Quadrature value of the integral of x^(s-1) k0(x) over (0, 1).

    The substitution x = exp(y) turns it into an integral over (-inf, 0).
    """
    _check_half_plane(s)
    s = complex(s)

    def real_part(y):
        return params.theta * np.exp(s.real * y) * np.cos(s.imag * y)

    def imag_part(y):
        return params.theta * np.exp(s.real * y) * np.sin(s.imag * y)

    re, _ = integrate.quad(real_part, -np.inf, 0.0, epsabs=0.0, epsrel=1e-13, limit=200)
    im, _ = integrate.quad(imag_part, -np.inf, 0.0, epsabs=0.0, epsrel=1e-13, limit=200)
    return complex(re, im)


def kernel_second_moment(params: ProblemParams) -> float:
    """
    Quadrature of (1 - x)^2 k0(x) over [1/2, 1).

    The closed form is theta / 24. The normalisation asked of admissible
    kernels is 1, which would pin theta = 24; theta is kept free and the
    moment is only reported.
    """
    value, _ = integrate.quad(
        lambda x: (1.0 - x) ** 2 * kernel_k0(params, x), 0.5, 1.0, epsabs=0.0, epsrel=1e-13
    )
    return value


def phi(params: ProblemParams, s: ArrayOrScalar, form: str = "additive") -> ArrayOrScalar:
    """
    Cumulant-type symbol Phi(s) = K(s) + s - 2.

    Args:
        params: Problem parameters
        s: Complex scalar or array with Re s > 0
        form: "additive" for K(s) + s - 2, "factored" for (s - sigma1)(s - sigma2)/s

    Returns:
        Phi(s), complex

    Raises:
        InvalidDomain: If Re s <= 0
        ValueError: On an unknown form
    """
    _check_half_plane(s)
    s_arr = np.asarray(s, dtype=np.complex128)
    if form == "additive":
        value = capital_k(params, s_arr) + s_arr - 2.0
    elif form == "factored":
        value = (s_arr - params.sigma1) * (s_arr - params.sigma2) / s_arr
    else:
        raise ValueError(f"Unknown form for phi: {form}")
    return complex(value) if np.ndim(s) == 0 else value


def _minimize_phi(params: ProblemParams) -> ConditionReport:
    upper = 10.0 * np.sqrt(params.theta)
    grid = np.linspace(SCAN_LOWER, upper, SCAN_POINTS)
    values = np.real(phi(params, grid))
    i = int(np.clip(np.argmin(values), 1, SCAN_POINTS - 2))

    result = optimize.minimize_scalar(
        lambda s: float(np.real(phi(params, s))),
        bracket=(grid[i - 1], grid[i], grid[i + 1]),
        method="golden",
        options={"xtol": 1e-12},
    )
    logger.debug(f"Phi minimum {result.fun} at s = {result.x} after {result.nfev} evaluations")
    return ConditionReport(
        infimum=float(result.fun),
        minimizer=float(result.x),
        satisfied=bool(result.fun < 0),
    )


def existence_condition(params: ProblemParams) -> ConditionReport:
    """
    Evaluate the global-existence condition inf_{s>0} Phi(s) < 0.

    Works for every admissible theta: for theta < 1 the roots are real and the
    condition holds, for theta > 1 the infimum is 2(sqrt(theta) - 1) > 0.
    """
    report = _minimize_phi(params)
    logger.info(
        f"theta={params.theta}: inf Phi = {report.infimum:.10g} at s = {report.minimizer:.10g}, "
        f"condition {'satisfied' if report.satisfied else 'not satisfied'}"
    )
    return report


def inf_phi_positive(params: ProblemParams) -> float:
    """
    Infimum of Phi over the positive real axis in the conjugate-root regime.

    Returns:
        inf_{s>0} Phi(s), equal to 2(sqrt(theta) - 1) at s = sqrt(theta)

    Raises:
        InvalidParam: If theta <= 1 (use existence_condition for that regime)
    """
    if params.theta <= 1.0:
        raise InvalidParam(
            f"theta = {params.theta} <= 1: inf Phi <= 0 and the existence condition holds"
        )
    return _minimize_phi(params).infimum
