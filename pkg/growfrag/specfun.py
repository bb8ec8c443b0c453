"""
Complex-argument special functions.

This module provides the Gamma family and the Gauss hypergeometric function
2F1(a, b; c; z) for complex parameters and real z < 1:
- log_gamma / gamma / rgamma via a Lanczos approximation (g = 7, 9 terms);
  gamma reflects Re z < 0.5, log_gamma shifts it right by the recurrence
  to stay on the principal branch
- hyp2f1 via the power series on [0, 0.9], the Pfaff transformation for z < 0
  and the z -> 1 - z connection formula on (0.9, 1)

Every function accepts Python scalars or numpy arrays (broadcast together) and
returns a complex scalar or a complex array accordingly. All functions are pure.
"""

import logging
from typing import Tuple, Union

import numpy as np

from .errors import (
    DegenerateConnectionError,
    InvalidDomain,
    NonConvergenceError,
    PoleError,
)

logger = logging.getLogger('growfrag.specfun')

ComplexLike = Union[complex, float, np.ndarray]

POLE_TOL = 1e-12
Z_SWITCH = 0.9
Z_SLACK = 1e-12
DEGENERATE_TOL = 1e-3
SERIES_RTOL = 1e-16
SERIES_PATIENCE = 3
MAX_SERIES_TERMS = 100000

_LANCZOS_G = 7.0
_LANCZOS_COEF = np.array([
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
])
_LOG_SQRT_2PI = 0.5 * np.log(2.0 * np.pi)


def _as_complex(z: ComplexLike) -> Tuple[np.ndarray, bool]:
    arr = np.asarray(z, dtype=np.complex128)
    return arr, arr.ndim == 0


def _unwrap(value: np.ndarray, scalar: bool):
    if scalar:
        return complex(value.reshape(()))
    return value


def nonpositive_integer_mask(z: ComplexLike, tol: float = POLE_TOL) -> np.ndarray:
    """
    Flag entries within ``tol`` of 0, -1, -2, ...

    Args:
        z: Complex scalar or array
        tol: Absolute distance to the nearest non-positive integer

    Returns:
        Boolean array with the shape of ``z``
    """
    z = np.asarray(z, dtype=np.complex128)
    nearest = np.minimum(np.round(z.real), 0.0)
    return np.abs(z - nearest) <= tol


def _lanczos_log_gamma(z: np.ndarray) -> np.ndarray:
    # valid for Re z >= 0.5
    z1 = z - 1.0
    series = np.full(z.shape, _LANCZOS_COEF[0], dtype=np.complex128)
    for i in range(1, len(_LANCZOS_COEF)):
        series = series + _LANCZOS_COEF[i] / (z1 + i)
    t = z1 + _LANCZOS_G + 0.5
    return _LOG_SQRT_2PI + (z1 + 0.5) * np.log(t) - t + np.log(series)


def _log_sin_pi(z: np.ndarray) -> np.ndarray:
    # log sin(pi z) without overflow for large |Im z|
    out = np.empty(z.shape, dtype=np.complex128)
    moderate = np.abs(z.imag) < 20.0
    out[moderate] = np.log(np.sin(np.pi * z[moderate]))
    upper = ~moderate & (z.imag > 0)
    zu = z[upper]
    out[upper] = -1j * np.pi * zu + np.log((np.exp(2j * np.pi * zu) - 1.0) / 2j)
    lower = ~moderate & (z.imag < 0)
    zl = z[lower]
    out[lower] = 1j * np.pi * zl + np.log((1.0 - np.exp(-2j * np.pi * zl)) / 2j)
    return out


def _shift_right(z: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    # z + n with Re >= 0.5, and sum_{k<n} log(z + k) on principal logs
    shift = np.ceil(0.5 - z.real)
    shift = np.where(np.isfinite(shift), shift, 0.0)
    logs = np.zeros(z.shape, dtype=np.complex128)
    for k in range(int(shift.max())):
        active = k < shift
        logs[active] = logs[active] + np.log(z[active] + k)
    return z + shift, logs


def log_gamma(z: ComplexLike) -> ComplexLike:
    """
    Logarithm of the Gamma function for complex arguments.

    The result is the principal branch: continuous off the negative real axis
    and real on the positive one. Arguments with Re z < 0.5 are moved right
    by the recurrence log Gamma(z) = log Gamma(z + n) - sum_k log(z + k).

    Args:
        z: Complex scalar or array

    Returns:
        log Gamma(z), complex

    Raises:
        PoleError: If z is within 1e-12 of a non-positive integer
    """
    arr, scalar = _as_complex(z)
    arr = np.atleast_1d(arr)
    if nonpositive_integer_mask(arr).any():
        raise PoleError(f"Gamma has a pole at {z}")

    out = np.empty(arr.shape, dtype=np.complex128)
    left = arr.real < 0.5
    out[~left] = _lanczos_log_gamma(arr[~left])
    if left.any():
        shifted, logs = _shift_right(arr[left])
        out[left] = _lanczos_log_gamma(shifted) - logs
    return _unwrap(out, scalar)


def gamma(z: ComplexLike) -> ComplexLike:
    """
    Gamma function for complex arguments (reflection formula for Re z < 0.5).

    Raises:
        PoleError: If z is within 1e-12 of a non-positive integer
    """
    arr, scalar = _as_complex(z)
    arr = np.atleast_1d(arr)
    if nonpositive_integer_mask(arr).any():
        raise PoleError(f"Gamma has a pole at {z}")

    log_value = np.empty(arr.shape, dtype=np.complex128)
    left = arr.real < 0.5
    log_value[~left] = _lanczos_log_gamma(arr[~left])
    if left.any():
        # pi / (sin(pi z) Gamma(1 - z)); the branch of the logarithm drops out
        zl = arr[left]
        log_value[left] = np.log(np.pi) - _log_sin_pi(zl) - _lanczos_log_gamma(1.0 - zl)
    return _unwrap(np.exp(log_value), scalar)


def rgamma(z: ComplexLike) -> ComplexLike:
    """Reciprocal Gamma function, exactly zero at the poles of Gamma."""
    arr, scalar = _as_complex(z)
    arr = np.atleast_1d(arr)
    out = np.zeros(arr.shape, dtype=np.complex128)
    regular = ~nonpositive_integer_mask(arr)
    if regular.any():
        out[regular] = np.exp(-np.asarray(log_gamma(arr[regular])))
    return _unwrap(out, scalar)


def _gamma_quotient(numer, denom) -> np.ndarray:
    """Prod Gamma(numer) / Prod Gamma(denom); zero wherever a denominator hits a pole."""
    shape = np.broadcast(*numer, *denom).shape
    log_value = np.zeros(shape, dtype=np.complex128)
    for arg in numer:
        log_value = log_value + np.asarray(log_gamma(np.broadcast_to(arg, shape).copy()))
    value = np.exp(log_value)
    for arg in denom:
        value = value * np.asarray(rgamma(np.broadcast_to(arg, shape).copy()))
    return value


def _power_series(a, b, c, z, max_terms: int) -> np.ndarray:
    """Sum the 2F1 power series elementwise on flat arrays."""
    total = np.ones(a.shape, dtype=np.complex128)
    term = np.ones(a.shape, dtype=np.complex128)
    quiet = np.zeros(a.shape, dtype=int)
    live = np.arange(a.size)

    for n in range(max_terms):
        if live.size == 0:
            logger.debug(f"2F1 series converged after {n} terms")
            return total
        ratio = (a[live] + n) * (b[live] + n) / ((c[live] + n) * (n + 1.0)) * z[live]
        term[live] = term[live] * ratio
        total[live] = total[live] + term[live]
        small = np.abs(term[live]) <= SERIES_RTOL * np.abs(total[live])
        quiet[live] = np.where(small, quiet[live] + 1, 0)
        live = live[quiet[live] < SERIES_PATIENCE]

    if live.size:
        raise NonConvergenceError(
            f"2F1 series did not converge in {max_terms} terms "
            f"(a={a[live[0]]}, b={b[live[0]]}, c={c[live[0]]}, z={z[live[0]]})"
        )
    return total


def _connection(a, b, c, z, max_terms: int) -> np.ndarray:
    """Evaluate 2F1 near z = 1 through the z -> 1 - z connection formula."""
    d = c - a - b
    if (np.abs(d - np.round(d.real)) < DEGENERATE_TOL).any():
        raise DegenerateConnectionError(
            f"c - a - b = {d[np.abs(d - np.round(d.real)) < DEGENERATE_TOL][0]} "
            f"is within {DEGENERATE_TOL} of an integer"
        )
    logger.debug(f"2F1 connection formula on {z.size} points")
    w = 1.0 - z
    first = _gamma_quotient((c, d), (c - a, c - b)) * _dispatch(a, b, 1.0 - d, w, max_terms)
    second = (
        np.exp(d * np.log(w))
        * _gamma_quotient((c, -d), (a, b))
        * _dispatch(c - a, c - b, 1.0 + d, w, max_terms)
    )
    return first + second


def _dispatch(a, b, c, z, max_terms: int) -> np.ndarray:
    """Route flat, broadcast arguments to series, Pfaff or connection formula."""
    out = np.empty(a.shape, dtype=np.complex128)

    a_term = nonpositive_integer_mask(a)
    b_term = nonpositive_integer_mask(b)
    terminating = a_term | b_term
    if terminating.any():
        a_snap = np.where(a_term, np.round(a.real), a)
        b_snap = np.where(b_term, np.round(b.real), b)
        idx = terminating
        out[idx] = _power_series(a_snap[idx], b_snap[idx], c[idx], z[idx], max_terms)

    negative = (z < 0) & ~terminating
    if negative.any():
        zn = z[negative]
        w = zn / (zn - 1.0)
        out[negative] = np.exp(-a[negative] * np.log1p(-zn)) * _dispatch(
            a[negative], c[negative] - b[negative], c[negative], w, max_terms
        )

    # slack keeps z = 0.9 up to rounding on the series side
    central = (z >= 0) & (z <= Z_SWITCH + Z_SLACK) & ~terminating
    if central.any():
        out[central] = _power_series(a[central], b[central], c[central], z[central], max_terms)

    near_one = (z > Z_SWITCH + Z_SLACK) & ~terminating
    if near_one.any():
        out[near_one] = _connection(a[near_one], b[near_one], c[near_one], z[near_one], max_terms)

    return out


def hyp2f1(
    a: ComplexLike,
    b: ComplexLike,
    c: ComplexLike,
    z: Union[float, np.ndarray],
    max_terms: int = MAX_SERIES_TERMS,
) -> ComplexLike:
    """
    Gauss hypergeometric function 2F1(a, b; c; z) for complex a, b, c and real z < 1.

    The power series is summed directly for 0 <= z <= 0.9 (relative accuracy
    1e-10), z < 0 is mapped into (0, 1) by the Pfaff transformation and
    0.9 < z < 1 goes through the linear z -> 1 - z connection formula
    (documented accuracy 1e-6). Series stop once three consecutive terms fall
    below 1e-16 of the partial sum. A terminating series (a or b a
    non-positive integer) is summed exactly for any z < 1.

    Args:
        a: First numerator parameter
        b: Second numerator parameter
        c: Denominator parameter
        z: Real argument(s), z < 1
        max_terms: Term budget per series

    Returns:
        Complex value (or array, when any argument is an array)

    Raises:
        InvalidDomain: If some z >= 1
        PoleError: If c is within 1e-12 of a non-positive integer
        DegenerateConnectionError: If z > 0.9 and c - a - b is within 1e-3 of an integer
        NonConvergenceError: If a series exceeds ``max_terms``
    """
    scalar = all(np.ndim(v) == 0 for v in (a, b, c, z))
    z_arr = np.asarray(z, dtype=np.float64)
    if (z_arr >= 1.0).any():
        raise InvalidDomain(f"hyp2f1 requires z < 1, got max z = {z_arr.max()}")
    if nonpositive_integer_mask(c).any():
        raise PoleError(f"hyp2f1 parameter c = {c} is a non-positive integer")

    a_b, b_b, c_b, z_b = np.broadcast_arrays(
        np.asarray(a, dtype=np.complex128),
        np.asarray(b, dtype=np.complex128),
        np.asarray(c, dtype=np.complex128),
        z_arr,
    )
    shape = a_b.shape
    result = _dispatch(
        a_b.ravel().copy(), b_b.ravel().copy(), c_b.ravel().copy(), z_b.ravel().copy(), max_terms
    ).reshape(shape)
    return _unwrap(result, scalar)
