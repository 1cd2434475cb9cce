"""
Real-argument special functions.

Log-gamma, the Gauss hypergeometric function 2F1, Kummer's confluent
function 1F1 and Jacobi polynomials. Everything here is a pure function of
its arguments.

2F1 is evaluated by its power series for ``z <= 1/2``. For ``z > 1/2`` the
linear connection formula to argument ``1 - z`` is used, so both sub-series
converge at least like ``2**-k``. Terminating series (``a`` or ``b`` a
non-positive integer) are always summed in full as polynomials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import loggamma

from .errors import ConvergenceError, DegenerateParameterError, DomainError

__all__ = [
    "SeriesControl",
    "DEFAULT_SERIES",
    "ln_gamma",
    "gamma_ratio",
    "gauss_2f1",
    "gauss_2f1_series",
    "gauss_2f1_connection",
    "gauss_2f1_complex",
    "gauss_2f1_shifted",
    "kummer_1f1",
    "log_kummer_1f1_terminating",
    "jacobi_poly",
    "jacobi_poly_explicit",
]

# 2F1 switches to the 1 - z connection formula above this argument.
BRANCH_Z = 0.5
# c - a - b closer than this to an integer is treated as degenerate.
DEGENERATE_WINDOW = 1e-6
# Relative shift of ``a`` used to step off a degenerate c - a - b.
DEGENERATE_SHIFT = 1e-5
KUMMER_MAX_ABS_Z = 700.0
# Above this cancellation ratio the z > 1/2 route also tries the direct series.
CONDITION_LIMIT = 1e4
STIRLING_MIN_X = 8.0
# B_2k / (2k (2k - 1)) for k = 1..12; the truncation error at x = 8 is below 1e-20.
_STIRLING = [
    (1, 12), (-1, 360), (1, 1260), (-1, 1680), (1, 1188), (-691, 360360),
    (1, 156), (-3617, 122400), (43867, 244188), (-174611, 125400),
    (77683, 5796), (-236364091, 1506960),
]
_HALF_LN_2PI = np.longdouble("0.918938533204672741780329736405617639861")


@dataclass(frozen=True)
class SeriesControl:
    """Termination controls for hypergeometric power series.

    A series stops once the estimated tail falls below
    ``max(abs_tol, rel_tol * |partial sum|)``.
    """

    max_terms: int = 20000
    rel_tol: float = 1e-15
    abs_tol: float = 1e-300

    def __post_init__(self):
        if int(self.max_terms) != self.max_terms or self.max_terms < 1:
            raise DomainError(f"max_terms must be a positive integer, got {self.max_terms!r}")
        if self.rel_tol < 0 or self.abs_tol < 0:
            raise DomainError("series tolerances must be non-negative")
        if self.rel_tol == 0 and self.abs_tol == 0:
            raise DomainError("at least one of rel_tol, abs_tol must be positive")


DEFAULT_SERIES = SeriesControl()


def _check_finite(*values):
    for v in values:
        if not math.isfinite(v):
            raise DomainError(f"non-finite argument {v!r}")


def _is_nonpositive_int(x):
    return x <= 0 and x == math.floor(x)


def _stirling_ln_gamma(x):
    # Extended precision so the rounded result sits within about half an ulp.
    xl = np.longdouble(x)
    inv = 1 / xl
    inv2 = inv * inv
    series = np.longdouble(0)
    power = inv
    for num, den in _STIRLING:
        series += np.longdouble(num) / np.longdouble(den) * power
        power *= inv2
    return float((xl - np.longdouble(0.5)) * np.log(xl) - xl + _HALF_LN_2PI + series)


def ln_gamma(x):
    """Natural log of the Gamma function for ``x > 0``.

    Below ``x = 8`` this is the C library ``lgamma``. Above it a Stirling
    series in extended precision is used, which keeps
    ``ln_gamma(x + 1) - ln_gamma(x) - ln(x)`` at the rounding level even
    where ``ln Gamma`` is in the hundreds.
    """
    x = float(x)
    if not math.isfinite(x) or x <= 0:
        raise DomainError(f"ln_gamma requires a finite x > 0, got {x!r}")
    if x < STIRLING_MIN_X:
        return math.lgamma(x)
    return _stirling_ln_gamma(x)


def _gamma_sign(x):
    if x > 0:
        return 1.0
    # Gamma alternates sign on successive unit intervals of the negative axis.
    return -1.0 if math.floor(-x) % 2 == 0 else 1.0


def gamma_ratio(numer, denom):
    """Signed value of ``prod Gamma(numer) / prod Gamma(denom)``.

    Poles in the denominator make the ratio vanish. A pole in the numerator
    raises :class:`DegenerateParameterError`.
    """
    for x in denom:
        if _is_nonpositive_int(x):
            return 0.0
    sign = 1.0
    log_mag = 0.0
    for x in numer:
        if _is_nonpositive_int(x):
            raise DegenerateParameterError(f"Gamma pole at {x!r} in numerator")
        sign *= _gamma_sign(x)
        log_mag += math.lgamma(x)
    for x in denom:
        sign *= _gamma_sign(x)
        log_mag -= math.lgamma(x)
    return sign * math.exp(log_mag)


def _settle_index(*params):
    """First index past which no Pochhammer factor ``p + k`` changes sign.

    Before it a small term ratio says nothing about the tail (a parameter
    near zero makes the first ratio tiny), so the stopping test waits.
    """
    return max(0, math.ceil(max(-p.real for p in params))) + 1


def _terminating_sum(n, b, c, z):
    """Sum of 2F1(-n, b; c; z) as a degree-n polynomial (all terms kept)."""
    total = 1.0
    term = 1.0
    a = -float(n)
    for k in range(n):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z
        total += term
    return total


def _series_terms(a, b, c, z, ctl):
    """Direct 2F1 series. Returns ``(sum, sum of |terms|)``."""
    total = 1.0
    mass = 1.0
    term = 1.0
    settled = _settle_index(a, b, c)
    for k in range(ctl.max_terms):
        ratio = (a + k) * (b + k) / ((c + k) * (k + 1)) * z
        term *= ratio
        total += term
        mass += abs(term)
        if term == 0.0:
            return total, mass
        # Later ratios tend to |z|, so bound them by it as well.
        r = max(abs(ratio), abs(z))
        if k >= settled and r < 1.0:
            tail = abs(term) * r / (1.0 - r)
            if tail <= max(ctl.abs_tol, ctl.rel_tol * abs(total)):
                return total, mass
    raise ConvergenceError("2F1 series did not converge", ctl.max_terms, abs(term))


def _series_extended(a, b, c, z, ctl):
    """Direct 2F1 series summed in extended precision, returned as a float.

    Used when the double-precision sum has cancelled many digits: terms of
    size ``mass`` leave an absolute error near ``eps * mass`` behind.
    """
    a, b, c, z = (np.longdouble(v) for v in (a, b, c, z))
    total, _ = _series_terms(a, b, c, z, ctl)
    return float(total)


def _connection_terms(a, b, c, z, ctl):
    """1 - z connection formula. Returns ``(value, magnitude of the parts)``."""
    w = 1.0 - z
    s = c - a - b
    first = gamma_ratio([c, s], [c - a, c - b])
    second = gamma_ratio([c, -s], [a, b])
    value = 0.0
    mass = 0.0
    if first != 0.0:
        f, m = _series_terms(a, b, 1.0 - s, w, ctl)
        value += first * f
        mass += abs(first) * m
    if second != 0.0:
        scale = second * w**s
        f, m = _series_terms(c - a, c - b, 1.0 + s, w, ctl)
        value += scale * f
        mass += abs(scale) * m
    return value, mass


def _connection_regularized(a, b, c, z, ctl):
    s = c - a - b
    if abs(s - round(s)) < DEGENERATE_WINDOW:
        eps = DEGENERATE_SHIFT * (1.0 + abs(a))
        lo, m_lo = _connection_terms(a - eps, b, c, z, ctl)
        hi, m_hi = _connection_terms(a + eps, b, c, z, ctl)
        return 0.5 * (lo + hi), max(m_lo, m_hi)
    return _connection_terms(a, b, c, z, ctl)


def _validate(a, b, c, z):
    a, b, c, z = float(a), float(b), float(c), float(z)
    _check_finite(a, b, c, z)
    if _is_nonpositive_int(c):
        raise DomainError(f"c must not be a non-positive integer, got {c!r}")
    if not -1.0 < z < 1.0:
        raise DomainError(f"z must lie in (-1, 1), got {z!r}")
    return a, b, c, z


def gauss_2f1_series(a, b, c, z, ctl=DEFAULT_SERIES):
    """2F1 by its power series at ``z`` alone, with no branch switching."""
    a, b, c, z = _validate(a, b, c, z)
    return _series_terms(a, b, c, z, ctl)[0]


def gauss_2f1_connection(a, b, c, z, ctl=DEFAULT_SERIES):
    """2F1 through the 1 - z connection formula alone, for any ``0 < z < 1``.

    Near-integer ``c - a - b`` is regularized as in :func:`gauss_2f1`.
    """
    a, b, c, z = _validate(a, b, c, z)
    if not 0.0 < z < 1.0:
        raise DomainError(f"connection formula needs 0 < z < 1, got {z!r}")
    return _connection_regularized(a, b, c, z, ctl)[0]


def _condition(value, mass):
    return math.inf if value == 0.0 else mass / abs(value)


def gauss_2f1(a, b, c, z, ctl=DEFAULT_SERIES):
    """Gauss hypergeometric function 2F1(a, b; c; z) for real ``z`` in (-1, 1).

    Parameters
    ----------
    a, b, c : float
        Parameters; ``c`` must not be a non-positive integer.
    z : float
        Argument in the open interval (-1, 1).
    ctl : SeriesControl, optional
        Series termination controls.

    Returns
    -------
    float

    Raises
    ------
    DomainError
        Bad ``c`` or ``z``.
    ConvergenceError
        A series exhausted ``ctl.max_terms``.

    Notes
    -----
    For ``z > 1/2`` the connection formula to ``1 - z`` is the primary route.
    With large parameters its two parts can cancel badly. When they lose
    more than four digits, the direct series (still convergent for ``z < 1``)
    is also tried, and the better-conditioned result is returned. A direct
    series that itself cancels more than four digits is re-summed in
    extended precision.

    When ``c - a - b`` lies within ``1e-6`` of an integer, the connection
    coefficients have cancelling poles. The value is then the mean of
    evaluations at ``a +/- eps`` with ``eps = 1e-5 (1 + |a|)``, where ``a``
    is the smaller of the two numerator parameters.
    """
    a, b, c, z = _validate(a, b, c, z)
    if z == 0.0:
        return 1.0
    # Fixed order makes the result exactly symmetric in (a, b).
    if b < a:
        a, b = b, a
    if _is_nonpositive_int(a):
        return _terminating_sum(int(-a), b, c, z)
    if _is_nonpositive_int(b):
        return _terminating_sum(int(-b), a, c, z)
    if z <= BRANCH_Z:
        value, mass = _series_terms(a, b, c, z, ctl)
        if _condition(value, mass) > CONDITION_LIMIT:
            return _series_extended(a, b, c, z, ctl)
        return value

    value, mass = _connection_regularized(a, b, c, z, ctl)
    cond = _condition(value, mass)
    if cond > CONDITION_LIMIT:
        try:
            direct, direct_mass = _series_terms(a, b, c, z, ctl)
        except ConvergenceError:
            return value
        if _condition(direct, direct_mass) < cond:
            if _condition(direct, direct_mass) > CONDITION_LIMIT:
                return _series_extended(a, b, c, z, ctl)
            return direct
    return value


def gauss_2f1_shifted(n, eps, b, c, z, ctl=DEFAULT_SERIES):
    """2F1(-n + eps, b; c; z) by direct series with ``a + n = eps`` carried exactly.

    Near a terminating point the value is ``P(z) + eps * G(z)`` with ``G``
    possibly huge, so ``eps`` must not be rounded against ``n`` by forming
    ``a = -n + eps`` first. Needs ``c > 0`` and ``|z| < 1``.
    """
    n = int(n)
    eps, b, c, z = float(eps), float(b), float(c), float(z)
    if n < 0 or not c > 0 or not -1.0 < z < 1.0:
        raise DomainError("gauss_2f1_shifted needs n >= 0, c > 0 and |z| < 1")
    total = term = 1.0
    settled = _settle_index(-n + eps, b, c)
    for k in range(ctl.max_terms):
        ratio = ((k - n) + eps) * (b + k) / ((c + k) * (k + 1)) * z
        term *= ratio
        total += term
        if term == 0.0:
            return total
        r = max(abs(ratio), abs(z))
        if k >= settled and r < 1.0 and abs(term) * r / (1.0 - r) <= max(ctl.abs_tol, ctl.rel_tol * abs(total)):
            return total
    raise ConvergenceError("shifted 2F1 series did not converge", ctl.max_terms, abs(term))


def gauss_2f1_complex(a, b, c, z, ctl=DEFAULT_SERIES):
    """2F1(a, b; c; z) for complex ``a``, ``b``, real ``c > 0`` and real ``0 <= z < 1``.

    Same routes as :func:`gauss_2f1`: direct series up to ``z = 1/2``, the
    ``1 - z`` connection formula above it. ``c - a - b`` must not be an
    integer on the connection route (no regularization is attempted).
    """
    a, b, c, z = complex(a), complex(b), float(c), float(z)
    if not c > 0 or not 0.0 <= z < 1.0:
        raise DomainError("gauss_2f1_complex needs c > 0 and 0 <= z < 1")
    if z == 0.0:
        return 1.0 + 0.0j
    if z <= BRANCH_Z:
        return _series_terms(a, b, c, z, ctl)[0]
    w = 1.0 - z
    s = c - a - b
    if abs(s - round(s.real)) == 0.0:
        raise DegenerateParameterError(f"c - a - b = {s!r} is an integer")
    lg_c = loggamma(c)
    first = np.exp(lg_c + loggamma(s) - loggamma(c - a) - loggamma(c - b))
    second = np.exp(lg_c + loggamma(-s) - loggamma(a) - loggamma(b) + s * math.log(w))
    return complex(
        first * _series_terms(a, b, 1.0 - s, w, ctl)[0] + second * _series_terms(c - a, c - b, 1.0 + s, w, ctl)[0]
    )


def kummer_1f1(a, c, z, ctl=DEFAULT_SERIES):
    """Confluent hypergeometric function 1F1(a; c; z) by direct series.

    Negative ``z`` goes through ``1F1(a; c; z) = e^z 1F1(c - a; c; -z)``
    unless ``a`` is a non-positive integer (then the polynomial has terms of
    one sign already). Arguments with ``|z| > 700`` are rejected; work in
    log space instead (see :func:`log_kummer_1f1_terminating`).
    """
    a, c, z = float(a), float(c), float(z)
    _check_finite(a, c, z)
    if _is_nonpositive_int(c):
        raise DomainError(f"c must not be a non-positive integer, got {c!r}")
    if abs(z) > KUMMER_MAX_ABS_Z:
        raise DomainError(f"|z| = {abs(z):.6g} exceeds {KUMMER_MAX_ABS_Z}; use log-space evaluation")
    if z == 0.0:
        return 1.0
    if _is_nonpositive_int(a):
        total = term = 1.0
        for k in range(int(-a)):
            term *= (a + k) / ((c + k) * (k + 1)) * z
            total += term
        return total
    if z < 0.0:
        # Kummer's transformation turns the cancelling alternating series
        # into one with positive terms.
        return math.exp(z) * kummer_1f1(c - a, c, -z, ctl)
    total = term = 1.0
    settled = _settle_index(a, c)
    for k in range(ctl.max_terms):
        ratio = (a + k) / ((c + k) * (k + 1)) * z
        term *= ratio
        total += term
        if term == 0.0:
            return total
        r = abs(ratio)
        if k >= settled and r < 1.0:
            tail = abs(term) * r / (1.0 - r)
            if tail <= max(ctl.abs_tol, ctl.rel_tol * abs(total)):
                return total
    raise ConvergenceError("1F1 series did not converge", ctl.max_terms, abs(term))


def log_kummer_1f1_terminating(n, c, z):
    """Sign and log-magnitude of the polynomial 1F1(-n; c; z).

    Terms are accumulated as logarithms so arbitrarily large ``z`` is safe.
    Returns ``(sign, log|value|)``; ``sign`` is 0 for an exact zero.
    """
    c, z = float(c), float(z)
    if _is_nonpositive_int(c) and -c < n:
        raise DomainError(f"c must not be a non-positive integer > -n, got {c!r}")
    if z == 0.0 or n == 0:
        return 1.0, 0.0
    signs = np.empty(n + 1)
    logs = np.empty(n + 1)
    signs[0], logs[0] = 1.0, 0.0
    lz = math.log(abs(z))
    for k in range(n):
        ratio = (k - n) / ((c + k) * (k + 1))
        signs[k + 1] = signs[k] * math.copysign(1.0, ratio) * (1.0 if z > 0 else -1.0)
        logs[k + 1] = logs[k] + math.log(abs(ratio)) + lz
    peak = logs.max()
    total = float(np.sum(signs * np.exp(logs - peak)))
    if total == 0.0:
        return 0.0, -math.inf
    return math.copysign(1.0, total), peak + math.log(abs(total))


def jacobi_poly(n, alpha, beta, t):
    """Jacobi polynomial P_n^(alpha, beta)(t) by the three-term recurrence.

    ``t`` may be a scalar or an array. Parameter combinations that make the
    recurrence singular fall back to :func:`jacobi_poly_explicit`.
    """
    if int(n) != n or n < 0:
        raise DomainError(f"degree must be a non-negative integer, got {n!r}")
    n = int(n)
    _check_finite(alpha, beta)
    t_arr = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(t_arr)):
        raise DomainError("non-finite argument t")
    ab = alpha + beta
    p_prev = np.ones_like(t_arr)
    if n == 0:
        return p_prev if t_arr.ndim else float(p_prev)
    p = (alpha + 1.0) + (ab + 2.0) * (t_arr - 1.0) / 2.0
    for k in range(2, n + 1):
        two_k_ab = 2 * k + ab
        a1 = 2 * k * (k + ab) * (two_k_ab - 2)
        if a1 == 0.0:
            return jacobi_poly_explicit(n, alpha, beta, t)
        a2 = (two_k_ab - 1) * (alpha * alpha - beta * beta)
        a3 = (two_k_ab - 1) * two_k_ab * (two_k_ab - 2)
        a4 = 2 * (k + alpha - 1) * (k + beta - 1) * two_k_ab
        p_prev, p = p, ((a2 + a3 * t_arr) * p - a4 * p_prev) / a1
    return p if t_arr.ndim else float(p)


def jacobi_poly_explicit(n, alpha, beta, t):
    """Jacobi polynomial from its explicit binomial sum.

    ``P_n = sum_s C(n+alpha, n-s) C(n+beta, s) ((t-1)/2)**s ((t+1)/2)**(n-s)``.
    A single term survives at each end of [-1, 1], so endpoint values carry
    no cancellation.
    """
    n = int(n)
    t = np.asarray(t, dtype=float)
    lo, hi = (t - 1.0) / 2.0, (t + 1.0) / 2.0
    total = np.zeros_like(t)
    for s in range(n + 1):
        total = total + _binom(n + alpha, n - s) * _binom(n + beta, s) * lo**s * hi ** (n - s)
    return total if total.ndim else float(total)


def _binom(x, m):
    out = 1.0
    for j in range(m):
        out *= (x - j) / (j + 1)
    return out
