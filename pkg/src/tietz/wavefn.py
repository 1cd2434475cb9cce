"""
Reduced radial wavefunctions ``chi(r)``.

The ``q <= -1`` states carry a closed-form normalization. The
transcendental regimes and the Morse limit are returned unnormalized
(overall constant set to 1) and normalized on a grid with
:func:`normalize_grid`. Prefactors are combined as logarithms so very
large exponents never overflow.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, NoSuchStateError
from .grid import GridFunction, count_nodes, normalize_grid, sample
from .potential import CentrifugalScheme, RegimeTag, centrifugal_coeffs, domain_floor
from .specfun import (
    KUMMER_MAX_ABS_Z,
    SeriesControl,
    gauss_2f1,
    gauss_2f1_shifted,
    jacobi_poly,
    kummer_1f1,
    ln_gamma,
    log_kummer_1f1_terminating,
)
from .spectrum import (
    _lambda_delta,
    _nr_max_from,
    _require,
    _rm_hyper_params,
    _rm_parts,
    _weak_hyper_params,
    _weak_parts,
    morse_lambda,
    rm_regular_factor,
)

__all__ = [
    "GridFunction",
    "sample",
    "normalize_grid",
    "count_nodes",
    "StrongState",
    "strong_state",
    "wf_strong",
    "wf_strong_hypergeometric",
    "wf_weak",
    "wf_rm",
    "wf_morse",
    "default_window",
    "wavefunction",
    "sample_state",
]

# Sampling window, in units of 1/alpha past the domain floor.
WINDOW_START = 1e-8
WINDOW_WIDTH = 60.0
DEFAULT_POINTS = 4001
# |a + n| below this switches the weak-regime 2F1 to the shifted series.
NEAR_TERMINATING = 1e-3
# Direct series at |q| close to 1 need many terms.
_LONG_SERIES = SeriesControl(max_terms=500000)


class StrongState:
    """Derived constants of one ``q <= -1`` level.

    ``exponent`` is ``lambda_l/N - N``: the tail decays as
    ``exp(-alpha * exponent * r)`` and the Jacobi polynomial uses it as its
    first parameter.
    """

    def __init__(self, params, nr, l, cc):
        _require(params, RegimeTag.DeformedManningRosenStrong)
        lam, delta = _lambda_delta(params, l, cc)
        if int(nr) != nr or nr < 0 or nr > _nr_max_from(lam, delta):
            raise NoSuchStateError(f"no bound state nr={nr}, l={l}")
        self.params, self.nr, self.l, self.cc = params, int(nr), int(l), cc
        self.lam, self.delta = lam, delta
        self.N = N = nr + delta + 0.5
        self.exponent = lam / N - N
        assert self.exponent > 0

    def log_norm_jacobi(self):
        lam, N, n, x = self.lam, self.N, self.nr, self.exponent
        return 0.5 * (
            math.log(self.params.alpha / N * (lam / N + N) * x)
            + ln_gamma(n + 1)
            + ln_gamma(lam / N + N - n)
            - ln_gamma(2 * N - n)
            - ln_gamma(1 + n + x)
        )

    def log_norm_hypergeometric(self):
        lam, N, n, x = self.lam, self.N, self.nr, self.exponent
        return 0.5 * (
            math.log(self.params.alpha / N * (lam / N + N) * x)
            + ln_gamma(lam / N + N - n)
            + ln_gamma(1 + n + x)
            - ln_gamma(n + 1)
            - ln_gamma(2 * N - n)
            - 2.0 * ln_gamma(1 + x)
        )


def strong_state(params, nr, l, cc=None):
    cc = cc or centrifugal_coeffs(CentrifugalScheme.GreeneAldrich, params)
    return StrongState(params, nr, l, cc)


def _strong_y(params, r):
    r = np.asarray(r, dtype=float)
    r0 = domain_floor(params)
    if np.any(r <= r0):
        raise DomainError(f"r must exceed r0 = {r0!r}")
    log_y = math.log(abs(params.q)) - 2.0 * params.alpha * r
    return r, log_y, np.exp(log_y)


def wf_strong(params, nr, l, cc, r):
    """Normalized ``chi_{nr,l}(r)`` for ``q <= -1`` in Jacobi-polynomial form."""
    st = StrongState(params, nr, l, cc)
    r, log_y, y = _strong_y(params, r)
    log_pref = st.log_norm_jacobi() + 0.5 * st.exponent * log_y + (st.delta + 0.5) * np.log1p(-y)
    poly = jacobi_poly(st.nr, st.exponent, 2.0 * st.delta, 1.0 - 2.0 * y)
    out = np.exp(log_pref) * poly
    return out if out.ndim else float(out)


def wf_strong_hypergeometric(params, nr, l, cc, r):
    """Same state as :func:`wf_strong`, through the terminating 2F1 form."""
    st = StrongState(params, nr, l, cc)
    r, log_y, y = _strong_y(params, r)
    log_pref = st.log_norm_hypergeometric() + 0.5 * st.exponent * log_y + (st.delta + 0.5) * np.log1p(-y)
    a, b, c = -st.nr, st.lam / st.N + st.N - st.nr, st.exponent + 1.0
    hyp = np.array([gauss_2f1(a, b, c, yi) for yi in np.atleast_1d(y)])
    out = np.exp(log_pref) * hyp.reshape(np.shape(y))
    return out if out.ndim else float(out)


def _dirichlet_shift(n, eps, b, c, z):
    """Re-solve ``a + n`` so that ``2F1(-n + eps, b; c; z) = 0`` exactly.

    The function is affine in ``eps`` to working precision, so two secant
    steps from the energy-derived value converge.
    """
    f = lambda e: gauss_2f1_shifted(n, e, b, c, z, _LONG_SERIES)
    e0, f0 = 0.0, f(0.0)
    e1 = eps if eps != 0.0 else 1e-12
    f1 = f(e1)
    for _ in range(4):
        if f1 == f0:
            break
        e0, f0, e1 = e1, f1, e1 - f1 * (e1 - e0) / (f1 - f0)
        f1 = f(e1)
        if abs(e1 - e0) <= 4.0 * np.finfo(float).eps * abs(e1):
            break
    return e1


def wf_weak(params, energy, r):
    """Unnormalized s-wave ``chi(r)`` at a root ``energy`` for ``-1 < q < 0``.

    When ``a`` sits within ``1e-3`` of a non-positive integer ``-n`` (always
    the case as ``q -> -1``), the 2F1 is ``P_n + (a + n) G`` with ``G`` of
    order ``(1 - |q|)**(-2 delta_0)``. Rounding in ``a`` would then swamp
    ``chi`` near ``r = 0``, so ``a + n`` is re-solved from the Dirichlet
    condition at ``r = 0`` (an energy change at the rounding level).
    """
    _require(params, RegimeTag.DeformedManningRosenWeak)
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("r must be > 0")
    s, _, delta0, _ = _weak_parts(params, energy)
    a, b, c = _weak_hyper_params(params, energy)
    Q = abs(params.q)
    log_y = math.log(Q) - 2.0 * params.alpha * r
    y = np.exp(log_y)
    log_pref = (delta0 + 0.5) * np.log1p(-y) + s * log_y
    n = round(-a)
    if n >= 0 and abs(a + n) < NEAR_TERMINATING:
        eps = _dirichlet_shift(n, a + n, b, c, Q)
        hyp = [gauss_2f1_shifted(n, eps, b, c, yi, _LONG_SERIES) for yi in np.atleast_1d(y)]
    else:
        hyp = [gauss_2f1(a, b, c, yi) for yi in np.atleast_1d(y)]
    out = np.exp(log_pref) * np.array(hyp).reshape(y.shape)
    return out if out.ndim else float(out)


def wf_rm(params, energy, r):
    """Unnormalized s-wave ``chi(r)`` at a root ``energy`` for ``q > 0``."""
    _require(params, RegimeTag.DeformedRosenMorse)
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("r must be > 0")
    mu, nu, _, _, _ = _rm_parts(params, energy)
    q = params.q
    qe = q * np.exp(-2.0 * params.alpha * r)
    # w = q / (e^{2 alpha r} + q) and 1 - w = 1 / (1 + q e^{-2 alpha r})
    log1p_qe = np.log1p(qe)
    log_w = math.log(q) - 2.0 * params.alpha * r - log1p_qe
    w = np.exp(log_w)
    if isinstance(nu, complex):
        rest = np.array([rm_regular_factor(params, energy, wi) for wi in np.atleast_1d(w)]).reshape(w.shape)
        out = np.exp(mu * log_w) * rest
    else:
        a, b, c = _rm_hyper_params(params, energy)
        log_pref = mu * log_w - nu * log1p_qe
        hyp = np.array([gauss_2f1(a, b, c, wi) for wi in np.atleast_1d(w)]).reshape(w.shape)
        out = np.exp(log_pref) * hyp
    return out if out.ndim else float(out)


def wf_morse(params, nr, r):
    """Unnormalized Morse ``chi_nr(r)`` (``q = 0``).

    ``exp(-z/2) xi**(lam - nr - 1/2) 1F1(-nr; 2 lam - 2 nr; z)`` with
    ``xi = exp(-2 alpha (r - re))``, ``z = 2 lam xi``, ``lam = sqrt(2 M De)/(2 hbar alpha)``.
    """
    _require(params, RegimeTag.Morse)
    lam = morse_lambda(params)
    if int(nr) != nr or nr < 0 or nr >= lam - 0.5:
        raise NoSuchStateError(f"no Morse bound state nr={nr}")
    nr = int(nr)
    r = np.asarray(r, dtype=float)
    log_xi = -2.0 * params.alpha * (r - params.re)
    z = 2.0 * lam * np.exp(log_xi)
    c = 2.0 * lam - 2.0 * nr
    out = np.empty(np.shape(z))
    for i, (zi, lxi) in enumerate(zip(np.atleast_1d(z), np.atleast_1d(log_xi))):
        log_pref = -0.5 * zi + (lam - nr - 0.5) * lxi
        if abs(zi) <= KUMMER_MAX_ABS_Z:
            out.flat[i] = math.exp(log_pref) * kummer_1f1(-nr, c, zi)
        else:
            sign, log_mag = log_kummer_1f1_terminating(nr, c, zi)
            out.flat[i] = sign * math.exp(log_pref + log_mag)
    return out if out.ndim else float(out)


def default_window(params):
    """``(floor + 1e-8/alpha, floor + 60/alpha)`` past :func:`domain_floor`."""
    floor = domain_floor(params)
    a = params.alpha
    return floor + WINDOW_START / a, floor + WINDOW_WIDTH / a


def wavefunction(params, state, cc=None):
    """Vectorized callable ``r -> chi(r)`` for a :class:`~tietz.spectrum.BoundState`."""
    tag = state.regime.tag
    if tag is RegimeTag.DeformedManningRosenStrong:
        cc = cc or centrifugal_coeffs(CentrifugalScheme.GreeneAldrich, params)
        return lambda r: wf_strong(params, state.nr, state.l, cc, r)
    if tag is RegimeTag.DeformedManningRosenWeak:
        return lambda r: wf_weak(params, state.energy, r)
    if tag is RegimeTag.DeformedRosenMorse:
        return lambda r: wf_rm(params, state.energy, r)
    return lambda r: wf_morse(params, state.nr, r)


def sample_state(params, state, cc=None, n_points=DEFAULT_POINTS, window=None):
    """Normalized samples of a bound state on the default (or given) window."""
    lo, hi = window or default_window(params)
    return normalize_grid(sample(wavefunction(params, state, cc), lo, hi, n_points))
