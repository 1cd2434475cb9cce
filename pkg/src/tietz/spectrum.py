"""
Bound-state energies in every deformation regime.

* ``q <= -1``: closed form from the terminating-series condition, any ``l``.
* ``-1 < q < 0`` and ``q > 0``: s-wave roots of a transcendental 2F1
  condition, located by a uniform scan and refined by bisection.
* ``q = 0``: Morse levels.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError, EnergyOutOfRangeError, NoSuchStateError, RegimeError
from .potential import (
    CentrifugalScheme,
    Regime,
    RegimeTag,
    centrifugal_coeffs,
    classify,
    manning_rosen_constants,
    rosen_morse_constants,
)
from .specfun import gauss_2f1, gauss_2f1_complex

__all__ = [
    "Method",
    "SpectralParams",
    "BoundState",
    "RootSearchConfig",
    "spectral_params_strong",
    "spectral_params_weak",
    "spectral_params_rm",
    "energy_closed_form",
    "max_quantum_number",
    "weak_quantization",
    "rm_quantization",
    "rm_regular_factor",
    "solve_transcendental_weak",
    "solve_transcendental_rm",
    "morse_energies",
    "morse_lambda",
    "bound_states",
]

log = logging.getLogger(__name__)

# |f| at an accepted root, relative to max(1, scan scale).
ROOT_RESIDUAL_TOL = 1e-8


class Method(enum.Enum):
    ClosedForm = "closed-form"
    TranscendentalRoot = "transcendental-root"
    MorseFormula = "morse-formula"


@dataclass(frozen=True)
class SpectralParams:
    """Dimensionless parameters of the hypergeometric solutions.

    Fields a regime does not define are ``None``.
    """

    LE: float
    M1: float
    M2: float
    delta_l: Optional[float] = None
    Nr: Optional[float] = None
    lambda_l: Optional[float] = None


@dataclass(frozen=True)
class BoundState:
    nr: int
    l: int
    energy: float
    regime: Regime
    method: Method
    residual: float = 0.0


@dataclass(frozen=True)
class RootSearchConfig:
    """Scan-and-bisect controls. ``None`` bounds mean the physical defaults.

    Bisection stops at ``energy_rel_tol`` or when the bracket can no longer
    be split in floating point. The default runs to that machine limit: the
    quantization functions can be so steep that a 1e-12 energy error still
    leaves a visible non-zero value of the wavefunction at ``r = 0``.
    """

    e_min: Optional[float] = None
    e_max: Optional[float] = None
    scan_points: int = 2001
    energy_rel_tol: float = float(np.finfo(float).eps)
    max_bisections: int = 200

    def __post_init__(self):
        if self.scan_points < 16:
            raise DomainError(f"scan_points must be >= 16, got {self.scan_points}")
        if not self.energy_rel_tol > 0:
            raise DomainError("energy_rel_tol must be > 0")
        if self.max_bisections < 1:
            raise DomainError("max_bisections must be >= 1")
        if self.e_min is not None and self.e_max is not None and not self.e_min < self.e_max:
            raise DomainError("e_min must be < e_max")


def _require(params, tag):
    regime = classify(params)
    if regime.tag is not tag:
        raise RegimeError(f"q = {params.q!r} is in regime {regime.tag.name}, expected {tag.name}")
    return regime


def _check_l(l):
    if int(l) != l or l < 0:
        raise DomainError(f"l must be a non-negative integer, got {l!r}")
    return int(l)


# Sums such as U0 + U1 + U2 or V0 + V1 + V2 are replaced by their exact
# closed forms (De * x**2, De). For small |q| the constants are ~1/q**2 and
# the explicit sums would cancel away most significant digits.
def _x_ratio(params):
    return math.exp(2.0 * params.alpha * params.re) / abs(params.q)


# -- strong regime: q <= -1 ------------------------------------------------


def _lambda_delta(params, l, cc):
    k = manning_rosen_constants(params)
    a, Q = params.alpha, abs(params.q)
    h2 = params.hbar**2
    ll = l * (l + 1)
    lam = params.mass * k.U1 / (h2 * a * a) + ll / (4.0 * a * a) * (cc.A0 / Q**2 - cc.B0 / Q)
    rad = 1.0 + 8.0 * params.mass * k.U2 / (h2 * a * a) + ll / (a * a) * cc.A0 / Q**2
    if rad < 0:
        raise EnergyOutOfRangeError(f"negative radicand {rad!r} in delta_l")
    return lam, 0.5 * math.sqrt(rad)


def spectral_params_strong(params, l, cc, E):
    """``L_E``, ``M1``, ``M2``, ``delta_l``, ``lambda_l`` at energy ``E``."""
    _require(params, RegimeTag.DeformedManningRosenStrong)
    l = _check_l(l)
    a, Q = params.alpha, abs(params.q)
    two_m = 2.0 * params.mass / params.hbar**2
    ll = l * (l + 1)
    # U0 + U1 + U2 = De x**2 and U0 - U1 + U2 = De exactly.
    rad_l = two_m * (params.De * _x_ratio(params) ** 2 - E) + ll * (cc.C0 + cc.A0 / Q**2 - cc.B0 / Q)
    rad_m = two_m * (params.De - E) + ll * cc.C0
    if rad_l < 0 or rad_m < 0:
        raise EnergyOutOfRangeError(f"E = {E!r} gives a negative radicand")
    lam, delta = _lambda_delta(params, l, cc)
    root_m = math.sqrt(rad_m) / (2.0 * a)
    return SpectralParams(
        LE=-0.5 + math.sqrt(rad_l) / (2.0 * a),
        M1=delta + root_m,
        M2=delta - root_m,
        delta_l=delta,
        lambda_l=lam,
    )


def max_quantum_number(params, l, cc):
    """Largest ``nr`` whose wavefunction decays at infinity, or -1 if none.

    A level exists while ``lambda_l / N - N > 0`` with
    ``N = nr + delta_l + 1/2``, i.e. ``nr < sqrt(lambda_l) - delta_l - 1/2``.
    """
    _require(params, RegimeTag.DeformedManningRosenStrong)
    lam, delta = _lambda_delta(params, _check_l(l), cc)
    return _nr_max_from(lam, delta)


def _nr_max_from(lam, delta):
    if lam <= 0:
        return -1
    bound = math.sqrt(lam) - delta - 0.5
    if bound <= 0:
        return -1
    return math.ceil(bound) - 1


def energy_closed_form(params, nr, l, cc):
    """Closed-form level ``E_{nr,l}`` for ``q <= -1``."""
    regime = _require(params, RegimeTag.DeformedManningRosenStrong)
    l = _check_l(l)
    if int(nr) != nr or nr < 0:
        raise DomainError(f"nr must be a non-negative integer, got {nr!r}")
    lam, delta = _lambda_delta(params, l, cc)
    if nr > _nr_max_from(lam, delta):
        raise NoSuchStateError(f"no bound state nr={nr}, l={l} (nr_max={_nr_max_from(lam, delta)})")
    k = manning_rosen_constants(params)
    Q = abs(params.q)
    g = params.kinetic * l * (l + 1)
    N = nr + delta + 0.5
    E = (
        k.U0
        + k.U2
        + g * (cc.A0 / (2.0 * Q**2) - cc.B0 / (2.0 * Q) + cc.C0)
        - params.kinetic * params.alpha**2 * (N * N + lam * lam / (N * N))
    )
    return BoundState(nr=int(nr), l=l, energy=E, regime=regime, method=Method.ClosedForm)


# -- transcendental regimes -------------------------------------------------


def _weak_parts(params, E):
    k = manning_rosen_constants(params)
    a = params.alpha
    K = params.mass / (2.0 * params.hbar**2 * a * a)
    s2 = K * (params.De - E)
    t2 = K * (params.De * _x_ratio(params) ** 2 - E)
    if s2 < 0 or t2 < 0:
        raise EnergyOutOfRangeError(f"E = {E!r} gives a negative radicand")
    s, t = math.sqrt(s2), math.sqrt(t2)
    delta0 = 0.5 * math.sqrt(1.0 + 8.0 * params.mass * k.U2 / (params.hbar**2 * a * a))
    lam0 = params.mass * k.U1 / (params.hbar**2 * a * a)
    return s, t, delta0, lam0


def spectral_params_weak(params, E):
    """``L_E``, ``M1``, ``M2``, ``delta_0`` for ``-1 < q < 0`` (s-waves)."""
    _require(params, RegimeTag.DeformedManningRosenWeak)
    s, t, delta0, _ = _weak_parts(params, E)
    return SpectralParams(LE=t - 0.5, M1=delta0 + s, M2=delta0 - s, delta_l=delta0)


def _weak_hyper_params(params, E):
    s, t, delta0, lam0 = _weak_parts(params, E)
    # M1 - L_E = delta0 + 1/2 - (t - s), with t^2 - s^2 = lam0 (no cancellation).
    a = delta0 + 0.5 - lam0 / (t + s)
    b = t + delta0 + s + 0.5
    c = 2.0 * s + 1.0
    return a, b, c


def weak_quantization(params, E):
    """The 2F1 whose zeros in ``E`` are the s-wave levels for ``-1 < q < 0``."""
    _require(params, RegimeTag.DeformedManningRosenWeak)
    a, b, c = _weak_hyper_params(params, E)
    return gauss_2f1(a, b, c, abs(params.q))


def _rm_parts(params, E):
    """``mu``, ``nu``, ``L``, ``K``, ``x``; ``nu`` is imaginary when ``nu**2 < 0``.

    ``nu**2 = K (De x**2 - E)`` turns negative for ``E > De x**2``, which lies
    below ``De`` once ``q > e^{2 alpha re}``.
    """
    k = rosen_morse_constants(params)
    a = params.alpha
    x = _x_ratio(params)
    K = params.mass / (2.0 * params.hbar**2 * a * a)
    mu2 = K * (params.De - E)
    nu2 = K * (params.De * x * x - E)
    if mu2 < 0:
        raise EnergyOutOfRangeError(f"E = {E!r} lies above De")
    nu = math.sqrt(nu2) if nu2 >= 0 else 1j * math.sqrt(-nu2)
    L = -0.5 + math.sqrt(0.25 + 4.0 * K * k.V2)
    return math.sqrt(mu2), nu, L, K, x


def spectral_params_rm(params, E):
    """``L``, ``M1``, ``M2`` for ``q > 0`` (s-waves); ``L`` is energy independent.

    Raises :class:`EnergyOutOfRangeError` where ``M1``, ``M2`` are not real.
    """
    _require(params, RegimeTag.DeformedRosenMorse)
    mu, nu, L, _, _ = _rm_parts(params, E)
    if isinstance(nu, complex):
        raise EnergyOutOfRangeError(f"M1, M2 are complex at E = {E!r}")
    return SpectralParams(LE=L, M1=mu + nu, M2=mu - nu)


def _rm_hyper_params(params, E):
    mu, nu, L, K, x = _rm_parts(params, E)
    if isinstance(nu, complex):
        return mu + nu - L, L + mu + nu + 1.0, 2.0 * mu + 1.0
    # M1 - L = mu + 1/2 + (nu - L - 1/2); the bracket via a difference of squares.
    diff2 = -K * (params.De * (2.0 * x + 1.0) + E) - 0.25
    a = mu + 0.5 + diff2 / (nu + L + 0.5)
    b = L + mu + nu + 1.0
    c = 2.0 * mu + 1.0
    return a, b, c


def rm_regular_factor(params, E, w):
    """``(1 - w)**nu 2F1(a, b; c; w)``, the non-power part of the regular solution.

    The radial equation in ``w = q/(e^{2 alpha r} + q)`` depends on ``nu`` only
    through ``nu**2``, so for imaginary ``nu`` this product is still real; its
    real part is returned.
    """
    a, b, c = _rm_hyper_params(params, E)
    _, nu, _, _, _ = _rm_parts(params, E)
    if isinstance(nu, complex):
        return (np.exp(nu * math.log1p(-w)) * gauss_2f1_complex(a, b, c, w)).real
    return (1.0 - w) ** nu * gauss_2f1(a, b, c, w)


def rm_quantization(params, E):
    """The 2F1 whose zeros in ``E`` are the s-wave levels for ``q > 0``.

    Above ``E = De x**2`` (only reachable when ``q > e^{2 alpha re}``) the
    real continuation :func:`rm_regular_factor` takes over; both share their
    zeros and agree at the junction.
    """
    _require(params, RegimeTag.DeformedRosenMorse)
    q = params.q
    w0 = q / (1.0 + q)
    a, b, c = _rm_hyper_params(params, E)
    if isinstance(a, complex):
        return rm_regular_factor(params, E, w0)
    return gauss_2f1(a, b, c, w0)


def _bisect(f, lo, hi, f_lo, cfg):
    for _ in range(cfg.max_bisections):
        mid = 0.5 * (lo + hi)
        if hi - lo <= cfg.energy_rel_tol * max(abs(lo), abs(hi)) or not lo < mid < hi:
            break
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _scan_roots(f, lo, hi, cfg, De):
    grid = np.linspace(lo, hi, cfg.scan_points)
    values = np.array([f(E) for E in grid])
    scale = max(1.0, float(np.max(np.abs(values))))
    roots = []
    for i in range(len(grid) - 1):
        v0, v1 = values[i], values[i + 1]
        if v0 == 0.0:
            E = grid[i]
        elif v0 * v1 < 0:
            E = _bisect(f, grid[i], grid[i + 1], v0, cfg)
        else:
            continue
        resid = abs(f(E))
        if resid > ROOT_RESIDUAL_TOL * scale:
            log.warning("rejecting sign change at E=%.17g: |f|=%.3e is not a root", E, resid)
            continue
        if roots and E - roots[-1][0] < cfg.energy_rel_tol * De:
            continue
        roots.append((E, resid))
    return roots


def _window(cfg, floor, ceiling, De):
    lo = floor + 1e-12 * De if cfg.e_min is None else max(floor, cfg.e_min)
    hi = De * (1.0 - 1e-12) if cfg.e_max is None else cfg.e_max
    # Clip to where every square-root radicand stays non-negative.
    hi = min(hi, ceiling)
    return lo, hi


def _transcendental(params, cfg, f, ceiling, tag):
    regime = _require(params, tag)
    cfg = cfg or RootSearchConfig()
    # The Tietz potential is a perfect square vanishing at re: its minimum is 0.
    lo, hi = _window(cfg, 0.0, ceiling, params.De)
    if not lo < hi:
        return []
    roots = _scan_roots(lambda E: f(params, E), lo, hi, cfg, params.De)
    return [
        BoundState(nr=i, l=0, energy=E, regime=regime, method=Method.TranscendentalRoot, residual=res)
        for i, (E, res) in enumerate(roots)
    ]


def solve_transcendental_weak(params, cfg=None):
    """s-wave levels for ``-1 < q < 0``, ordered and labelled by energy."""
    ceiling = params.De if params.q >= 0 else min(params.De, params.De * _x_ratio(params) ** 2)
    return _transcendental(params, cfg, weak_quantization, ceiling, RegimeTag.DeformedManningRosenWeak)


def solve_transcendental_rm(params, cfg=None):
    """s-wave levels for ``q > 0``, ordered and labelled by energy."""
    return _transcendental(params, cfg, rm_quantization, params.De, RegimeTag.DeformedRosenMorse)


# -- Morse limit ------------------------------------------------------------


def morse_lambda(params):
    """``sqrt(2 M De) / (2 hbar alpha)``."""
    return math.sqrt(2.0 * params.mass * params.De) / (2.0 * params.hbar * params.alpha)


def morse_energies(params):
    """Morse levels ``E_nr`` for ``nr = 0 .. nr_max`` (``q = 0``)."""
    regime = _require(params, RegimeTag.Morse)
    lam = morse_lambda(params)
    if lam <= 0.5:
        return []
    nr_max = math.ceil(lam - 0.5) - 1
    pref = 2.0 * params.hbar**2 * params.alpha**2 / params.mass
    out = []
    for n in range(nr_max + 1):
        x = n + 0.5
        E = -pref * (x * x - x * 2.0 * lam)
        out.append(BoundState(nr=n, l=0, energy=E, regime=regime, method=Method.MorseFormula))
    return out


def bound_states(params, l=0, cc=None, cfg=None):
    """All bound states of one partial wave, whatever the regime.

    ``cc`` defaults to the Greene-Aldrich coefficients in the ``q <= -1``
    regime. Other regimes only support ``l = 0``.
    """
    l = _check_l(l)
    tag = classify(params).tag
    if tag is RegimeTag.DeformedManningRosenStrong:
        cc = cc or centrifugal_coeffs(CentrifugalScheme.GreeneAldrich, params)
        nmax = max_quantum_number(params, l, cc)
        return [energy_closed_form(params, n, l, cc) for n in range(nmax + 1)]
    if l != 0:
        raise DomainError(f"only s-waves are available for regime {tag.name}")
    if tag is RegimeTag.DeformedManningRosenWeak:
        return solve_transcendental_weak(params, cfg)
    if tag is RegimeTag.DeformedRosenMorse:
        return solve_transcendental_rm(params, cfg)
    return morse_energies(params)
