"""
Improved Tietz potential and its parameter mappings.

For ``q < 0`` the potential is rewritten as a deformed Manning-Rosen form in
``coth_|q|``; for ``q > 0`` as a deformed Rosen-Morse form in ``tanh_q``;
``q = 0`` is the Morse potential. The centrifugal term ``1/r**2`` is
replaced by a rational function of ``exp(2 alpha r)`` so that the ``l > 0``
problem keeps the Manning-Rosen structure.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PoleError, RegimeError

__all__ = [
    "MoleculeParams",
    "RegimeTag",
    "Regime",
    "classify",
    "domain_floor",
    "deformed_hyperbolic",
    "tietz_potential",
    "morse_potential",
    "ManningRosenConstants",
    "manning_rosen_constants",
    "manning_rosen_potential",
    "RosenMorseConstants",
    "rosen_morse_constants",
    "rosen_morse_potential",
    "CentrifugalScheme",
    "CentrifugalCoeffs",
    "centrifugal_coeffs",
    "centrifugal_approx",
    "EffectivePotentialCoeffs",
    "effective_coeffs",
    "effective_potential",
    "exact_effective_potential",
]

# Evaluations closer than this (in units of 1/alpha) to the pole raise PoleError.
POLE_GUARD = 1e-9


@dataclass(frozen=True)
class MoleculeParams:
    """Physical inputs in one consistent unit system.

    ``hbar`` is explicit so natural-unit runs (``hbar = mass = 1``) and
    physical-unit runs share the same code path.
    """

    De: float
    re: float
    alpha: float
    q: float
    mass: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("De", "re", "alpha", "mass", "hbar"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be finite and > 0, got {v!r}")
        if not math.isfinite(self.q):
            raise DomainError(f"q must be finite, got {self.q!r}")

    @property
    def r0(self):
        """``ln|q| / (2 alpha)`` clipped at 0; see :func:`domain_floor` for the grid floor."""
        return classify(self).r0

    @property
    def floor(self):
        return domain_floor(self)

    @property
    def kinetic(self):
        """``hbar**2 / (2 M)``."""
        return self.hbar**2 / (2.0 * self.mass)

    def with_q(self, q):
        return MoleculeParams(self.De, self.re, self.alpha, q, self.mass, self.hbar)


class RegimeTag(enum.Enum):
    DeformedManningRosenStrong = "strong"
    DeformedManningRosenWeak = "weak"
    DeformedRosenMorse = "rosen-morse"
    Morse = "morse"


@dataclass(frozen=True)
class Regime:
    tag: RegimeTag
    r0: float


def classify(params):
    """Regime of the deformation parameter and the matching singularity radius."""
    q = params.q
    if q == 0.0:
        tag = RegimeTag.Morse
    elif q > 0:
        tag = RegimeTag.DeformedRosenMorse
    elif q <= -1.0:
        tag = RegimeTag.DeformedManningRosenStrong
    else:
        tag = RegimeTag.DeformedManningRosenWeak
    r0 = max(0.0, math.log(abs(q)) / (2.0 * params.alpha)) if q != 0.0 else 0.0
    return Regime(tag, r0)


def domain_floor(params):
    """Left end of the radial domain: the pole ``r0`` when ``q <= -1``, else 0.

    For ``q > 1`` the formula radius is positive but the potential is
    regular there, so the problem still lives on ``r > 0``.
    """
    if params.q <= -1.0:
        return math.log(-params.q) / (2.0 * params.alpha)
    return 0.0


def deformed_hyperbolic(kind, q, x):
    """q-deformed ``sinh``, ``cosh``, ``tanh`` or ``coth``.

    ``sinh_q x = (e^x - q e^-x)/2`` and ``cosh_q x = (e^x + q e^-x)/2``.
    ``x`` may be an array.
    """
    x = np.asarray(x, dtype=float)
    ep, em = np.exp(x), np.exp(-x)
    s = (ep - q * em) / 2.0
    c = (ep + q * em) / 2.0
    if kind == "sinh":
        out = s
    elif kind == "cosh":
        out = c
    elif kind in ("tanh", "coth"):
        den = c if kind == "tanh" else s
        # A denominator lost entirely to cancellation counts as the pole.
        if np.any(np.abs(den) <= 4.0 * np.finfo(float).eps * (ep + abs(q) * em)):
            # sinh_q vanishes at x = ln(q)/2, cosh_q at x = ln(-q)/2.
            pole = 0.5 * math.log(abs(q)) if q != 0 else math.nan
            raise PoleError(f"{kind}_q has a pole", pole)
        out = s / c if kind == "tanh" else c / s
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return out if out.ndim else float(out)


def _pole_check(params, r):
    q = params.q
    if q < 0 and abs(q) >= 1.0:
        r0 = math.log(-q) / (2.0 * params.alpha)
        if np.any(np.abs(np.asarray(r) - r0) < POLE_GUARD / params.alpha):
            raise PoleError("Tietz potential evaluated at its singularity", r0)


def tietz_potential(params, r):
    """``De (1 - (e^{2 alpha re} + q)/(e^{2 alpha r} + q))**2``; ``r`` may be an array."""
    _pole_check(params, r)
    r = np.asarray(r, dtype=float)
    a2 = 2.0 * params.alpha
    ratio = (math.exp(a2 * params.re) + params.q) / (np.exp(a2 * r) + params.q)
    out = params.De * (1.0 - ratio) ** 2
    return out if out.ndim else float(out)


def morse_potential(params, r):
    """``De (1 - exp(-2 alpha (r - re)))**2``."""
    r = np.asarray(r, dtype=float)
    out = params.De * (1.0 - np.exp(-2.0 * params.alpha * (r - params.re))) ** 2
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class ManningRosenConstants:
    U0: float
    U1: float
    U2: float


def manning_rosen_constants(params):
    """Coefficients of ``U0 - U1 coth_|q| + U2 coth_|q|**2`` for ``q < 0``."""
    if params.q >= 0:
        raise RegimeError(f"Manning-Rosen mapping needs q < 0, got {params.q!r}")
    x = math.exp(2.0 * params.alpha * params.re) / abs(params.q)
    De = params.De
    return ManningRosenConstants(
        U0=De / 4.0 * (x + 1.0) ** 2,
        U1=De / 2.0 * (x + 1.0) * (x - 1.0),
        U2=De / 4.0 * (x - 1.0) ** 2,
    )


def manning_rosen_potential(params, r):
    """Tietz potential for ``q < 0`` rebuilt from its Manning-Rosen constants."""
    k = manning_rosen_constants(params)
    cth = deformed_hyperbolic("coth", abs(params.q), params.alpha * np.asarray(r, dtype=float))
    return k.U0 - k.U1 * cth + k.U2 * cth**2


@dataclass(frozen=True)
class RosenMorseConstants:
    V0: float
    V1: float
    V2: float


def rosen_morse_constants(params):
    """Coefficients of ``V0 + V1 tanh_q + V2 tanh_q**2`` for ``q > 0``."""
    if params.q <= 0:
        raise RegimeError(f"Rosen-Morse mapping needs q > 0, got {params.q!r}")
    x = math.exp(2.0 * params.alpha * params.re) / params.q
    De = params.De
    return RosenMorseConstants(
        V0=De / 4.0 * (x - 1.0) ** 2,
        V1=De / 2.0 * (1.0 + x) * (1.0 - x),
        V2=De / 4.0 * (x + 1.0) ** 2,
    )


def rosen_morse_potential(params, r):
    """Tietz potential for ``q > 0`` rebuilt from its Rosen-Morse constants."""
    k = rosen_morse_constants(params)
    th = deformed_hyperbolic("tanh", params.q, params.alpha * np.asarray(r, dtype=float))
    return k.V0 + k.V1 * th + k.V2 * th**2


class CentrifugalScheme(enum.Enum):
    GreeneAldrich = "greene-aldrich"
    TaylorMatch = "taylor-match"


@dataclass(frozen=True)
class CentrifugalCoeffs:
    """``1/r**2 ~ C0 + B0/(e^{2 alpha r} - |q|) + A0/(e^{2 alpha r} - |q|)**2``."""

    A0: float
    B0: float
    C0: float
    scheme: CentrifugalScheme


def _require_strong(params):
    if not (params.q < 0 and abs(params.q) >= 1.0):
        raise RegimeError(f"operation needs q <= -1, got {params.q!r}")


def centrifugal_coeffs(scheme, params):
    """Coefficients of the rational approximation to ``1/r**2``.

    ``GreeneAldrich`` takes ``C0 = 0``, ``A0 = alpha**2 q**2``,
    ``B0 = A0/|q|``; at ``|q| = 1`` this is ``alpha**2 / (4 sinh**2(alpha r))``.
    ``TaylorMatch`` fixes ``C0 = alpha**2/12`` and chooses ``A0``, ``B0`` so
    the approximation matches ``1/r**2`` in value and slope at ``re``.
    """
    scheme = CentrifugalScheme(scheme)
    _require_strong(params)
    a, Q = params.alpha, abs(params.q)
    if scheme is CentrifugalScheme.GreeneAldrich:
        A0 = a * a * Q * Q
        return CentrifugalCoeffs(A0=A0, B0=A0 / Q, C0=0.0, scheme=scheme)

    C0 = a * a / 12.0
    re = params.re
    e = math.exp(2.0 * a * re)
    u = 1.0 / (e - Q)
    du = -2.0 * a * e * u * u
    # value:  B0 u + A0 u^2 = 1/re^2 - C0 ; slope: (B0 + 2 A0 u) du = -2/re^3
    lhs = np.array([[u * u, u], [2.0 * u * du, du]])
    rhs = np.array([1.0 / re**2 - C0, -2.0 / re**3])
    det = np.linalg.det(lhs)
    if not math.isfinite(det) or abs(det) < 1e-300:
        raise ArithmeticError("singular TaylorMatch system; re must exceed r0")
    A0, B0 = np.linalg.solve(lhs, rhs)
    return CentrifugalCoeffs(A0=float(A0), B0=float(B0), C0=C0, scheme=scheme)


def centrifugal_approx(params, cc, r):
    """The rational approximation to ``1/r**2`` at ``r``."""
    r = np.asarray(r, dtype=float)
    d = np.exp(2.0 * params.alpha * r) - abs(params.q)
    out = cc.C0 + cc.B0 / d + cc.A0 / d**2
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class EffectivePotentialCoeffs:
    """``V_eff = V0l - V1l coth_|q|(alpha r) + V2l / sinh_|q|**2(alpha r)``."""

    V0l: float
    V1l: float
    V2l: float


def effective_coeffs(params, l, cc):
    """Effective-potential coefficients for orbital quantum number ``l``."""
    _require_strong(params)
    if int(l) != l or l < 0:
        raise DomainError(f"l must be a non-negative integer, got {l!r}")
    k = manning_rosen_constants(params)
    Q = abs(params.q)
    g = params.kinetic * l * (l + 1)
    shift = cc.A0 / Q - cc.B0
    return EffectivePotentialCoeffs(
        V0l=g * (cc.C0 + shift / (2.0 * Q)) + k.U0 + k.U2,
        V1l=g * shift / (2.0 * Q) + k.U1,
        V2l=g * cc.A0 / (4.0 * Q) + Q * k.U2,
    )


def effective_potential(params, l, cc, r):
    """Approximate effective potential rebuilt from :func:`effective_coeffs`."""
    _pole_check(params, r)
    v = effective_coeffs(params, l, cc)
    Q = abs(params.q)
    x = params.alpha * np.asarray(r, dtype=float)
    cth = deformed_hyperbolic("coth", Q, x)
    sh = deformed_hyperbolic("sinh", Q, x)
    return v.V0l - v.V1l * cth + v.V2l / sh**2


def exact_effective_potential(params, l, r):
    """Tietz potential plus the exact centrifugal term ``hbar^2 l(l+1)/(2 M r^2)``."""
    r = np.asarray(r, dtype=float)
    out = tietz_potential(params, r) + params.kinetic * l * (l + 1) / r**2
    return out if np.ndim(out) else float(out)
