"""Sampled radial functions shared by the analytic and finite-difference sides."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from .errors import DomainError

__all__ = ["GridFunction", "sample", "normalize_grid", "count_nodes"]

NORMALIZED_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Values of a radial function on a strictly increasing grid.

    ``quadrature_norm`` estimates the integral of ``values**2`` over the grid.
    """

    r_values: np.ndarray
    values: np.ndarray
    normalized: bool = False
    quadrature_norm: float = float("nan")

    def __post_init__(self):
        r = np.asarray(self.r_values, dtype=float)
        v = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "r_values", r)
        object.__setattr__(self, "values", v)
        if r.shape != v.shape or r.ndim != 1:
            raise DomainError("r_values and values must be 1-D arrays of equal length")
        if r.size > 1 and not np.all(np.diff(r) > 0):
            raise DomainError("r_values must be strictly increasing")
        if self.normalized and not abs(self.quadrature_norm - 1.0) <= NORMALIZED_TOL:
            raise DomainError(f"normalized grid function has norm {self.quadrature_norm!r}")

    def __len__(self):
        return self.r_values.size

    @property
    def peak(self):
        return float(np.max(np.abs(self.values)))


def _norm(r, v):
    return float(simpson(v * v, x=r))


def sample(wf, r_lo, r_hi, n_points=4001):
    """Sample ``wf`` (a vectorized callable) on a uniform grid.

    The norm is estimated with composite Simpson. Domain errors raised by
    ``wf`` propagate unchanged.
    """
    if n_points < 2:
        raise DomainError("n_points must be >= 2")
    if not r_lo < r_hi:
        raise DomainError("r_lo must be < r_hi")
    r = np.linspace(r_lo, r_hi, int(n_points))
    v = np.asarray(wf(r), dtype=float) * np.ones_like(r)
    return GridFunction(r, v, normalized=False, quadrature_norm=_norm(r, v))


def normalize_grid(g):
    """Rescale ``g`` so that its Simpson norm is one."""
    if not g.quadrature_norm > 0:
        raise DomainError("cannot normalize a function with zero norm")
    v = g.values / np.sqrt(g.quadrature_norm)
    return GridFunction(g.r_values, v, normalized=True, quadrature_norm=_norm(g.r_values, v))


def count_nodes(g, threshold=1e-9):
    """Strict sign changes among samples above ``threshold * max|value|``."""
    v = g.values
    keep = v[np.abs(v) >= threshold * g.peak] if g.peak > 0 else v[:0]
    signs = np.sign(keep)
    signs = signs[signs != 0]
    return int(np.count_nonzero(signs[1:] != signs[:-1]))
