"""
Finite-difference eigensolver for the radial Schrodinger equation.

``-(hbar^2/2M) chi'' + V(r) chi = E chi`` with Dirichlet ends, discretized
by the three-point Laplacian on a uniform grid. The potential is only ever
seen as a callable, so this module stays independent of every analytic
result it is used to check.

Eigenvalues come from Sturm-sequence bisection and eigenvectors from inverse
iteration (LAPACK ``stebz``/``stein`` through SciPy). The O(h^2) grid
error is removed by Richardson extrapolation between two grids. The fine
grid has ``2n + 1`` interior points so its spacing is exactly half the
coarse one and every coarse node is also a fine node; eigenvectors are then
extrapolated node by node as well.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal

from .errors import DomainError, NumericError, PoleError
from .grid import GridFunction

__all__ = [
    "RadialGrid",
    "OracleSpectrum",
    "discretize",
    "sturm_count",
    "eigen_lowest",
    "richardson",
    "solve_radial",
]

BASE_POINTS = 4000


@dataclass(frozen=True)
class RadialGrid:
    """``n`` interior points strictly between Dirichlet ends ``r_lo`` and ``r_hi``."""

    r_lo: float
    r_hi: float
    n: int

    def __post_init__(self):
        if not self.r_lo < self.r_hi:
            raise DomainError("r_lo must be < r_hi")
        if self.n < 50:
            raise DomainError(f"need at least 50 interior points, got {self.n}")

    @property
    def h(self):
        return (self.r_hi - self.r_lo) / (self.n + 1)

    @property
    def points(self):
        return self.r_lo + self.h * np.arange(1, self.n + 1)


@dataclass(frozen=True)
class OracleSpectrum:
    """Lowest eigenpairs on ``grid``.

    ``richardson_estimate`` holds the h -> 0 extrapolated eigenvalues (empty
    without refinement). ``truncated`` is set when fewer than the requested
    number of levels lie below ``threshold``.
    """

    eigenvalues: np.ndarray
    eigenvectors: list
    grid: RadialGrid
    richardson_estimate: np.ndarray = field(default_factory=lambda: np.empty(0))
    refined_eigenvalues: np.ndarray = field(default_factory=lambda: np.empty(0))
    richardson_eigenvectors: list = field(default_factory=list)
    truncated: bool = False
    n_below_threshold: Optional[int] = None

    @property
    def best(self):
        """Extrapolated eigenvalues when available, else the base-grid ones."""
        return self.richardson_estimate if self.richardson_estimate.size else self.eigenvalues


def discretize(potential, grid, mass, hbar):
    """Diagonal and off-diagonal of the discretized radial Hamiltonian."""
    r = grid.points
    v = np.asarray(potential(r), dtype=float) * np.ones_like(r)
    bad = ~np.isfinite(v)
    if np.any(bad):
        raise PoleError("potential is not finite on the grid", float(r[np.argmax(bad)]))
    t = hbar**2 / (2.0 * mass * grid.h**2)
    return 2.0 * t + v, np.full(grid.n - 1, -t)


def sturm_count(d, e, x):
    """Number of eigenvalues strictly below each ``x`` (scalar or array).

    Counts negative pivots of the LDL^T factorization of ``T - x I``.
    """
    x = np.asarray(x, dtype=float)
    xs = np.atleast_1d(x)
    tiny = np.finfo(float).tiny
    e2 = np.asarray(e, dtype=float) ** 2
    count = np.zeros(xs.shape, dtype=int)
    piv = d[0] - xs
    for i in range(len(d)):
        if i:
            piv = d[i] - xs - e2[i - 1] / piv
        piv = np.where(piv == 0.0, -tiny, piv)
        count += piv < 0
    return count if x.ndim else int(count[0])


def eigen_lowest(d, e, k, h=1.0):
    """``k`` lowest eigenpairs of the symmetric tridiagonal matrix ``(d, e)``.

    Eigenvectors are scaled so that ``sum(chi**2) * h == 1`` and signed so
    their first significant sample is positive.
    """
    n = len(d)
    if not 1 <= k <= n:
        raise DomainError(f"k must lie in [1, {n}], got {k}")
    try:
        w, v = eigh_tridiagonal(
            d, e, select="i", select_range=(0, k - 1), lapack_driver="stebz", tol=np.finfo(float).tiny
        )
    except LinAlgError as exc:
        raise NumericError(f"inverse iteration failed: {exc}") from exc
    v = v / math.sqrt(h)
    for j in range(k):
        col = v[:, j]
        if not np.all(np.isfinite(col)):
            raise NumericError("non-finite eigenvector", index=j)
        first = np.argmax(np.abs(col) > 1e-3 * np.max(np.abs(col)))
        if col[first] < 0:
            v[:, j] = -col
    return w, v


def richardson(coarse, fine, h_coarse, h_fine):
    """Remove the leading h**2 error term from two grid results."""
    ratio2 = (h_coarse / h_fine) ** 2
    return fine + (fine - coarse) / (ratio2 - 1.0)


def _eigen_grid_functions(grid, vecs, renormalize=False):
    r = np.concatenate(([grid.r_lo], grid.points, [grid.r_hi]))
    out = []
    for j in range(vecs.shape[1]):
        v = np.concatenate(([0.0], vecs[:, j], [0.0]))
        if renormalize:
            v = v / math.sqrt(np.sum(v * v) * grid.h)
        out.append(GridFunction(r, v, normalized=True, quadrature_norm=float(np.sum(v * v) * grid.h)))
    return out


def solve_radial(
    potential: Callable,
    floor: float,
    mass: float,
    hbar: float,
    k: int,
    refine: bool = True,
    *,
    width: float,
    floor_offset: float = 0.0,
    n: int = BASE_POINTS,
    threshold: Optional[float] = None,
) -> OracleSpectrum:
    """Lowest ``k`` levels of ``potential`` on ``[floor + floor_offset, floor + width]``.

    With ``refine`` the problem is re-solved on ``2n + 1`` points and both
    eigenvalues and eigenvectors are Richardson-extrapolated. If ``threshold`` is
    given (the potential's limit at large ``r``), only levels below it are
    returned and ``truncated`` flags a shortfall.
    """
    grid = RadialGrid(floor + floor_offset, floor + width, n)
    d, e = discretize(potential, grid, mass, hbar)
    n_below = None
    truncated = False
    if threshold is not None:
        n_below = sturm_count(d, e, threshold)
        if k > n_below:
            k, truncated = n_below, True
    if k == 0:
        return OracleSpectrum(np.empty(0), [], grid, truncated=truncated, n_below_threshold=n_below)
    w, v = eigen_lowest(d, e, k, grid.h)
    extrap = np.empty(0)
    fine_w = np.empty(0)
    vec_extrap = []
    if refine:
        fine = RadialGrid(grid.r_lo, grid.r_hi, 2 * n + 1)
        fd, fe = discretize(potential, fine, mass, hbar)
        fine_w, fine_v = eigen_lowest(fd, fe, k, fine.h)
        extrap = richardson(w, fine_w, grid.h, fine.h)
        shared = fine_v[1::2, :]
        shared = shared * np.sign(np.sum(shared * v, axis=0))
        vec_extrap = _eigen_grid_functions(grid, (4.0 * shared - v) / 3.0, renormalize=True)
    return OracleSpectrum(
        eigenvalues=w,
        eigenvectors=_eigen_grid_functions(grid, v),
        grid=grid,
        richardson_estimate=extrap,
        refined_eigenvalues=fine_w,
        richardson_eigenvectors=vec_extrap,
        truncated=truncated,
        n_below_threshold=n_below,
    )
