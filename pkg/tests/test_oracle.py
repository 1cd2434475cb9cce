import ast
import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import tietz.oracle as oracle_mod
from conftest import desk
from tietz.errors import DomainError, PoleError
from tietz.oracle import RadialGrid, discretize, eigen_lowest, richardson, solve_radial, sturm_count
from tietz.potential import domain_floor, effective_potential, tietz_potential
from tietz.spectrum import bound_states, morse_energies
from tietz.wavefn import count_nodes

L = 3.0


def zero(r):
    return np.zeros_like(r)


def box_levels(k, width=L):
    return np.array([(n * math.pi / width) ** 2 / 2 for n in range(1, k + 1)])


class TestGrid:
    def test_spacing(self):
        g = RadialGrid(1.0, 2.0, 99)
        assert g.h == pytest.approx(0.01, rel=1e-15)
        assert g.points[0] == pytest.approx(1.01) and g.points[-1] == pytest.approx(1.99)

    @pytest.mark.parametrize("args", [(1.0, 1.0, 100), (2.0, 1.0, 100), (0.0, 1.0, 49)])
    def test_invalid(self, args):
        with pytest.raises(DomainError):
            RadialGrid(*args)


class TestDiscretize:
    def test_structure(self):
        g = RadialGrid(0.5, 4.0, 200)
        v = lambda r: np.cos(r)
        d, e = discretize(v, g, 1.3, 0.7)
        kin = 0.7**2 / (1.3 * g.h**2)
        assert np.allclose(d - np.cos(g.points), kin, rtol=1e-14, atol=0)
        assert np.all(e == -kin / 2) and e.shape == (199,)

    def test_pole_on_grid(self):
        g = RadialGrid(-1.0, 1.0, 99)
        with pytest.raises(PoleError), np.errstate(divide="ignore"):
            discretize(lambda r: 1.0 / r, g, 1.0, 1.0)

    def test_discrete_box_spectrum(self):
        # Toeplitz matrix: eigenvalues (hbar^2 / M h^2)(1 - cos(k pi / (n + 1)))
        g = RadialGrid(0.0, L, 300)
        d, e = discretize(zero, g, 1.0, 1.0)
        w, _ = eigen_lowest(d, e, 5, g.h)
        k = np.arange(1, 6)
        ref = (1 - np.cos(k * math.pi / (g.n + 1))) / g.h**2
        assert np.allclose(w, ref, rtol=1e-12, atol=0)


class TestEigen:
    def test_diagonal_exact(self):
        d = np.array([3.0, -1.0, 7.5, 0.25, 2.0] * 12)
        w, _ = eigen_lowest(d, np.zeros(len(d) - 1), 10)
        assert np.array_equal(w, np.sort(d)[:10])

    def test_residual_and_dense_reference(self):
        rng = np.random.default_rng(7)
        n = 400
        d, e = rng.normal(size=n), rng.normal(size=n - 1)
        w, v = eigen_lowest(d, e, 6)
        A = np.diag(d) + np.diag(e, 1) + np.diag(e, -1)
        dense = np.linalg.eigvalsh(A)[:6]
        assert np.allclose(w, dense, rtol=1e-12, atol=1e-12 * np.abs(A).sum(1).max())
        norm_inf = np.abs(A).sum(1).max()
        for j in range(6):
            chi = v[:, j] / np.linalg.norm(v[:, j])
            assert np.max(np.abs(A @ chi - w[j] * chi)) <= 1e-9 * norm_inf

    def test_normalization(self):
        g = RadialGrid(0.0, L, 500)
        d, e = discretize(zero, g, 1.0, 1.0)
        _, v = eigen_lowest(d, e, 3, g.h)
        assert np.allclose((v * v).sum(0) * g.h, 1.0, rtol=1e-13)

    @pytest.mark.parametrize("k", [0, 51])
    def test_bad_k(self, k):
        with pytest.raises(DomainError):
            eigen_lowest(np.ones(50), np.zeros(49), k)


class TestSturm:
    @given(st.lists(st.floats(-50, 50), min_size=2, max_size=30))
    def test_monotone(self, xs):
        g = RadialGrid(0.0, 5.0, 200)
        d, e = discretize(lambda r: (r - 2.5) ** 2, g, 1.0, 1.0)
        xs = np.sort(np.array(xs))
        counts = sturm_count(d, e, xs)
        assert np.all(np.diff(counts) >= 0)

    def test_counts_eigenvalues(self):
        g = RadialGrid(0.0, L, 200)
        d, e = discretize(zero, g, 1.0, 1.0)
        w, _ = eigen_lowest(d, e, 4, g.h)
        mids = (w[:-1] + w[1:]) / 2
        assert list(sturm_count(d, e, mids)) == [1, 2, 3]
        assert sturm_count(d, e, w[0] * (1 - 1e-9)) == 0


class TestBox:
    def test_refined_box(self):
        o = solve_radial(zero, 0.0, 1.0, 1.0, 4, width=L)
        assert np.max(np.abs(o.best / box_levels(4) - 1)) <= 1e-6

    def test_h2_convergence(self):
        o = solve_radial(zero, 0.0, 1.0, 1.0, 4, width=L)
        ref = box_levels(4)
        ratio = (o.eigenvalues - ref) / (o.refined_eigenvalues - ref)
        assert np.all((ratio >= 2.0) & (ratio <= 8.0))

    def test_richardson_formula(self):
        assert richardson(1.0, 0.25, 2.0, 1.0) == pytest.approx(0.0, abs=1e-16)

    def test_node_counts(self):
        o = solve_radial(lambda r: (r - 1.5) ** 2, 0.0, 1.0, 1.0, 6, width=L)
        for k, g in enumerate(o.eigenvectors):
            assert count_nodes(g) == k
        assert all(g.normalized for g in o.richardson_eigenvectors)


class TestPhysical:
    def test_morse_full_line(self):
        # the Morse level formula belongs to the problem on the whole real line
        p = desk(0.0, De=8.0)
        ref = np.array([s.energy for s in morse_energies(p)])
        o = solve_radial(lambda r: tietz_potential(p, r), p.re - 20 / p.alpha, 1.0, 1.0, 4, width=60 / p.alpha)
        assert np.max(np.abs(o.best / ref - 1)) <= 1e-6

    @pytest.mark.parametrize("l", [0, 1, 2])
    def test_strong_closed_form(self, strong, ga, l):
        ref = np.array([s.energy for s in bound_states(strong, l, ga)])
        o = solve_radial(
            lambda r: effective_potential(strong, l, ga, r),
            domain_floor(strong),
            1.0,
            1.0,
            len(ref),
            width=60 / strong.alpha,
            floor_offset=1e-4 / strong.alpha,
        )
        assert np.max(np.abs(o.best / ref - 1)) <= 1e-6

    @pytest.mark.parametrize("l", [0, 2])
    def test_window_doubling(self, strong, ga, l):
        # same spacing, twice the window: only the far tail changes
        f = lambda r: effective_potential(strong, l, ga, r)
        off, width = 1e-4 / strong.alpha, 60 / strong.alpha
        k = len(bound_states(strong, l, ga))
        a = solve_radial(f, domain_floor(strong), 1.0, 1.0, k, refine=False, width=width, floor_offset=off)
        b = solve_radial(
            f, domain_floor(strong), 1.0, 1.0, k, refine=False, width=off + 2 * (width - off), floor_offset=off, n=8001
        )
        assert a.grid.h == pytest.approx(b.grid.h, rel=1e-14)
        assert np.max(np.abs(b.eigenvalues / a.eigenvalues - 1)) <= 1e-10

    def test_floor_offset_halving(self, strong, ga):
        f = lambda r: effective_potential(strong, 0, ga, r)
        k = len(bound_states(strong, 0, ga))
        runs = [
            solve_radial(f, domain_floor(strong), 1.0, 1.0, k, width=60 / strong.alpha, floor_offset=eps / strong.alpha)
            for eps in (1e-4, 5e-5)
        ]
        assert np.max(np.abs(runs[1].best / runs[0].best - 1)) <= 1e-8

    def test_truncated_flag(self, strong, ga):
        f = lambda r: effective_potential(strong, 0, ga, r)
        k = len(bound_states(strong, 0, ga))
        o = solve_radial(
            f, domain_floor(strong), 1.0, 1.0, 50, width=60 / strong.alpha, floor_offset=1e-4 / strong.alpha,
            threshold=strong.De,
        )
        assert o.truncated and o.n_below_threshold == k and len(o.best) == k
        full = solve_radial(
            f, domain_floor(strong), 1.0, 1.0, k, width=60 / strong.alpha, floor_offset=1e-4 / strong.alpha,
            threshold=strong.De,
        )
        assert not full.truncated


def test_independent_of_analytic_modules():
    tree = ast.parse(Path(oracle_mod.__file__).read_text())
    imported = set()
    for node in ast.walk(tree):
        if isinstance(node, ast.ImportFrom):
            imported.add(node.module or "")
        elif isinstance(node, ast.Import):
            imported.update(a.name for a in node.names)
    assert not any(name.split(".")[-1] in ("specfun", "spectrum", "wavefn", "potential") for name in imported)
