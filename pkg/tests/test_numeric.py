import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import eigh_tridiagonal

from hartmann_susy.numeric import (
    ConvergenceFailure,
    RadialGrid,
    TridiagonalOperator,
    discretize,
    eigenvector,
    integrate_ground_state_ode,
    level_tolerance,
    lowest_eigenvalues,
    sturm_count,
    verify_isospectrality,
)
from hartmann_susy.susy import energy_internal, ground_state_u

TWO_BY_TWO = TridiagonalOperator(np.array([2.0, 2.0]), np.array([-1.0]))


@st.composite
def tridiagonals(draw, max_n=12):
    n = draw(st.integers(2, max_n))
    d = draw(st.lists(st.floats(-5, 5), min_size=n, max_size=n))
    e = draw(st.lists(st.floats(-3, 3).filter(lambda x: abs(x) > 1e-3), min_size=n - 1, max_size=n - 1))
    return TridiagonalOperator(np.array(d), np.array(e))


def test_grid():
    g = RadialGrid(4.0, 16)
    assert g.h == pytest.approx(4 / 17)
    assert g.r[0] == pytest.approx(g.h) and g.r[-1] == pytest.approx(16 * g.h)
    with pytest.raises(ValueError):
        RadialGrid(4.0, 15)


def test_discretize_pure_laplacian():
    grid = RadialGrid(17.0, 16)  # h = 1
    T = discretize(0.0, 0.0, grid)
    assert np.allclose(T.diag, 1.0) and np.allclose(T.offdiag, -0.5)


@given(st.floats(0.0, 5.0), st.floats(0.1, 3.0))
def test_discretize_symmetric_and_formula(L, gamma):
    grid = RadialGrid(20.0, 40)
    T = discretize(L, gamma, grid)
    A = T.dense()
    assert np.array_equal(A, A.T)
    r = grid.r
    assert np.allclose(T.diag, 1 / grid.h**2 + L * (L + 1) / (2 * r**2) - gamma / r)


def test_sturm_two_by_two():
    assert sturm_count(TWO_BY_TWO, 2.0) == 1
    assert sturm_count(TWO_BY_TWO, 0.0) == 0
    assert sturm_count(TWO_BY_TWO, 10.0) == 2
    assert sturm_count(TWO_BY_TWO, math.inf) == 2


@given(tridiagonals(), st.floats(-20, 20))
def test_sturm_matches_dense_eigenvalues(T, lam):
    ev = np.linalg.eigvalsh(T.dense())
    if np.min(np.abs(ev - lam)) < 1e-9:
        return
    assert sturm_count(T, lam) == int(np.sum(ev < lam))


@given(tridiagonals())
def test_sturm_bounds_and_monotone(T):
    lo, hi = T.gershgorin()
    assert sturm_count(T, lo - 1) == 0
    assert sturm_count(T, hi + 1) == T.n
    xs = np.linspace(lo - 1, hi + 1, 50)
    counts = [sturm_count(T, x) for x in xs]
    assert counts == sorted(counts)


def test_lowest_eigenvalues_two_by_two():
    assert lowest_eigenvalues(TWO_BY_TWO, 2, tol=1e-12) == pytest.approx([1.0, 3.0], abs=1e-12)


@settings(deadline=None)
@given(tridiagonals(max_n=30))
def test_lowest_eigenvalues_match_lapack(T):
    k = T.n // 2 + 1
    ours = lowest_eigenvalues(T, k, tol=1e-11)
    ref = eigh_tridiagonal(T.diag, T.offdiag, eigvals_only=True)[:k]
    assert np.allclose(ours, ref, atol=1e-9)


def test_lowest_eigenvalues_bad_input():
    with pytest.raises(ValueError):
        lowest_eigenvalues(TWO_BY_TWO, 3)
    with pytest.raises(ConvergenceFailure):
        lowest_eigenvalues(TridiagonalOperator(np.array([np.nan, 1.0]), np.array([1.0])), 1)


def test_hydrogen_fd_levels():
    grid = RadialGrid(60.0, 6000)
    ev = lowest_eigenvalues(discretize(0.0, 1.0, grid), 3)
    assert ev == pytest.approx([-0.5, -0.125, -1 / 18], abs=2e-5)


def test_fractional_L_fd_level():
    grid = RadialGrid(60.0, 6000)
    (e,) = lowest_eigenvalues(discretize(0.5, 1.0, grid), 1)
    assert e == pytest.approx(-1 / 4.5, abs=1e-4)


@pytest.mark.parametrize("L", [0.0, 0.5, 1.0])
def test_second_order_convergence(L):
    N = L + 1
    errors = []
    for n in (4000, 8000):
        (e,) = lowest_eigenvalues(discretize(L, 1.0, RadialGrid(30 * N, n)), 1)
        errors.append(abs(e - energy_internal(N, 1.0)))
    assert 3.5 <= errors[0] / errors[1] <= 4.5


def test_eigenvector_two_by_two():
    v = eigenvector(TWO_BY_TWO, 1.0)
    assert v == pytest.approx(np.array([1.0, 1.0]) / math.sqrt(2), abs=1e-12)


def test_eigenvector_hydrogen_ground_state():
    grid = RadialGrid(30.0, 6000)
    T = discretize(0.0, 1.0, grid)
    ev = lowest_eigenvalues(T, 2)
    v0, v1 = eigenvector(T, ev[0], grid.h), eigenvector(T, ev[1], grid.h)
    assert np.max(np.abs(v0 - ground_state_u(0, 1)(grid.r))) < 1e-3
    assert abs(grid.h * np.dot(v0, v1)) < 1e-6
    for lam, v in zip(ev, (v0, v1)):
        assert np.linalg.norm(T.matvec(v) - lam * v) <= 1e-6 * np.linalg.norm(v)


def test_eigenvector_far_from_eigenvalue_fails():
    with pytest.raises(ConvergenceFailure):
        eigenvector(TWO_BY_TWO, 2.0, max_iter=3)


@pytest.mark.parametrize("L,gamma", [(0.0, 1.0), (1.0, 1.0), (2.7, 1.3)])
def test_isospectrality(L, gamma):
    grid = RadialGrid.for_level(L + 3, gamma)
    rep = verify_isospectrality(L, gamma, grid, 3)
    assert rep.passed, rep
    assert len(rep.deviations) == 2


def test_isospectrality_hydrogen_levels():
    rep = verify_isospectrality(0.0, 1.0, RadialGrid(90.0, 6000), 3)
    assert rep.partner_levels == pytest.approx([-0.125, -1 / 18], abs=1e-4)


def test_level_tolerance():
    assert level_tolerance(0.01, 0.1) == 1e-4
    assert level_tolerance(0.1, 1.0) == pytest.approx(0.05)


@pytest.mark.parametrize("L,gamma", [(0.0, 1.0), (1.5, 2.0), (0.0, 2.0), (1.5, 1.0)])
def test_ode_ground_state(L, gamma):
    r_max = 30 * (L + 1) / gamma
    grid = RadialGrid(r_max, math.ceil(r_max / 0.01))
    psi = integrate_ground_state_ode(L, gamma, grid)
    assert np.max(np.abs(psi - ground_state_u(L, gamma)(grid.r))) <= 1e-6


def test_ode_local_ratio():
    L, gamma = 0.7, 1.0
    grid = RadialGrid(0.01 * 2001, 2000)  # h = 1e-2
    psi = integrate_ground_state_ode(L, gamma, grid)
    kappa = gamma / (L + 1)
    # first step sits on the (L+1)/r singularity, so only a loose local check
    assert psi[1] / psi[0] == pytest.approx(2 ** (L + 1) * math.exp(-kappa * grid.h), rel=1e-3)
    far = psi[1000] / psi[999]  # r = 1001 h and 1000 h
    assert far == pytest.approx((1001 / 1000) ** (L + 1) * math.exp(-kappa * grid.h), rel=1e-9)
