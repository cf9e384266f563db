"""Finite-difference oracle for the radial Hamiltonian ``H_L``.

Second-order central differences on a uniform grid with Dirichlet walls at
``r = 0`` and ``r = r_max`` give a symmetric tridiagonal matrix. Eigenvalues
come from Sturm-count bisection and eigenvectors from shifted inverse
iteration, so nothing here depends on the ladder-operator algebra.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numba
import numpy as np
from scipy.linalg import solve_banded

from .quasipoly import DomainError

PIVOT_FLOOR = 1e-300
MAX_BISECTION_STEPS = 200


class ConvergenceFailure(RuntimeError):
    pass


@dataclass(frozen=True)
class RadialGrid:
    r_max: float
    n: int

    def __post_init__(self):
        if not self.r_max > 0:
            raise ValueError(f"r_max must be positive, got {self.r_max}")
        if self.n < 16:
            raise ValueError(f"need at least 16 interior points, got {self.n}")

    @property
    def h(self) -> float:
        return self.r_max / (self.n + 1)

    @property
    def r(self) -> np.ndarray:
        return self.h * np.arange(1, self.n + 1)

    @classmethod
    def for_level(cls, N: float, gamma: float, n: int = 6000, extent: float = 30.0) -> "RadialGrid":
        """Default box ``r_max = extent * N / gamma``."""
        return cls(extent * N / gamma, n)


@dataclass(frozen=True, eq=False)
class TridiagonalOperator:
    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        d = np.ascontiguousarray(self.diag, dtype=float)
        e = np.ascontiguousarray(self.offdiag, dtype=float)
        if e.shape != (max(d.size - 1, 0),):
            raise ValueError("offdiag must have length len(diag) - 1")
        object.__setattr__(self, "diag", d)
        object.__setattr__(self, "offdiag", e)

    @property
    def n(self) -> int:
        return self.diag.size

    def matvec(self, x: np.ndarray) -> np.ndarray:
        y = self.diag * x
        y[:-1] += self.offdiag * x[1:]
        y[1:] += self.offdiag * x[:-1]
        return y

    def gershgorin(self) -> tuple[float, float]:
        radius = np.zeros(self.n)
        radius[:-1] += np.abs(self.offdiag)
        radius[1:] += np.abs(self.offdiag)
        return float(np.min(self.diag - radius)), float(np.max(self.diag + radius))

    def dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)


def discretize(L: float, gamma: float, grid: RadialGrid) -> TridiagonalOperator:
    if not L > -1.0:
        raise DomainError(f"L must exceed -1, got {L}")
    r, h = grid.r, grid.h
    diag = 1.0 / h**2 + L * (L + 1.0) / (2.0 * r**2) - gamma / r
    off = np.full(grid.n - 1, -0.5 / h**2)
    return TridiagonalOperator(diag, off)


@numba.njit(cache=True)
def _sturm(diag, off2, lam):
    count = 0
    d = 1.0
    for i in range(diag.shape[0]):
        if i == 0:
            d = diag[0] - lam
        else:
            d = (diag[i] - lam) - off2[i - 1] / d
        if abs(d) < PIVOT_FLOOR:
            d = -PIVOT_FLOOR if d < 0.0 else PIVOT_FLOOR
        if d < 0.0:
            count += 1
    return count


@numba.njit(cache=True)
def _bisect(diag, off2, index, lo, hi, tol, max_steps):
    # find the (index)-th eigenvalue (0-based): count(lo) <= index < count(hi)
    steps = 0
    while hi - lo > tol and hi - lo > 4.0 * 2.2e-16 * max(abs(lo), abs(hi)):
        if steps >= max_steps:
            return 0.5 * (lo + hi), -1
        mid = 0.5 * (lo + hi)
        if _sturm(diag, off2, mid) > index:
            hi = mid
        else:
            lo = mid
        steps += 1
    return 0.5 * (lo + hi), steps


def sturm_count(T: TridiagonalOperator, lam: float) -> int:
    """Number of eigenvalues strictly below ``lam`` (LDL^T pivot inertia)."""
    if math.isinf(lam):
        return T.n if lam > 0 else 0
    return int(_sturm(T.diag, T.offdiag**2, float(lam)))


def lowest_eigenvalues(T: TridiagonalOperator, k: int, tol: float = 1e-12) -> list[float]:
    if not 1 <= k <= T.n:
        raise ValueError(f"k must be in [1, {T.n}], got {k}")
    if not tol > 0:
        raise ValueError("tol must be positive")
    if not (np.all(np.isfinite(T.diag)) and np.all(np.isfinite(T.offdiag))):
        raise ConvergenceFailure("matrix has non-finite entries")
    lo, hi = T.gershgorin()
    lo -= 1e-12 * max(1.0, abs(lo))
    hi += 1e-12 * max(1.0, abs(hi))
    off2 = T.offdiag**2
    out = []
    for j in range(k):
        value, steps = _bisect(T.diag, off2, j, lo, hi, tol, MAX_BISECTION_STEPS)
        if steps < 0:
            raise ConvergenceFailure(f"bisection for eigenvalue {j} did not converge")
        out.append(float(value))
        lo = max(lo, value - tol)
    return out


def grid_normalize(u: np.ndarray, h: float) -> np.ndarray:
    return u / math.sqrt(h * float(np.dot(u, u)))


def _fix_sign(u: np.ndarray) -> np.ndarray:
    big = np.abs(u) > 1e-8 * np.max(np.abs(u))
    return -u if u[np.argmax(big)] < 0 else u


def eigenvector(
    T: TridiagonalOperator, lam: float, h: float = 1.0, max_iter: int = 10, rtol: float = 1e-6
) -> np.ndarray:
    """Inverse iteration at shift ``lam``; result has ``h * sum(u**2) == 1``."""
    n = T.n
    scale = max(1.0, float(np.max(np.abs(T.diag))))
    shift = lam + 1e-14 * scale  # keep T - shift numerically nonsingular
    ab = np.zeros((3, n))
    ab[0, 1:] = T.offdiag
    ab[1] = T.diag - shift
    ab[2, :-1] = T.offdiag
    u = np.ones(n) / math.sqrt(n)
    residual = math.inf
    for it in range(max_iter):
        u = solve_banded((1, 1), ab, u, check_finite=False)
        u /= np.linalg.norm(u)
        residual = float(np.linalg.norm(T.matvec(u) - lam * u))
        if it >= 2 and residual <= rtol:
            break
    if not residual <= rtol:
        raise ConvergenceFailure(f"inverse iteration residual {residual:.3e} exceeds {rtol:.1e}")
    return _fix_sign(grid_normalize(u, h))


def level_tolerance(h: float, energy: float) -> float:
    return max(1e-4, 5.0 * h * h * abs(energy))


@dataclass
class IsospectralityReport:
    L: float
    gamma: float
    h: float
    levels: list[float]
    partner_levels: list[float]
    deviations: list[float] = field(default_factory=list)
    tolerances: list[float] = field(default_factory=list)
    extra_state: bool = False

    @property
    def passed(self) -> bool:
        return self.extra_state and all(d <= t for d, t in zip(self.deviations, self.tolerances))


def verify_isospectrality(L: float, gamma: float, grid: RadialGrid, k: int) -> IsospectralityReport:
    """Levels ``1..k-1`` of ``H_L`` against levels ``0..k-2`` of ``H_{L+1}``."""
    if k < 2:
        raise ValueError("k must be at least 2")
    T1 = discretize(L, gamma, grid)
    T2 = discretize(L + 1.0, gamma, grid)
    e1 = lowest_eigenvalues(T1, k)
    e2 = lowest_eigenvalues(T2, k - 1)
    rep = IsospectralityReport(L, gamma, grid.h, e1, e2)
    for a, b in zip(e1[1:], e2):
        rep.deviations.append(abs(a - b))
        rep.tolerances.append(level_tolerance(grid.h, b))
    # exactly one state of H_L lies below the partner's lowest level
    cut = e2[0] - rep.tolerances[0]
    rep.extra_state = sturm_count(T1, cut) == 1 and sturm_count(T2, cut) == 0
    return rep


def integrate_ground_state_ode(L: float, gamma: float, grid: RadialGrid, substeps: int = 4) -> np.ndarray:
    """RK4 solution of ``psi' = ((L+1)/r - kappa_L) psi`` on the grid nodes, grid-normalized.

    Each grid interval is crossed in ``substeps`` equal RK4 steps; the
    ``(L+1)/r`` term is stiff over the first few intervals.
    """
    if not L > -1.5:
        raise DomainError(f"L must exceed -3/2, got {L}")
    kappa = gamma / (L + 1.0)
    h = grid.h
    dt = h / substeps

    def rate(r, y):
        return ((L + 1.0) / r - kappa) * y

    psi = np.empty(grid.n)
    r, y = h, h ** (L + 1.0)
    psi[0] = y
    for i in range(1, grid.n):
        for _ in range(substeps):
            k1 = rate(r, y)
            k2 = rate(r + 0.5 * dt, y + 0.5 * dt * k1)
            k3 = rate(r + 0.5 * dt, y + 0.5 * dt * k2)
            k4 = rate(r + dt, y + dt * k3)
            y += dt * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0
            r += dt
        r = (i + 1) * h
        psi[i] = y
    return grid_normalize(psi, h)
