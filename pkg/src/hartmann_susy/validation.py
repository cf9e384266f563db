"""Check suites run by ``hartmann-susy validate``."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .model import (
    HartmannParams,
    closed_form_lowest,
    closed_form_lowest_next,
    closed_form_one_node,
    effective_m,
)
from .numeric import (
    RadialGrid,
    discretize,
    eigenvector,
    integrate_ground_state_ode,
    level_tolerance,
    lowest_eigenvalues,
    verify_isospectrality,
)
from .quasipoly import QuasiPolynomial, max_relative_deviation, qp_inner_product, qp_scale
from .susy import (
    Superpotential,
    annihilation_check,
    build_u,
    eigen_residual,
    energy_internal,
    factorization_residual,
    ground_state_u,
    partner_intertwining_check,
    partner_potentials,
    radial_R,
    susy_block_algebra_check,
)


@dataclass
class CheckResult:
    check: str
    m: int
    L: float
    N: float
    value: float
    tol: float
    passed: bool

    def as_dict(self) -> dict:
        return asdict(self)


def _record(out, check, m, L, N, value, tol):
    value = float(value)
    out.append(CheckResult(check, m, L, N, value, tol, bool(value <= tol)))


def signless_deviation(a: QuasiPolynomial, b: QuasiPolynomial) -> float:
    return min(max_relative_deviation(a, b), max_relative_deviation(a, qp_scale(b, -1.0)))


def count_positive_roots(u: QuasiPolynomial, r_max: float, samples: int = 20000) -> int:
    """Sign changes of the polynomial factor of ``u`` on ``(0, r_max]``."""
    r = np.linspace(r_max / samples, r_max, samples)
    poly = np.polynomial.polynomial.polyval(r, np.array(u.coeffs))
    s = np.sign(poly[poly != 0])
    return int(np.count_nonzero(s[1:] != s[:-1]))


def _corrupt(u: QuasiPolynomial) -> QuasiPolynomial:
    coeffs = list(u.coeffs)
    if len(coeffs) > 1:
        coeffs[-1] = -coeffs[-1]
    else:
        coeffs.append(1e-3 * coeffs[0])
    return QuasiPolynomial(u.alpha, tuple(coeffs), u.kappa)


def algebra_suite(p: HartmannParams, m: int, max_n: int, inject_error: bool = False) -> list[CheckResult]:
    g = p.gamma
    M = effective_m(p, m)
    levels = [M + j for j in range(max_n)]
    n_top = M + max_n
    out: list[CheckResult] = []
    injected = False
    for L in levels:
        w = Superpotential(L, g)
        partner_potentials(w)  # raises RiccatiMismatch on failure
        _record(out, "riccati", m, L, math.nan, 0.0, 1e-12)
        _record(out, "annihilation", m, L, L + 1, annihilation_check(L, g), 1e-12)
        probes = [ground_state_u(L, g), QuasiPolynomial.monomial(L + 1.3, 0.7 * w.kappa)]
        Ns = [L + 1 + k for k in range(round(n_top - L))]
        states = {N: build_u(N, L, g) for N in Ns}
        probes += list(states.values())
        fac = max(factorization_residual(f, L, g) for f in probes)
        _record(out, "factorization", m, L, math.nan, fac, 1e-10)
        block = susy_block_algebra_check(L, g, probes)
        _record(out, "block_algebra", m, L, math.nan, block.max_residual, block.tol)
        for N, u in states.items():
            E = energy_internal(N, g)
            if inject_error and not injected and len(u.coeffs) > 1:
                u, injected = _corrupt(u), True
            _record(out, "eigen_residual", m, L, N, eigen_residual(u, L, g, E), 1e-9)
            _record(out, "intertwining", m, L, N, partner_intertwining_check(u, L, g, E + w.shift), 1e-8)
            nodes = count_positive_roots(u, 60.0 * N / g)
            _record(out, "node_count", m, L, N, abs(nodes - round(N - L - 1)), 0.0)
        ortho = max(
            abs(qp_inner_product(states[a], states[b]) - (1.0 if a == b else 0.0)) for a in Ns for b in Ns
        )
        _record(out, "orthonormality", m, L, math.nan, ortho, 1e-10)
    if inject_error and not injected:
        u = _corrupt(build_u(M + 1, M, g))
        _record(out, "eigen_residual", m, M, M + 1, eigen_residual(u, M, g, energy_internal(M + 1, g)), 1e-9)
    closed = [
        (build_u(M + 1, M, g), closed_form_lowest(M, g)),
        (build_u(M + 2, M + 1, g), closed_form_lowest_next(M, g)),
        (build_u(M + 2, M, g), closed_form_one_node(M, g)),
    ]
    dev = max(signless_deviation(radial_R(u), ref) for u, ref in closed)
    _record(out, "closed_form", m, M, math.nan, dev, 1e-12)
    return out


def numeric_suite(
    p: HartmannParams, m: int, max_n: int, grid_n: int = 6000, r_max: float | None = None
) -> list[CheckResult]:
    g = p.gamma
    M = effective_m(p, m)
    n_top = M + max_n
    out: list[CheckResult] = []
    for j in range(max_n):
        L = M + j
        n_levels = max_n - j
        grid = RadialGrid(r_max or 30.0 * n_top / g, grid_n)
        T = discretize(L, g, grid)
        evals = lowest_eigenvalues(T, n_levels)
        for k, lam in enumerate(evals):
            N = L + 1 + k
            E = energy_internal(N, g)
            _record(out, "fd_energy", m, L, N, abs(lam - E), level_tolerance(grid.h, E))
            vec = eigenvector(T, lam, grid.h)
            ref = build_u(N, L, g)(grid.r)
            dev = min(np.max(np.abs(vec - ref)), np.max(np.abs(vec + ref)))
            _record(out, "fd_eigenvector", m, L, N, dev, 1e-3)
        iso = verify_isospectrality(L, g, grid, max(n_levels, 2))
        worst = max((d / t for d, t in zip(iso.deviations, iso.tolerances)), default=0.0)
        _record(out, "isospectrality", m, L, math.nan, worst if iso.extra_state else math.inf, 1.0)
        ode_grid = RadialGrid(30.0 * (L + 1) / g, max(16, math.ceil(30.0 * (L + 1) / g / 0.01)))
        psi = integrate_ground_state_ode(L, g, ode_grid)
        ref = ground_state_u(L, g)(ode_grid.r)
        _record(out, "ode_ground_state", m, L, L + 1, np.max(np.abs(psi - ref)), 1e-6)
    return out


def run_validation(
    p: HartmannParams,
    ms: list[int],
    max_n: int,
    suite: str = "all",
    grid_n: int = 6000,
    r_max: float | None = None,
    inject_error: bool = False,
) -> list[CheckResult]:
    results: list[CheckResult] = []
    for m in ms:
        if suite in ("algebra", "all"):
            results += algebra_suite(p, m, max_n, inject_error)
        if suite in ("numeric", "all"):
            results += numeric_suite(p, m, max_n, grid_n, r_max)
    return results
