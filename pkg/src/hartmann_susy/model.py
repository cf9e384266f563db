"""Hartmann ring-shaped potential: parameters, quantum numbers and spectra.

Internal units measure length in ``a0`` and energy in ``2|eps0|``, so the
Coulomb strength of the radial problem is ``gamma = eta * sigma**2`` whatever
the underlying ``(mu, e^2, hbar)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .quasipoly import DomainError, QuasiPolynomial, gamma_real
from .susy import (
    InvalidQuantumNumbers,
    build_u,
    energy_internal,
    radial_node_count,
    radial_R,
)

THETA_ATOL = 1e-9


@dataclass(frozen=True)
class HartmannParams:
    eta: float
    sigma: float

    def __post_init__(self):
        if not (self.eta > 0 and self.sigma > 0):
            raise DomainError(f"eta and sigma must be positive, got {self.eta}, {self.sigma}")

    @property
    def gamma(self) -> float:
        return self.eta * self.sigma**2


@dataclass(frozen=True)
class UnitSystem:
    mu: float = 1.0
    e2: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if not (self.mu > 0 and self.e2 > 0 and self.hbar > 0):
            raise DomainError("mu, e2 and hbar must be positive")

    @property
    def a0(self) -> float:
        return self.hbar**2 / (self.mu * self.e2)

    @property
    def eps0(self) -> float:
        return -0.5 * self.mu * self.e2**2 / self.hbar**2


@dataclass(frozen=True)
class QuantumNumbers:
    m: int
    nu: int
    nprime: int
    M_abs: float
    L: float
    N: float


@dataclass(frozen=True)
class SpectrumEntry:
    qn: QuantumNumbers
    energy_internal: float
    energy_physical: float
    Lambda: float

    @property
    def energy_over_eps0(self) -> float:
        """Energy in units of ``|eps0|``: ``-eta^2 sigma^4 / N^2``."""
        # internal energy unit is 2|eps0|
        return 2.0 * self.energy_internal


def potential_value(p: HartmannParams, units: UnitSystem, r: float, theta: float) -> float:
    if not r > 0:
        raise DomainError(f"r must be positive, got {r}")
    s = math.sin(theta)
    if abs(s) <= THETA_ATOL:
        raise DomainError(f"theta = {theta} lies on the ring-shaped barrier axis")
    a0, eps0 = units.a0, units.eps0
    return p.gamma * eps0 * (2.0 * a0 / r - p.eta * a0**2 / (r * r * s * s))


def effective_m(p: HartmannParams, m: int) -> float:
    return math.sqrt(m * m + (p.eta * p.sigma) ** 2)


def derive_quantum_numbers(p: HartmannParams, m: int, nu: int, nprime: int) -> QuantumNumbers:
    if nu < 0 or nprime < 0:
        raise InvalidQuantumNumbers(f"nu'={nu} and n'={nprime} must be non-negative")
    M = effective_m(p, m)
    L = nu + M
    # integer part first, so degenerate (nu', n') splits give bit-identical N
    N = M + float(nu + nprime + 1)
    return QuantumNumbers(int(m), int(nu), int(nprime), M, L, N)


def spectrum_entry(p: HartmannParams, units: UnitSystem, qn: QuantumNumbers) -> SpectrumEntry:
    lam = p.eta**2 * p.sigma**4 * abs(units.eps0)
    return SpectrumEntry(qn, energy_internal(qn.N, p.gamma), -lam / qn.N**2, lam)


def spectrum(
    p: HartmannParams, units: UnitSystem, m_range: tuple[int, int], max_excitation: int
) -> list[SpectrumEntry]:
    """All states with ``m_min <= m <= m_max`` and ``nu' + n' <= max_excitation``."""
    if max_excitation < 0:
        raise ValueError("max_excitation must be >= 0")
    m_min, m_max = m_range
    entries = []
    for m in range(m_min, m_max + 1):
        for nu in range(max_excitation + 1):
            for nprime in range(max_excitation + 1 - nu):
                entries.append(spectrum_entry(p, units, derive_quantum_numbers(p, m, nu, nprime)))
    entries.sort(key=lambda e: (e.energy_internal, abs(e.qn.m), e.qn.nu, e.qn.nprime, e.qn.m))
    return entries


def degeneracy_at_level(p: HartmannParams, m: int, N: float) -> int:
    """Number of ``L`` values (``|M|, |M|+1, ..., N-1``) sharing the level ``N``."""
    return radial_node_count(N, effective_m(p, m)) + 1


def radial_wavefunction(p: HartmannParams, units: UnitSystem, qn: QuantumNumbers) -> QuasiPolynomial:
    """``R_{N,L}`` in internal units (``r`` in multiples of ``a0``), ``int R^2 r^2 dr = 1``."""
    del units  # the internal-unit function is the same for every unit system
    return radial_R(build_u(qn.N, qn.L, p.gamma))


# Explicit normalized forms, written out independently of the raising chain.

def closed_form_lowest(M: float, gamma: float) -> QuasiPolynomial:
    """``R_{|M|+1,|M|}``."""
    s = 2.0 * gamma / (M + 1.0)
    c = s ** (M + 1.5) / math.sqrt(gamma_real(2.0 * M + 3.0))
    return QuasiPolynomial.monomial(M, gamma / (M + 1.0), c)


def closed_form_lowest_next(M: float, gamma: float) -> QuasiPolynomial:
    """``R_{|M|+2,|M|+1}``."""
    s = 2.0 * gamma / (M + 2.0)
    c = s ** (M + 2.5) / math.sqrt(gamma_real(2.0 * M + 5.0))
    return QuasiPolynomial.monomial(M + 1.0, gamma / (M + 2.0), c)


def closed_form_one_node(M: float, gamma: float) -> QuasiPolynomial:
    """``R_{|M|+2,|M|}`` with a negative leading coefficient, opposite to the chain convention."""
    s = 2.0 * gamma / (M + 2.0)
    c = -(s ** (M + 1.5)) * math.sqrt(1.0 / (2.0 * (M + 2.0) * gamma_real(2.0 * M + 3.0)))
    return QuasiPolynomial(M, (c * (2.0 * M + 2.0), -c * s), gamma / (M + 2.0))


def laguerre(k: int, a: float, x):
    """Generalized Laguerre ``L_k^(a)(x)`` by the three-term recurrence."""
    x = np.asarray(x, dtype=float)
    prev, cur = np.zeros_like(x), np.ones_like(x)
    for j in range(k):
        prev, cur = cur, ((2 * j + 1 + a - x) * cur - (j + a) * prev) / (j + 1)
    return cur


def hydrogen_R(n: int, l: int, Z: float, r):
    """Textbook hydrogen-like radial function, positive at small ``r``."""
    rho = 2.0 * Z * np.asarray(r, dtype=float) / n
    norm = math.sqrt((2.0 * Z / n) ** 3 * math.factorial(n - l - 1) / (2.0 * n * math.factorial(n + l)))
    return norm * np.exp(-rho / 2) * rho**l * laguerre(n - l - 1, 2 * l + 1, rho)


@dataclass
class HydrogenLimitReport:
    gamma: float
    deviations: dict[tuple[int, int], float]
    tol: float = 1e-10

    @property
    def max_deviation(self) -> float:
        return max(self.deviations.values())

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tol


def hydrogen_limit_check(gamma: float, n_max: int = 3, tol: float = 1e-10) -> HydrogenLimitReport:
    """Compare ``R_{N,L}`` for integer ``L`` with Laguerre-based hydrogen functions of charge ``gamma``."""
    if not gamma > 0:
        raise DomainError("gamma must be positive")
    deviations = {}
    for n in range(1, n_max + 1):
        r = np.linspace(0.0, 40.0 * n / gamma, 4001)
        for l in range(min(n, 3)):
            R = radial_R(build_u(n, l, gamma))
            ref = hydrogen_R(n, l, gamma, r)
            deviations[(n, l)] = float(np.max(np.abs(R(r) - ref)) / np.max(np.abs(ref)))
    return HydrogenLimitReport(gamma, deviations, tol)
