"""Factorization machinery for the Coulomb-like radial problem.

Operators act on :class:`QuasiPolynomial` values. The shifted Hamiltonian of
level ``L`` is ``H_L + kappa_L**2 / 2 = A+_L A-_L`` with
``kappa_L = gamma / (L + 1)``; its partner ``A-_L A+_L`` equals
``H_{L+1} + kappa_L**2 / 2``.  Energies reported to callers are always the
unshifted eigenvalues of ``H_L``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .quasipoly import (
    DomainError,
    QuasiPolynomial,
    apply_schrodinger,
    gamma_real,
    max_relative_deviation,
    schrodinger_scale,
    qp_apply_radial_hamiltonian,
    qp_differentiate,
    qp_inner_product,
    qp_scale,
    qp_shift_power,
)

SQRT_HALF = 1.0 / math.sqrt(2.0)
INTEGRALITY_TOL = 1e-9
RICCATI_RTOL = 1e-12


class InvalidQuantumNumbers(ValueError):
    pass


class RiccatiMismatch(ArithmeticError):
    pass


@dataclass(frozen=True)
class Superpotential:
    """``W_L(r) = -(L+1)/r + gamma/(L+1)``."""

    L: float
    gamma: float

    def __post_init__(self):
        if not self.L > -1.0:
            raise DomainError(f"L must exceed -1, got {self.L}")
        if not self.gamma > 0:
            raise DomainError(f"gamma must be positive, got {self.gamma}")

    @property
    def kappa(self) -> float:
        return self.gamma / (self.L + 1.0)

    @property
    def shift(self) -> float:
        """Constant separating the factorized Hamiltonian from ``H_L``."""
        return 0.5 * self.kappa**2


@dataclass(frozen=True)
class RadialPotentialCoeffs:
    """``V(r) = centrifugal/(2 r^2) - coulomb/r + constant``."""

    centrifugal: float
    coulomb: float
    constant: float

    def __call__(self, r: float) -> float:
        return 0.5 * self.centrifugal / r**2 - self.coulomb / r + self.constant

    def apply(self, f: QuasiPolynomial) -> QuasiPolynomial:
        """``(-d^2/dr^2 / 2 + V) f``."""
        return apply_schrodinger(f, self.centrifugal, self.coulomb, self.constant)


def superpotential_value(w: Superpotential, r: float) -> float:
    if not r > 0:
        raise DomainError(f"r must be positive, got {r}")
    return -(w.L + 1.0) / r + w.kappa


def _riccati_expand(w: Superpotential, sign: int) -> dict[int, float]:
    # W = a/r + b with a = -(L+1), b = kappa; W' = -a/r^2.
    # (W^2 + sign W')/2 in powers r^-2, r^-1, r^0.
    a, b = -(w.L + 1.0), w.kappa
    return {
        -2: 0.5 * (a * a - sign * a),
        -1: a * b,
        0: 0.5 * b * b,
    }


def partner_potentials(w: Superpotential) -> tuple[RadialPotentialCoeffs, RadialPotentialCoeffs]:
    L, g = w.L, w.gamma
    const = g * g / (2.0 * (L + 1.0) ** 2)
    v1 = RadialPotentialCoeffs(L * (L + 1.0), g, const)
    v2 = RadialPotentialCoeffs((L + 1.0) * (L + 2.0), g, const)
    for v, sign in ((v1, -1), (v2, +1)):
        terms = _riccati_expand(w, sign)
        expected = {-2: 0.5 * v.centrifugal, -1: -v.coulomb, 0: v.constant}
        for p, c in expected.items():
            if abs(terms[p] - c) > RICCATI_RTOL * max(abs(c), 1.0):
                raise RiccatiMismatch(f"r^{p} coefficient {terms[p]} != {c} (L={L}, gamma={g})")
    return v1, v2


@dataclass(frozen=True)
class LadderOperator:
    """``A(+/-)_L = (-/+ d/dr + W_L) / sqrt(2)``; ``sign`` is +1 or -1."""

    sign: int
    L: float
    gamma: float

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @property
    def superpotential(self) -> Superpotential:
        return Superpotential(self.L, self.gamma)

    def __call__(self, f: QuasiPolynomial) -> QuasiPolynomial:
        return apply_ladder(self, f)


def raising(L: float, gamma: float) -> LadderOperator:
    return LadderOperator(+1, L, gamma)


def lowering(L: float, gamma: float) -> LadderOperator:
    return LadderOperator(-1, L, gamma)


def apply_ladder(op: LadderOperator, f: QuasiPolynomial) -> QuasiPolynomial:
    if f.is_zero:
        return f
    w = op.superpotential
    w_f = qp_scale(qp_shift_power(f, -1), -(w.L + 1.0)) + qp_scale(f, w.kappa)
    out = qp_scale(qp_differentiate(f), -float(op.sign)) + w_f
    return qp_scale(out, SQRT_HALF)


def ground_state_u(L: float, gamma: float) -> QuasiPolynomial:
    """Normalized nodeless solution of ``A-_L u = 0``: ``N_L r^(L+1) exp(-kappa_L r)``."""
    if not L > -1.5:
        raise DomainError(f"ground state needs L > -3/2, got {L}")
    if not gamma > 0:
        raise DomainError(f"gamma must be positive, got {gamma}")
    kappa = gamma / (L + 1.0)
    if kappa <= 0:
        raise DomainError(f"decay rate gamma/(L+1) must be positive, got {kappa}")
    norm = (2.0 * kappa) ** (L + 1.5) / math.sqrt(gamma_real(2.0 * L + 3.0))
    if not math.isfinite(norm) or norm == 0.0:
        log_norm = (L + 1.5) * math.log(2.0 * kappa) - 0.5 * math.lgamma(2.0 * L + 3.0)
        norm = math.exp(log_norm)
    return QuasiPolynomial.monomial(L + 1.0, kappa, norm)


def annihilation_check(L: float, gamma: float) -> float:
    return apply_ladder(lowering(L, gamma), ground_state_u(L, gamma)).max_abs_coeff


def radial_node_count(N: float, L: float) -> int:
    """``n' = N - L - 1``, validated to be a non-negative integer."""
    n = N - L - 1.0
    k = round(n)
    if abs(n - k) > INTEGRALITY_TOL or k < 0:
        raise InvalidQuantumNumbers(f"N - L - 1 = {n} is not a non-negative integer")
    return int(k)


def normalize(u: QuasiPolynomial) -> QuasiPolynomial:
    """Unit norm, lowest-power coefficient positive."""
    if u.is_zero:
        raise ValueError("cannot normalize the zero function")
    scale = 1.0 / math.sqrt(qp_inner_product(u, u))
    if u.coeffs[0] < 0:
        scale = -scale
    return qp_scale(u, scale)


def raising_chain(N: float, L: float, gamma: float) -> QuasiPolynomial:
    """Unnormalized ``A+_L A+_{L+1} ... A+_{N-2} u_{N-1}``."""
    nprime = radial_node_count(N, L)
    top = L + nprime
    u = ground_state_u(top, gamma)
    for j in range(nprime - 1, -1, -1):
        u = apply_ladder(raising(L + j, gamma), u)
    return u


def build_u(N: float, L: float, gamma: float) -> QuasiPolynomial:
    """Normalized radial state ``u_{N,L}`` (``R = u/r``) of ``H_L`` with energy ``-gamma^2/(2N^2)``."""
    if not gamma > 0:
        raise DomainError(f"gamma must be positive, got {gamma}")
    return normalize(raising_chain(N, L, gamma))


def radial_R(u: QuasiPolynomial) -> QuasiPolynomial:
    if not u.is_zero and u.alpha < 1.0 - 1e-12:
        raise DomainError(f"u must vanish at least linearly at the origin (alpha={u.alpha})")
    return qp_shift_power(u, -1)


def energy_internal(N: float, gamma: float) -> float:
    if not N >= 1.0 - 1e-12:
        raise DomainError(f"N must be >= 1, got {N}")
    return -gamma * gamma / (2.0 * N * N)


def factorized_hamiltonian(f: QuasiPolynomial, L: float, gamma: float) -> QuasiPolynomial:
    """``A+_L A-_L f``."""
    return apply_ladder(raising(L, gamma), apply_ladder(lowering(L, gamma), f))


def partner_hamiltonian(f: QuasiPolynomial, L: float, gamma: float) -> QuasiPolynomial:
    """``A-_L A+_L f``."""
    return apply_ladder(lowering(L, gamma), apply_ladder(raising(L, gamma), f))


def factorization_residual(f: QuasiPolynomial, L: float, gamma: float) -> float:
    shift = Superpotential(L, gamma).shift
    lhs = factorized_hamiltonian(f, L, gamma)
    rhs = qp_apply_radial_hamiltonian(f, L, gamma) + qp_scale(f, shift)
    return max_relative_deviation(lhs, rhs, schrodinger_scale(f, L * (L + 1.0), gamma, shift))


def partner_intertwining_check(f: QuasiPolynomial, L: float, gamma: float, eps: float) -> float:
    """Residual of ``(shifted partner Hamiltonian - eps)`` on ``A-_L f``.

    ``eps`` is the eigenvalue of ``f`` under the shifted level-``L``
    Hamiltonian, i.e. ``E + kappa_L**2/2``.
    """
    g = apply_ladder(lowering(L, gamma), f)
    if g.is_zero:
        return 0.0
    _, v2 = partner_potentials(Superpotential(L, gamma))
    scale = schrodinger_scale(g, v2.centrifugal, v2.coulomb, v2.constant)
    return max_relative_deviation(v2.apply(g), qp_scale(g, eps), max(scale, abs(eps) * g.max_abs_coeff))


def eigen_residual(u: QuasiPolynomial, L: float, gamma: float, energy: float) -> float:
    """Coefficient max-norm of ``H_L u - E u`` relative to the larger side."""
    return max_relative_deviation(qp_apply_radial_hamiltonian(u, L, gamma), qp_scale(u, energy))


# Two-component states (f, g) for the supersymmetric Hamiltonian built from
# the charge Q = [[0, 0], [A-, 0]] and its adjoint Q^dag = [[0, A+], [0, 0]].
Pair = tuple[QuasiPolynomial, QuasiPolynomial]
BlockOp = Callable[[Pair], Pair]


def charge(L: float, gamma: float) -> BlockOp:
    down = lowering(L, gamma)

    def q(pair: Pair) -> Pair:
        f, g = pair
        return QuasiPolynomial.zero(g.kappa), down(f)

    return q


def charge_adjoint(L: float, gamma: float) -> BlockOp:
    up = raising(L, gamma)

    def qdag(pair: Pair) -> Pair:
        f, g = pair
        return up(g), QuasiPolynomial.zero(f.kappa)

    return qdag


def _pair_add(a: Pair, b: Pair) -> Pair:
    return a[0] + b[0], a[1] + b[1]


@dataclass
class BlockAlgebraReport:
    L: float
    gamma: float
    q_squared: list[float] = field(default_factory=list)
    h1_residual: list[float] = field(default_factory=list)
    h2_residual: list[float] = field(default_factory=list)
    tol: float = 1e-10

    @property
    def max_residual(self) -> float:
        return max(self.h1_residual + self.h2_residual, default=0.0)

    @property
    def passed(self) -> bool:
        return all(x == 0.0 for x in self.q_squared) and self.max_residual <= self.tol


def susy_block_algebra_check(
    L: float, gamma: float, probes: Sequence[QuasiPolynomial], tol: float = 1e-10
) -> BlockAlgebraReport:
    """Check ``Q^2 = 0`` and ``{Q, Q^dag} = diag(A+A-, A-A+)`` on probe pairs.

    Probe ``i`` is paired with probe ``i+1`` (cyclically). The diagonal blocks
    are compared with the Riccati partner potentials applied directly.
    """
    q, qdag = charge(L, gamma), charge_adjoint(L, gamma)
    v1, v2 = partner_potentials(Superpotential(L, gamma))
    report = BlockAlgebraReport(L, gamma, tol=tol)
    n = len(probes)
    for i, f in enumerate(probes):
        if f.is_zero:
            raise ValueError("probes must be nonzero")
        pair = (f, probes[(i + 1) % n])
        qq = q(q(pair))
        report.q_squared.append(max(qq[0].max_abs_coeff, qq[1].max_abs_coeff))
        anti = _pair_add(q(qdag(pair)), qdag(q(pair)))
        s1 = schrodinger_scale(pair[0], v1.centrifugal, v1.coulomb, v1.constant)
        s2 = schrodinger_scale(pair[1], v2.centrifugal, v2.coulomb, v2.constant)
        report.h1_residual.append(max_relative_deviation(anti[0], v1.apply(pair[0]), s1))
        report.h2_residual.append(max_relative_deviation(anti[1], v2.apply(pair[1]), s2))
    return report
