"""Closed algebra of radial functions ``sum_k c_k r**(alpha + k) * exp(-kappa r)``.

Every analytic object in the package (ground states, ladder-operator images,
radial Hamiltonian images) lives in this algebra, so the operations here are
exact up to floating-point coefficient arithmetic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

TRIM_RTOL = 1e-14
KAPPA_RTOL = 1e-12
EXPONENT_ATOL = 1e-12


class QuasiPolyError(ValueError):
    pass


class IncompatibleDecay(QuasiPolyError):
    pass


class IncompatibleExponent(QuasiPolyError):
    pass


class DivergentIntegral(QuasiPolyError):
    pass


class DomainError(ValueError):
    pass


def gamma_real(x: float) -> float:
    """Gamma function for real ``x > 0``."""
    if not x > 0:
        raise DomainError(f"gamma_real requires x > 0, got {x}")
    if x < 171.0:
        return math.gamma(x)
    return math.exp(math.lgamma(x))


def _canonical(alpha: float, coeffs: Iterable[float]) -> tuple[float, tuple[float, ...]]:
    cs = [float(c) for c in coeffs]
    if not cs:
        return 0.0, ()
    scale = max(abs(c) for c in cs)
    if scale == 0.0 or not math.isfinite(scale):
        if scale == 0.0:
            return 0.0, ()
        raise QuasiPolyError("non-finite coefficient")
    cut = TRIM_RTOL * scale
    cs = [0.0 if abs(c) <= cut else c for c in cs]
    lo = next(i for i, c in enumerate(cs) if c != 0.0)
    hi = max(i for i, c in enumerate(cs) if c != 0.0)
    return alpha + lo, tuple(cs[lo : hi + 1])


@dataclass(frozen=True)
class QuasiPolynomial:
    """``f(r) = sum_k coeffs[k] * r**(alpha + k) * exp(-kappa * r)``.

    Coefficients are stored densely from offset 0. The constructor puts the
    value into canonical form: dust below ``1e-14 * max|c|`` is zeroed and
    leading/trailing zeros are removed (leading ones by raising ``alpha``).
    The zero function has empty ``coeffs``.
    """

    alpha: float
    coeffs: tuple[float, ...]
    kappa: float

    def __post_init__(self):
        if not (self.kappa > 0 and math.isfinite(self.kappa)):
            raise QuasiPolyError(f"decay rate must be positive, got {self.kappa}")
        alpha, coeffs = _canonical(self.alpha, self.coeffs)
        object.__setattr__(self, "alpha", float(alpha))
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def monomial(cls, power: float, kappa: float, coeff: float = 1.0) -> "QuasiPolynomial":
        return cls(power, (coeff,), kappa)

    @classmethod
    def from_terms(cls, alpha: float, terms: Mapping[int, float], kappa: float) -> "QuasiPolynomial":
        if not terms:
            return cls.zero(kappa)
        if min(terms) < 0:
            raise ValueError("offsets must be non-negative")
        dense = [0.0] * (max(terms) + 1)
        for k, c in terms.items():
            dense[k] += c
        return cls(alpha, tuple(dense), kappa)

    @classmethod
    def zero(cls, kappa: float) -> "QuasiPolynomial":
        return cls(0.0, (), kappa)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def terms(self) -> dict[int, float]:
        return {k: c for k, c in enumerate(self.coeffs) if c != 0.0}

    @property
    def powers(self) -> list[float]:
        return [self.alpha + k for k in range(len(self.coeffs))]

    @property
    def max_abs_coeff(self) -> float:
        return max((abs(c) for c in self.coeffs), default=0.0)

    def __add__(self, other: "QuasiPolynomial") -> "QuasiPolynomial":
        return qp_add(self, other)

    def __sub__(self, other: "QuasiPolynomial") -> "QuasiPolynomial":
        return qp_add(self, qp_scale(other, -1.0))

    def __neg__(self) -> "QuasiPolynomial":
        return qp_scale(self, -1.0)

    def __mul__(self, c: float) -> "QuasiPolynomial":
        return qp_scale(self, c)

    __rmul__ = __mul__

    def __call__(self, r):
        return qp_evaluate(self, r)

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha,
            "kappa": self.kappa,
            "coeffs": [[k, c] for k, c in self.terms.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "QuasiPolynomial":
        return cls.from_terms(
            float(data["alpha"]), {int(k): float(c) for k, c in data["coeffs"]}, float(data["kappa"])
        )


def _check_kappa(f: QuasiPolynomial, g: QuasiPolynomial) -> None:
    if abs(f.kappa - g.kappa) > KAPPA_RTOL * max(f.kappa, g.kappa):
        raise IncompatibleDecay(f"decay rates differ: {f.kappa} vs {g.kappa}")


def qp_add(f: QuasiPolynomial, g: QuasiPolynomial) -> QuasiPolynomial:
    _check_kappa(f, g)
    if g.is_zero:
        return f
    if f.is_zero:
        return g
    delta = g.alpha - f.alpha
    shift = round(delta)
    if abs(delta - shift) > EXPONENT_ATOL:
        raise IncompatibleExponent(f"exponents {f.alpha} and {g.alpha} differ by a non-integer")
    if shift < 0:
        f, g, shift = g, f, -shift
    out = list(f.coeffs) + [0.0] * max(0, shift + len(g.coeffs) - len(f.coeffs))
    for k, c in enumerate(g.coeffs):
        out[k + shift] += c
    return QuasiPolynomial(f.alpha, tuple(out), f.kappa)


def qp_scale(f: QuasiPolynomial, c: float) -> QuasiPolynomial:
    return QuasiPolynomial(f.alpha, tuple(c * x for x in f.coeffs), f.kappa)


def qp_shift_power(f: QuasiPolynomial, p: int) -> QuasiPolynomial:
    """Multiply by ``r**p``."""
    if f.is_zero:
        return f
    return QuasiPolynomial(f.alpha + p, f.coeffs, f.kappa)


def qp_differentiate(f: QuasiPolynomial) -> QuasiPolynomial:
    # (c r^b e^{-kr})' = c b r^{b-1} e^{-kr} - c k r^b e^{-kr}
    if f.is_zero:
        return f
    n = len(f.coeffs)
    out = [0.0] * (n + 1)
    for k, c in enumerate(f.coeffs):
        out[k] += c * (f.alpha + k)
        out[k + 1] -= c * f.kappa
    return QuasiPolynomial(f.alpha - 1.0, tuple(out), f.kappa)


def qp_apply_radial_hamiltonian(f: QuasiPolynomial, L: float, gamma: float) -> QuasiPolynomial:
    """``-f''/2 + L(L+1)/(2 r^2) f - (gamma/r) f``."""
    return apply_schrodinger(f, L * (L + 1.0), gamma, 0.0)


def apply_schrodinger(f: QuasiPolynomial, centrifugal: float, coulomb: float, constant: float) -> QuasiPolynomial:
    """``-f''/2 + [centrifugal/(2 r^2) - coulomb/r + constant] f``."""
    if f.is_zero:
        return f
    d2 = qp_differentiate(qp_differentiate(f))
    out = qp_scale(d2, -0.5)
    out = out + qp_scale(qp_shift_power(f, -2), 0.5 * centrifugal)
    out = out + qp_scale(qp_shift_power(f, -1), -coulomb)
    if constant:
        out = out + qp_scale(f, constant)
    return out


def _power_integral(beta: float, s: float) -> float:
    """``int_0^inf r**beta exp(-s r) dr``."""
    if beta <= -1.0:
        raise DivergentIntegral(f"r^{beta} is not integrable at the origin")
    z = beta + 1.0
    value = gamma_real(z) / s**z if z < 171.0 else math.inf
    if not math.isfinite(value) or value == 0.0:
        value = math.exp(math.lgamma(z) - z * math.log(s))
    return value


def qp_inner_product(f: QuasiPolynomial, g: QuasiPolynomial) -> float:
    """``int_0^inf f(r) g(r) dr`` evaluated term by term with Gamma integrals."""
    if f.is_zero or g.is_zero:
        return 0.0
    s = f.kappa + g.kappa
    total = 0.0
    for i, a in enumerate(f.coeffs):
        if a == 0.0:
            continue
        for j, b in enumerate(g.coeffs):
            if b == 0.0:
                continue
            total += a * b * _power_integral(f.alpha + g.alpha + i + j, s)
    return total


def qp_norm(f: QuasiPolynomial) -> float:
    return math.sqrt(qp_inner_product(f, f))


def qp_evaluate(f: QuasiPolynomial, r):
    """Evaluate at a scalar or numpy array of radii ``r >= 0``."""
    import numpy as np

    scalar = np.ndim(r) == 0
    rr = np.asarray(r, dtype=float)
    if np.any(rr < 0):
        raise DomainError("quasi-polynomials are defined for r >= 0")
    if f.is_zero:
        out = np.zeros_like(rr)
        return float(out) if scalar else out
    if f.alpha < 0 and np.any(rr == 0):
        raise DomainError(f"r = 0 with negative leading power {f.alpha}")
    poly = np.zeros_like(rr)
    for c in reversed(f.coeffs):
        poly = poly * rr + c
    with np.errstate(divide="ignore", invalid="ignore"):
        lead = np.where(rr == 0, 1.0 if f.alpha == 0 else 0.0, rr ** f.alpha)
    out = poly * lead * np.exp(-f.kappa * rr)
    return float(out) if scalar else out


def schrodinger_scale(f: QuasiPolynomial, centrifugal: float, coulomb: float, constant: float) -> float:
    """Largest coefficient among the separate terms of ``apply_schrodinger``.

    Residuals of identities whose two sides both cancel to ~0 (ground states)
    are measured against this instead of against the vanishing sides.
    """
    if f.is_zero:
        return 0.0
    d2 = qp_differentiate(qp_differentiate(f)).max_abs_coeff
    c = f.max_abs_coeff
    return max(0.5 * d2, 0.5 * abs(centrifugal) * c, abs(coulomb) * c, abs(constant) * c)


def max_relative_deviation(f: QuasiPolynomial, g: QuasiPolynomial, scale: float | None = None) -> float:
    """Max coefficient of ``f - g`` relative to ``scale``.

    ``scale`` defaults to the larger operand's max coefficient.
    """
    if scale is None:
        scale = max(f.max_abs_coeff, g.max_abs_coeff)
    if scale == 0.0:
        return 0.0
    if f.is_zero or g.is_zero:
        return max(f.max_abs_coeff, g.max_abs_coeff) / scale
    diff = _raw_difference(f, g)
    return max(abs(d) for d in diff) / scale


def _raw_difference(f: QuasiPolynomial, g: QuasiPolynomial) -> list[float]:
    # untrimmed, so dust-level residuals are still measured
    _check_kappa(f, g)
    lo = min(f.alpha, g.alpha)
    sf, sg = round(f.alpha - lo), round(g.alpha - lo)
    if abs(f.alpha - lo - sf) > EXPONENT_ATOL or abs(g.alpha - lo - sg) > EXPONENT_ATOL:
        raise IncompatibleExponent(f"exponents {f.alpha} and {g.alpha} differ by a non-integer")
    n = max(sf + len(f.coeffs), sg + len(g.coeffs))
    out = [0.0] * n
    for k, c in enumerate(f.coeffs):
        out[k + sf] += c
    for k, c in enumerate(g.coeffs):
        out[k + sg] -= c
    return out
