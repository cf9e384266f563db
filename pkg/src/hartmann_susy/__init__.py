"""Supersymmetric ladder-operator solution of the ring-shaped Hartmann potential."""

__version__ = "0.1.0"

from .quasipoly import QuasiPolynomial, gamma_real, qp_inner_product
from .susy import (
    LadderOperator,
    Superpotential,
    apply_ladder,
    build_u,
    energy_internal,
    ground_state_u,
    radial_R,
)
from .model import HartmannParams, QuantumNumbers, UnitSystem, derive_quantum_numbers, spectrum

__all__ = [
    "QuasiPolynomial",
    "gamma_real",
    "qp_inner_product",
    "LadderOperator",
    "Superpotential",
    "apply_ladder",
    "build_u",
    "energy_internal",
    "ground_state_u",
    "radial_R",
    "HartmannParams",
    "QuantumNumbers",
    "UnitSystem",
    "derive_quantum_numbers",
    "spectrum",
]
