"""Model parameters and Hamiltonian matrices for the non-reciprocal dimer.

Two sites A and B share one excitation. Hopping A -> B carries weight
``1 + alpha`` and B -> A carries ``1 - alpha``. Units: hbar = 1, so energies
are angular frequencies and the natural time is ``tau = |g| t``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from ._validation import check_finite_scalar
from .errors import DomainError

__all__ = [
    "FULL_BASIS",
    "SINGLE_EXCITATION_BASIS",
    "ModelParams",
    "Site",
    "alpha_from_beta",
    "hamiltonian_2x2",
    "hamiltonian_full",
    "make_params",
    "number_operator",
    "params_from_beta",
]

# Ordering of the two-site occupation basis used by ``hamiltonian_full``.
FULL_BASIS = ("11", "10", "01", "00")
# Single-excitation subspace: "10" has site A occupied, "01" has site B occupied.
SINGLE_EXCITATION_BASIS = ("10", "01")


class Site(str, Enum):
    A = "A"
    B = "B"

    @property
    def index(self) -> int:
        return 0 if self is Site.A else 1


@dataclass(frozen=True)
class ModelParams:
    """Coupling ``g`` and asymmetry ``alpha`` plus the derived ``beta``, ``omega``.

    ``beta = (1 + alpha) / (1 - alpha)`` and ``omega = |g| sqrt(1 - alpha**2)``.
    """

    g: float
    alpha: float
    beta: float = field(init=False)
    omega: float = field(init=False)

    def __post_init__(self):
        g = check_finite_scalar(self.g, "g")
        alpha = check_finite_scalar(self.alpha, "alpha")
        if abs(alpha) >= 1.0:
            raise DomainError(
                f"alpha={alpha!r} is outside (-1, 1); |alpha| = 1 is the exceptional point "
                "where the eigenvectors coalesce"
            )
        if g == 0.0:
            raise DomainError("g must be nonzero (zero coupling has no dynamics)")
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", (1.0 + alpha) / (1.0 - alpha))
        object.__setattr__(self, "omega", abs(g) * math.sqrt(1.0 - alpha * alpha))

    @property
    def is_hermitian(self) -> bool:
        return self.alpha == 0.0

    @property
    def period(self) -> float:
        """Period of the normalized probabilities in physical time, pi / omega."""
        return math.pi / self.omega

    def to_time(self, tau):
        """Convert dimensionless ``tau = |g| t`` to physical time."""
        return tau / abs(self.g)


def make_params(g: float, alpha: float) -> ModelParams:
    return ModelParams(g, alpha)


def alpha_from_beta(beta: float) -> float:
    beta = check_finite_scalar(beta, "beta")
    if beta <= 0.0:
        raise DomainError(f"beta must be strictly positive, got {beta!r}")
    return (beta - 1.0) / (beta + 1.0)


def params_from_beta(g: float, beta: float) -> ModelParams:
    return ModelParams(g, alpha_from_beta(beta))


def hamiltonian_full(params: ModelParams) -> np.ndarray:
    """4x4 Hamiltonian in the ``FULL_BASIS`` order; only the |10>,|01> block is nonzero."""
    h = np.zeros((4, 4), dtype=complex)
    h[1, 2] = -params.g * (1.0 - params.alpha)
    h[2, 1] = -params.g * (1.0 + params.alpha)
    return h


def hamiltonian_2x2(params: ModelParams) -> np.ndarray:
    g, a = params.g, params.alpha
    return np.array([[0.0, -g * (1.0 - a)], [-g * (1.0 + a), 0.0]], dtype=complex)


def number_operator(site) -> np.ndarray:
    """Occupation operator of ``site`` on the single-excitation subspace."""
    site = Site(site)
    n = np.zeros((2, 2), dtype=complex)
    n[site.index, site.index] = 1.0
    return n
