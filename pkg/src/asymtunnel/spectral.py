"""Biorthogonal eigensystems and the metric operator.

A non-Hermitian ``H`` has right eigenvectors ``H r = E r`` (columns) and left
eigenvectors ``l H = E l`` (rows). They are normalized so that
``l_r . r_s = delta_rs`` and ``sum_s r_s l_s = 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from ._validation import check_square
from .errors import DegenerateSpectrum, NumericalError
from .model import ModelParams

__all__ = [
    "BiorthogonalSystem",
    "MetricOperator",
    "eigensystem_analytic",
    "eigensystem_numeric",
    "metric_operator",
]

MAX_NUMERIC_DIM = 8
DEGENERACY_THRESHOLD = 1e-9


@dataclass(frozen=True, eq=False)
class BiorthogonalSystem:
    """Eigenvalues with paired right (columns of ``right``) and left (rows of ``left``) vectors.

    Eigenvalues are ordered by real part descending, ties broken by imaginary
    part descending.
    """

    eigenvalues: np.ndarray
    right: np.ndarray
    left: np.ndarray

    @property
    def dimension(self) -> int:
        return self.eigenvalues.shape[0]

    @property
    def right_vectors(self) -> list[np.ndarray]:
        return [self.right[:, s] for s in range(self.dimension)]

    @property
    def left_vectors(self) -> list[np.ndarray]:
        return [self.left[s, :] for s in range(self.dimension)]

    def overlaps(self) -> np.ndarray:
        """Matrix of ``<<E^r|E^s>>``; the identity for a valid system."""
        return self.left @ self.right

    def biorthogonality_residual(self) -> float:
        return float(np.max(np.abs(self.overlaps() - np.eye(self.dimension))))

    def completeness_residual(self) -> float:
        return float(np.max(np.abs(self.right @ self.left - np.eye(self.dimension))))

    def reconstruct(self) -> np.ndarray:
        """``sum_s E^s |E^s>> <<E^s|``, which must give back the Hamiltonian."""
        return (self.right * self.eigenvalues) @ self.left


@dataclass(frozen=True, eq=False)
class MetricOperator:
    matrix: np.ndarray

    def hermiticity_residual(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T)))

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)

    def is_positive_definite(self) -> bool:
        return self.hermiticity_residual() < 1e-12 and bool(np.all(self.eigenvalues() > 0.0))

    def pseudo_hermiticity_residual(self, hamiltonian) -> float:
        """``max |eta H - H^dagger eta|``."""
        h = np.asarray(hamiltonian, dtype=complex)
        return float(np.max(np.abs(self.matrix @ h - h.conj().T @ self.matrix)))


def eigensystem_analytic(params: ModelParams) -> BiorthogonalSystem:
    """Closed-form eigensystem of the 2x2 single-excitation Hamiltonian.

    Eigenvalues are ``(+omega, -omega)``. The right vectors are
    ``[1/sqrt(beta), -+s]/sqrt(2)`` and the left vectors ``[sqrt(beta), -+s]/sqrt(2)``
    with ``s = sign(g)``; for ``g > 0`` these are the textbook pairs and for
    ``g < 0`` the labels swap so that the first entry always belongs to ``+omega``.
    """
    sb = math.sqrt(params.beta)
    sg = 1.0 if params.g > 0 else -1.0
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    eigenvalues = np.array([params.omega, -params.omega], dtype=complex)
    right = inv_sqrt2 * np.array([[1.0 / sb, 1.0 / sb], [-sg, sg]], dtype=complex)
    left = inv_sqrt2 * np.array([[sb, -sg], [sb, sg]], dtype=complex)
    return BiorthogonalSystem(eigenvalues, right, left)


def _ordering(eigenvalues: np.ndarray, scale: float) -> np.ndarray:
    # Real parts equal to within roundoff count as ties.
    keys = [(-round(ev.real / scale, 12), -ev.imag) for ev in eigenvalues]
    return np.array(sorted(range(len(eigenvalues)), key=keys.__getitem__))


def _min_gap(eigenvalues: np.ndarray) -> float:
    n = eigenvalues.shape[0]
    if n < 2:
        return math.inf
    diffs = np.abs(eigenvalues[:, None] - eigenvalues[None, :])
    return float(np.min(diffs[~np.eye(n, dtype=bool)]))


def eigensystem_numeric(hamiltonian) -> BiorthogonalSystem:
    """Numerical biorthogonal eigensystem of a small (n <= 8) diagonalizable matrix.

    Right vectors are scaled to unit norm with their first nonzero component
    real and positive; each left vector is then rescaled so ``<<E^s|E^s>> = 1``.

    Raises
    ------
    NonSquare
        If ``hamiltonian`` is not square or is larger than 8x8.
    DegenerateSpectrum
        If two eigenvalues are closer than ``1e-9`` times the spectral radius.
    """
    h = check_square(hamiltonian, MAX_NUMERIC_DIM)
    eigenvalues, vl, vr = scipy.linalg.eig(h, left=True, right=True)
    radius = float(np.max(np.abs(eigenvalues)))
    gap = _min_gap(eigenvalues)
    if radius == 0.0 or gap < DEGENERACY_THRESHOLD * radius:
        raise DegenerateSpectrum(
            f"eigenvalue gap {gap:.3e} below {DEGENERACY_THRESHOLD:g} x spectral radius "
            f"{radius:.3e}; matrix is at or near an exceptional point"
        )

    order = _ordering(eigenvalues, radius)
    eigenvalues = eigenvalues[order]
    right = vr[:, order].astype(complex)
    # scipy returns u with u^H H = E u^H; the row form is conj(u).
    left = vl[:, order].conj().T.astype(complex)

    n = h.shape[0]
    for s in range(n):
        r = right[:, s] / np.linalg.norm(right[:, s])
        pivot = int(np.flatnonzero(np.abs(r) > 1e-12 * np.max(np.abs(r)))[0])
        r = r * (abs(r[pivot]) / r[pivot])
        right[:, s] = r
        pairing = left[s, :] @ r
        if abs(pairing) < 1e-14 * np.linalg.norm(left[s, :]):
            raise DegenerateSpectrum(f"left/right pairing vanishes for eigenvalue {eigenvalues[s]!r}")
        left[s, :] = left[s, :] / pairing
    return BiorthogonalSystem(eigenvalues, right, left)


def metric_operator(system: BiorthogonalSystem) -> MetricOperator:
    """``sum_s (l_s)^dagger l_s`` built from the left vectors."""
    eta = sum(np.outer(row.conj(), row) for row in system.left_vectors)
    metric = MetricOperator(eta)
    if not metric.is_positive_definite():
        raise NumericalError("metric operator is not Hermitian positive definite")
    return metric
