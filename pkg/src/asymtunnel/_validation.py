"""Input validation helpers shared by the public modules."""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, NonSquare


def check_finite_scalar(value, name: str) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"{name} must be a real number, got {value!r}") from exc
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


def check_square(matrix, max_dim: int | None = None) -> np.ndarray:
    """Return ``matrix`` as a complex square array or raise :class:`NonSquare`."""
    arr = np.asarray(matrix, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise NonSquare(f"expected a non-empty square matrix, got shape {arr.shape}")
    if max_dim is not None and arr.shape[0] > max_dim:
        raise NonSquare(f"dimension {arr.shape[0]} exceeds the supported maximum {max_dim}")
    if not np.all(np.isfinite(arr)):
        raise DomainError("matrix has non-finite entries")
    return arr


def check_vector(vector, dim: int | None = None, name: str = "state") -> np.ndarray:
    arr = np.asarray(vector, dtype=complex).reshape(-1)
    if dim is not None and arr.shape[0] != dim:
        raise DomainError(f"{name} must have {dim} components, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} has non-finite components")
    return arr


def check_tau_array(X) -> np.ndarray:
    """Accept a scalar, 1-D array or single-column 2-D array of times."""
    arr = np.asarray(X, dtype=float)
    if arr.ndim == 2:
        if arr.shape[1] != 1:
            raise DomainError(f"expected a single column of times, got shape {arr.shape}")
        arr = arr[:, 0]
    elif arr.ndim > 2:
        raise DomainError(f"expected at most 2 dimensions, got {arr.ndim}")
    arr = np.atleast_1d(arr)
    if not np.all(np.isfinite(arr)):
        raise DomainError("times must be finite")
    return arr
