"""
Small dense linear-algebra helpers shared by every module.

Responsibilities:
- Type aliases for complex/real arrays
- Unitarity / Hermiticity checks with explicit tolerances
- Power-of-two sizing and zero padding
"""

from __future__ import annotations

import math

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import linalg

from qml.errors import ArgumentError

type ComplexArray = NDArray[np.complex128]
type RealArray = NDArray[np.float64]


def as_complex(a: ArrayLike) -> ComplexArray:
    return np.asarray(a, dtype=np.complex128)


def dagger(a: ComplexArray) -> ComplexArray:
    return a.conj().T


def is_unitary(u: ComplexArray, tol: float) -> bool:
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return bool(np.allclose(u @ dagger(u), np.eye(u.shape[0]), atol=tol, rtol=0.0))


def is_hermitian(h: ComplexArray, tol: float) -> bool:
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        return False
    return bool(np.allclose(h, dagger(h), atol=tol, rtol=0.0))


def qubits_for_dim(dim: int) -> int:
    """Exact qubit count for a power-of-two dimension."""
    if dim < 1 or dim & (dim - 1):
        raise ArgumentError(f"dimension {dim} is not a power of two")
    return dim.bit_length() - 1


def ceil_qubits(dim: int) -> int:
    """Qubits needed to hold *dim* basis states."""
    return 0 if dim <= 1 else math.ceil(math.log2(dim))


def pad_vector(v: ArrayLike, length: int) -> ComplexArray:
    x = as_complex(v).reshape(-1)
    if x.size > length:
        raise ArgumentError(f"vector of length {x.size} does not fit in {length}")
    out = np.zeros(length, dtype=np.complex128)
    out[: x.size] = x
    return out


def pad_square(a: ArrayLike, dim: int) -> ComplexArray:
    m = as_complex(a)
    if m.ndim != 2 or m.shape[0] > dim or m.shape[1] > dim:
        raise ArgumentError(f"matrix of shape {m.shape} does not fit in {dim}x{dim}")
    out = np.zeros((dim, dim), dtype=np.complex128)
    out[: m.shape[0], : m.shape[1]] = m
    return out


def spectral_norm(a: ArrayLike) -> float:
    m = np.asarray(a)
    if m.size == 0:
        return 0.0
    return float(linalg.norm(m, 2))


def complete_unitary(column: ArrayLike) -> ComplexArray:
    """Unitary whose first column is the unit vector *column*."""
    u = as_complex(column).reshape(-1)
    norm = float(np.linalg.norm(u))
    if norm == 0.0:
        raise ArgumentError("cannot complete a zero vector to a unitary")
    u = u / norm
    if u.size == 1:
        return u.reshape(1, 1)
    rest = linalg.null_space(u.conj().reshape(1, -1))
    return np.column_stack([u, rest]).astype(np.complex128)
