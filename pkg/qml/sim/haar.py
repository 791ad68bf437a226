"""Haar-random unitaries (Ginibre matrix, QR, diagonal phase fix)."""

from __future__ import annotations

import numpy as np
from scipy import linalg

from qml.errors import ArgumentError
from qml.linalg import ComplexArray
from qml.rng import Seed, as_generator


def haar_random_unitary(dim: int, seed: Seed | None = None) -> ComplexArray:
    if dim < 1:
        raise ArgumentError(f"dimension must be at least 1, got {dim}")
    rng = as_generator(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
    q, r = linalg.qr(z)
    diag = np.diagonal(r)
    return (q * (diag / np.abs(diag))).astype(np.complex128)
