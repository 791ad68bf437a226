"""
Gates and the canonical qubit embedding.

Responsibilities:
- Define the Gate record and the standard gate library
- Embed a k-qubit operator on arbitrary targets of an N-qubit register
- Apply operators to statevectors and density matrices by tensor contraction

Qubit ordering: index 0 is the leftmost tensor factor and the most
significant bit of a basis label.  Every embedding in the library goes
through embed_operator / apply_operator below.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from functools import reduce

import numpy as np
from numpy.typing import ArrayLike

from qml.constants import NORM_TOL
from qml.errors import ArgumentError, ValidationError
from qml.linalg import ComplexArray, as_complex, dagger, is_unitary, qubits_for_dim
from qml.sim.paulis import PAULI_MATRICES


@dataclass(frozen=True, slots=True, eq=False)
class Gate:
    """A k-qubit unitary with an optional rotation angle.

    ``generator`` is set for one-parameter gates U(θ) = exp(−iθG); the
    parameter-shift rule needs G to be half an involution (Pauli/2).
    """

    matrix: ComplexArray
    label: str
    parameter: float | None = None
    generator: ComplexArray | None = None

    def __post_init__(self) -> None:
        m = as_complex(self.matrix)
        object.__setattr__(self, "matrix", m)
        qubits_for_dim(m.shape[0])
        if not is_unitary(m, NORM_TOL):
            raise ValidationError(f"gate {self.label!r} is not unitary")

    @property
    def arity(self) -> int:
        return qubits_for_dim(self.matrix.shape[0])

    def adjoint(self) -> Gate:
        parameter = None if self.parameter is None else -self.parameter
        return Gate(dagger(self.matrix), f"{self.label}†", parameter, self.generator)


# ---------------------------------------------------------------------------
# Standard gate library
# ---------------------------------------------------------------------------

_SQRT_HALF = 1.0 / math.sqrt(2.0)

I = Gate(np.eye(2), "I")  # noqa: E741
X = Gate(PAULI_MATRICES["X"], "X")
Y = Gate(PAULI_MATRICES["Y"], "Y")
Z = Gate(PAULI_MATRICES["Z"], "Z")
H = Gate(np.array([[1, 1], [1, -1]]) * _SQRT_HALF, "H")
S = Gate(np.diag([1, 1j]), "S")
SDG = Gate(np.diag([1, -1j]), "S†")
T = Gate(np.diag([1, np.exp(1j * math.pi / 4)]), "T")
CNOT = Gate(
    np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]), "CNOT",
)
CZ = Gate(np.diag([1, 1, 1, -1]), "CZ")
SWAP = Gate(
    np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]), "SWAP",
)


def _rotation(axis: str, theta: float) -> Gate:
    sigma = PAULI_MATRICES[axis]
    matrix = math.cos(theta / 2) * np.eye(2) - 1j * math.sin(theta / 2) * sigma
    return Gate(matrix, f"R{axis}", float(theta), sigma / 2)


def rx(theta: float) -> Gate:
    return _rotation("X", theta)


def ry(theta: float) -> Gate:
    return _rotation("Y", theta)


def rz(theta: float) -> Gate:
    return _rotation("Z", theta)


def rotation(axis: str, theta: float) -> Gate:
    """RX/RY/RZ(θ) = exp(−iθσ/2) by axis letter."""
    axis = axis.upper()
    if axis not in ("X", "Y", "Z"):
        raise ArgumentError(f"unknown rotation axis {axis!r}")
    return _rotation(axis, theta)


def phase(lam: float) -> Gate:
    """P(λ) = diag(1, e^{iλ}); its generator |1⟩⟨1| is not an involution."""
    return Gate(np.diag([1, np.exp(1j * lam)]), "P", float(lam), np.diag([0.0, 1.0]).astype(complex))


def rot(phi: float, theta: float, omega: float) -> Gate:
    """General single-qubit rotation Rot(φ, θ, ω) = RZ(ω) RY(θ) RZ(φ)."""
    matrix = rz(omega).matrix @ ry(theta).matrix @ rz(phi).matrix
    return Gate(matrix, "Rot")


def controlled(gate: Gate) -> Gate:
    """Control on a new leftmost qubit."""
    dim = gate.matrix.shape[0]
    matrix = np.eye(2 * dim, dtype=np.complex128)
    matrix[dim:, dim:] = gate.matrix
    return Gate(matrix, f"C{gate.label}")


def hadamard_all(num_qubits: int) -> ComplexArray:
    """H^{⊗N} as a dense matrix."""
    if num_qubits == 0:
        return np.ones((1, 1), dtype=np.complex128)
    return reduce(np.kron, [H.matrix] * num_qubits)


# ---------------------------------------------------------------------------
# Embedding and application
# ---------------------------------------------------------------------------

def _check_targets(targets: Sequence[int], arity: int, num_qubits: int) -> list[int]:
    t = [int(q) for q in targets]
    if len(t) != arity:
        raise ArgumentError(f"operator acts on {arity} qubits, got {len(t)} targets")
    if len(set(t)) != len(t):
        raise ArgumentError(f"targets {t} are not distinct")
    if any(q < 0 or q >= num_qubits for q in t):
        raise ArgumentError(f"targets {t} out of range for {num_qubits} qubits")
    return t


def permute_qubits(a: ArrayLike, order: Sequence[int]) -> ComplexArray:
    """Reorder tensor factors.

    *a* is a vector or square matrix whose factor at position i holds qubit
    ``order[i]``; the result is expressed in natural order 0..N-1.
    """
    m = as_complex(a)
    n = len(order)
    inverse = list(np.argsort(order))
    if m.ndim == 1:
        return m.reshape([2] * n).transpose(inverse).reshape(-1)
    tensor = m.reshape([2] * (2 * n))
    axes = inverse + [n + i for i in inverse]
    return tensor.transpose(axes).reshape(2**n, 2**n)


def embed_operator(op: ArrayLike, targets: Sequence[int], num_qubits: int) -> ComplexArray:
    """Dense 2^N x 2^N matrix of *op* acting on *targets*, identity elsewhere."""
    m = as_complex(op)
    k = qubits_for_dim(m.shape[0])
    t = _check_targets(targets, k, num_qubits)
    rest = [q for q in range(num_qubits) if q not in t]
    full = np.kron(m, np.eye(2 ** len(rest), dtype=np.complex128))
    return permute_qubits(full, t + rest)


def apply_operator(vec: ArrayLike, op: ArrayLike, targets: Sequence[int]) -> ComplexArray:
    """Apply a k-qubit operator to a flat 2^N vector by tensor contraction."""
    psi = as_complex(vec)
    m = as_complex(op)
    n = qubits_for_dim(psi.size)
    k = qubits_for_dim(m.shape[0])
    t = _check_targets(targets, k, n)
    tensor = np.tensordot(
        m.reshape([2] * (2 * k)), psi.reshape([2] * n), axes=(list(range(k, 2 * k)), t),
    )
    return np.moveaxis(tensor, list(range(k)), t).reshape(-1)


def conjugate_operator(rho: ArrayLike, op: ArrayLike, targets: Sequence[int]) -> ComplexArray:
    """U ρ U† with U acting on *targets* of a 2^N x 2^N matrix."""
    m = as_complex(rho)
    dim = m.shape[0]
    n = qubits_for_dim(dim)
    u = as_complex(op)
    flat = apply_operator(m.reshape(-1), u, list(targets))
    flat = apply_operator(flat, u.conj(), [q + n for q in targets])
    return flat.reshape(dim, dim)
