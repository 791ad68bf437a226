"""
Parameterized circuits V(θ) = Π G_i(θ_i) W_i.

Responsibilities:
- ParamCircuit: an ordered layout of (gate kind, wires, parameter slot)
- Dense evaluation, state evolution and per-slot shifted unitaries
- Layout constructors: hardware-efficient (HEC) and QCNN
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.typing import ArrayLike

from qml.constants import UNITARY_TOL
from qml.errors import ArgumentError, UnsupportedGateError, ValidationError
from qml.linalg import ComplexArray, is_unitary
from qml.rng import as_generator
from qml.sim import gates
from qml.sim.circuit import apply_gate
from qml.sim.gates import Gate, embed_operator
from qml.sim.paulis import PAULI_MATRICES
from qml.sim.states import State

logger = logging.getLogger(__name__)

_UNITARY_CHECK_QUBITS = 8


class GateKind(Enum):
    RX = "RX"
    RY = "RY"
    RZ = "RZ"
    CRY = "CRY"
    CZ = "CZ"
    CNOT = "CNOT"

    @property
    def parameterized(self) -> bool:
        return self in (GateKind.RX, GateKind.RY, GateKind.RZ, GateKind.CRY)

    @property
    def arity(self) -> int:
        return 1 if self in (GateKind.RX, GateKind.RY, GateKind.RZ) else 2


@dataclass(frozen=True, slots=True)
class ParamOp:
    kind: GateKind
    wires: tuple[int, ...]
    slot: int | None = None


def _cry(theta: float) -> Gate:
    base = gates.controlled(gates.ry(theta))
    generator = np.kron(np.diag([0.0, 1.0]), PAULI_MATRICES["Y"] / 2)
    return Gate(base.matrix, "CRY", float(theta), generator)


def gate_for(op: ParamOp, theta: float = 0.0) -> Gate:
    match op.kind:
        case GateKind.RX | GateKind.RY | GateKind.RZ:
            return gates.rotation(op.kind.value[1], theta)
        case GateKind.CRY:
            return _cry(theta)
        case GateKind.CZ:
            return gates.CZ
        case GateKind.CNOT:
            return gates.CNOT


@dataclass(frozen=True, slots=True)
class ParamCircuit:
    """Ordered gate layout; every parameter slot is used by exactly one gate."""

    num_qubits: int
    layers: int
    ops: tuple[ParamOp, ...]
    num_params: int
    name: str = ""
    readout: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.num_qubits < 1:
            raise ValidationError("circuit needs at least one qubit")
        slots = [op.slot for op in self.ops if op.slot is not None]
        if sorted(slots) != list(range(self.num_params)):
            raise ValidationError("parameter slots must be referenced exactly once each")
        for op in self.ops:
            if len(op.wires) != op.kind.arity:
                raise ValidationError(f"{op.kind.value} acts on {op.kind.arity} wires")
            if any(w < 0 or w >= self.num_qubits for w in op.wires):
                raise ValidationError(f"wires {op.wires} out of range")
            if op.kind.parameterized != (op.slot is not None):
                raise ValidationError(f"{op.kind.value} slot mismatch")
        if self.num_qubits <= _UNITARY_CHECK_QUBITS:
            probe = as_generator(0).uniform(0, 2 * math.pi, self.num_params)
            if not is_unitary(self.unitary(probe), UNITARY_TOL):
                raise ValidationError(f"circuit {self.name!r} does not evaluate to a unitary")

    @property
    def dim(self) -> int:
        return 2**self.num_qubits

    def _angles(self, theta: ArrayLike) -> np.ndarray:
        t = np.asarray(theta, dtype=float).reshape(-1)
        if t.size != self.num_params:
            raise ArgumentError(f"circuit takes {self.num_params} parameters, got {t.size}")
        return t

    def gates(self, theta: ArrayLike) -> list[tuple[Gate, tuple[int, ...]]]:
        t = self._angles(theta)
        return [(gate_for(op, 0.0 if op.slot is None else float(t[op.slot])), op.wires)
                for op in self.ops]

    def apply(self, theta: ArrayLike, state: State) -> State:
        if state.num_qubits != self.num_qubits:
            raise ArgumentError(f"state has {state.num_qubits} qubits, circuit {self.num_qubits}")
        for gate, wires in self.gates(theta):
            state = apply_gate(state, gate, wires)
        return state

    def _embedded(self, theta: ArrayLike) -> list[ComplexArray]:
        return [embed_operator(g.matrix, w, self.num_qubits) for g, w in self.gates(theta)]

    def unitary(self, theta: ArrayLike) -> ComplexArray:
        u = np.eye(self.dim, dtype=np.complex128)
        for m in self._embedded(theta):
            u = m @ u
        return u

    def check_shift_rule(self) -> None:
        """Every generator G must satisfy (2G)² = I."""
        for op in self.ops:
            if op.slot is None:
                continue
            g = gate_for(op).generator
            assert g is not None
            if not np.allclose(4 * g @ g, np.eye(g.shape[0]), atol=1e-12):
                raise UnsupportedGateError(
                    f"{op.kind.value} on wires {op.wires} has a generator that is not "
                    "half an involution; the parameter-shift rule does not apply"
                )

    def shifted_unitaries(self, theta: ArrayLike, shift: float = math.pi / 2) -> np.ndarray:
        """Array (P, 2, D, D) holding V(θ ± shift·e_j) for every slot j."""
        t = self._angles(theta)
        mats = self._embedded(t)
        n = len(mats)
        eye = np.eye(self.dim, dtype=np.complex128)
        prefix = [eye]
        for m in mats[:-1]:
            prefix.append(m @ prefix[-1])
        suffix = [eye] * n
        for i in range(n - 2, -1, -1):
            suffix[i] = suffix[i + 1] @ mats[i + 1]
        out = np.empty((self.num_params, 2, self.dim, self.dim), dtype=np.complex128)
        for i, op in enumerate(self.ops):
            if op.slot is None:
                continue
            for k, sign in enumerate((1.0, -1.0)):
                g = gate_for(op, float(t[op.slot]) + sign * shift)
                local = embed_operator(g.matrix, op.wires, self.num_qubits)
                out[op.slot, k] = suffix[i] @ local @ prefix[i]
        return out


# ---------------------------------------------------------------------------
# Layout constructors
# ---------------------------------------------------------------------------

def _rot_ops(wire: int, first_slot: int) -> list[ParamOp]:
    """Rot(φ, θ, ω) = RZ(ω) RY(θ) RZ(φ) as three slotted rotations."""
    return [
        ParamOp(GateKind.RZ, (wire,), first_slot),
        ParamOp(GateKind.RY, (wire,), first_slot + 1),
        ParamOp(GateKind.RZ, (wire,), first_slot + 2),
    ]


def hec_pairs(num_qubits: int, layer: int) -> list[tuple[int, int]]:
    """Brick pattern: even layers pair (0,1),(2,3)…; odd layers pair (1,2),(3,4)…"""
    offset = layer % 2
    return [(a, a + 1) for a in range(offset, num_qubits - 1, 2)]


def build_hec(num_qubits: int, layers: int, entangler: str = "CZ") -> ParamCircuit:
    """Hardware-efficient circuit: per-qubit Rot then an alternating brick of entanglers."""
    if num_qubits < 1 or layers < 1:
        raise ArgumentError("HEC needs N ≥ 1 and L ≥ 1")
    try:
        ent = GateKind(entangler.upper())
    except ValueError:
        raise ArgumentError(f"entangler must be CZ or CNOT, got {entangler!r}") from None
    if ent not in (GateKind.CZ, GateKind.CNOT):
        raise ArgumentError(f"entangler must be CZ or CNOT, got {entangler!r}")
    ops: list[ParamOp] = []
    slot = 0
    for layer in range(layers):
        for q in range(num_qubits):
            ops += _rot_ops(q, slot)
            slot += 3
        ops += [ParamOp(ent, pair) for pair in hec_pairs(num_qubits, layer)]
    return ParamCircuit(num_qubits, layers, tuple(ops), slot, f"hec-{ent.value.lower()}",
                        tuple(range(num_qubits)))


def build_qcnn(num_qubits: int) -> ParamCircuit:
    """Convolution (RY-RY-CNOT on neighbour pairs) and pooling (CRY then discard) rounds.

    Pooling keeps the second wire of each pair; the surviving wire is the readout.
    The CRY generator is not half an involution, so gradients need another method.
    """
    if num_qubits < 1:
        raise ArgumentError("QCNN needs at least one qubit")
    active = list(range(num_qubits))
    ops: list[ParamOp] = []
    slot = rounds = 0
    while len(active) > 1:
        rounds += 1
        for offset in (0, 1):
            for i in range(offset, len(active) - 1, 2):
                a, b = active[i], active[i + 1]
                ops += [ParamOp(GateKind.RY, (a,), slot), ParamOp(GateKind.RY, (b,), slot + 1),
                        ParamOp(GateKind.CNOT, (a, b))]
                slot += 2
        kept: list[int] = []
        for i in range(0, len(active) - 1, 2):
            ops.append(ParamOp(GateKind.CRY, (active[i], active[i + 1]), slot))
            slot += 1
            kept.append(active[i + 1])
        if len(active) % 2:
            kept.append(active[-1])
        active = kept
    return ParamCircuit(num_qubits, rounds, tuple(ops), slot, "qcnn", tuple(active))


def circuit_from_layout(
    num_qubits: int, layout: Sequence[tuple[str, Sequence[int]]], name: str = "custom",
) -> ParamCircuit:
    """Circuit from (gate kind, wires) pairs; parameterized gates get consecutive slots."""
    ops: list[ParamOp] = []
    slot = 0
    for kind_name, wires in layout:
        try:
            kind = GateKind(kind_name.upper())
        except ValueError:
            raise ArgumentError(f"unknown gate kind {kind_name!r}") from None
        if kind.parameterized:
            ops.append(ParamOp(kind, tuple(wires), slot))
            slot += 1
        else:
            ops.append(ParamOp(kind, tuple(wires)))
    return ParamCircuit(num_qubits, 1, tuple(ops), slot, name, tuple(range(num_qubits)))
