"""
Gate application and small named circuits.

Responsibilities:
- apply_gate on statevectors (density matrices via conjugation)
- A minimal gate-sequence runner used by the CLI and tests
"""

from __future__ import annotations

from collections.abc import Sequence

from qml.errors import ArgumentError
from qml.sim import gates
from qml.sim.gates import Gate, apply_operator, conjugate_operator
from qml.sim.states import DensityMatrix, State, StateVector

type Step = tuple[Gate, Sequence[int]]


def apply_gate(state: State, gate: Gate, targets: Sequence[int]) -> State:
    """Evolve *state* by *gate* on *targets* (arity and range are checked)."""
    if len(targets) != gate.arity:
        raise ArgumentError(f"{gate.label} has arity {gate.arity}, got {len(targets)} targets")
    if isinstance(state, StateVector):
        return StateVector(apply_operator(state.amplitudes, gate.matrix, targets))
    out = conjugate_operator(state.matrix, gate.matrix, targets)
    return DensityMatrix((out + out.conj().T) / 2)


def run_steps(state: State, steps: Sequence[Step]) -> State:
    for gate, targets in steps:
        state = apply_gate(state, gate, targets)
    return state


def ghz_steps(num_qubits: int) -> list[Step]:
    """H on qubit 0 followed by a CNOT ladder."""
    if num_qubits < 1:
        raise ArgumentError("GHZ needs at least one qubit")
    steps: list[Step] = [(gates.H, [0])]
    steps += [(gates.CNOT, [q, q + 1]) for q in range(num_qubits - 1)]
    return steps


def named_state(name: str, num_qubits: int) -> StateVector:
    """States the CLI can simulate by name: ghz, bell, plus, zero."""
    match name:
        case "ghz":
            out = run_steps(StateVector.zero(num_qubits), ghz_steps(num_qubits))
        case "bell":
            out = run_steps(StateVector.zero(2), ghz_steps(2))
        case "plus":
            out = StateVector.zero(num_qubits)
            for q in range(num_qubits):
                out = apply_gate(out, gates.H, [q])
        case "zero":
            out = StateVector.zero(num_qubits)
        case _:
            raise ArgumentError(f"unknown named state {name!r}")
    assert isinstance(out, StateVector)
    return out
