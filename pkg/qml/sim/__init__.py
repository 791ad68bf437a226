"""Dense statevector / density-matrix simulator underlying every other module."""

from qml.sim.circuit import apply_gate, named_state, run_steps
from qml.sim.channels import (
    QuantumChannel,
    apply_channel,
    depolarizing_channel,
    kraus_dilation,
    pauli_channel,
    stinespring_apply,
)
from qml.sim.gates import (
    Gate,
    apply_operator,
    conjugate_operator,
    embed_operator,
    permute_qubits,
)
from qml.sim.haar import haar_random_unitary
from qml.sim.measure import (
    Observable,
    computational_projectors,
    expectation,
    measure_computational,
    measure_povm,
    measure_projective,
)
from qml.sim.states import (
    DensityMatrix,
    State,
    StateVector,
    fidelity,
    partial_trace,
    purity,
    random_density_matrix,
    random_state,
    tensor,
    to_density,
    trace_distance,
)


__all__ = [
    "DensityMatrix",
    "Gate",
    "Observable",
    "QuantumChannel",
    "State",
    "StateVector",
    "apply_channel",
    "apply_gate",
    "apply_operator",
    "computational_projectors",
    "conjugate_operator",
    "depolarizing_channel",
    "embed_operator",
    "expectation",
    "fidelity",
    "haar_random_unitary",
    "kraus_dilation",
    "measure_computational",
    "measure_povm",
    "measure_projective",
    "partial_trace",
    "pauli_channel",
    "permute_qubits",
    "purity",
    "random_density_matrix",
    "random_state",
    "stinespring_apply",
    "tensor",
    "to_density",
    "trace_distance",
]
