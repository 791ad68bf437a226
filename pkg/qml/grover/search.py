"""
Grover search over d = 2^N indices.

Responsibilities:
- SearchProblem with its marked set and solution count M
- Diagonal oracles U_f and U₀, single Grover iterations
- grover_search at the optimal iteration count, and amplitude traces
  against the closed form α_k = sin((2k+1)θ), θ = arcsin√(M/d)
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Iterable
from dataclasses import dataclass

import numpy as np

from qml.constants import QUARTER_PI
from qml.errors import ArgumentError, NoSolutionError, ValidationError
from qml.rng import Seed, as_generator

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class SearchProblem:
    num_qubits: int
    marked: frozenset[int]

    def __post_init__(self) -> None:
        if self.num_qubits < 1:
            raise ArgumentError("search needs at least one qubit")
        if any(i < 0 or i >= self.dim for i in self.marked):
            raise ValidationError(f"marked indices out of range for d={self.dim}")

    @classmethod
    def from_predicate(cls, num_qubits: int, predicate: Callable[[int], bool]) -> SearchProblem:
        return cls(num_qubits, frozenset(i for i in range(2**num_qubits) if predicate(i)))

    @classmethod
    def from_indices(cls, num_qubits: int, indices: Iterable[int]) -> SearchProblem:
        return cls(num_qubits, frozenset(int(i) for i in indices))

    @property
    def dim(self) -> int:
        return 2**self.num_qubits

    @property
    def num_solutions(self) -> int:
        return len(self.marked)

    @property
    def theta(self) -> float:
        return math.asin(math.sqrt(self.num_solutions / self.dim))

    def mask(self) -> np.ndarray:
        m = np.zeros(self.dim, dtype=bool)
        m[list(self.marked)] = True
        return m


def phase_oracle(problem: SearchProblem) -> np.ndarray:
    """Diagonal of U_f: −1 on marked indices, +1 elsewhere."""
    return np.where(problem.mask(), -1.0, 1.0)


def zero_reflection(num_qubits: int) -> np.ndarray:
    """Diagonal of U₀ = 2|0⟩⟨0| − I."""
    diag = -np.ones(2**num_qubits)
    diag[0] = 1.0
    return diag


def uniform_state(dim: int) -> np.ndarray:
    return np.full(dim, 1.0 / math.sqrt(dim), dtype=np.complex128)


def diffuse(psi: np.ndarray) -> np.ndarray:
    """H^⊗N U₀ H^⊗N ψ = 2⟨φ₀|ψ⟩φ₀ − ψ."""
    return 2.0 * psi.mean() - psi


def grover_iterate(psi: np.ndarray, oracle: np.ndarray) -> np.ndarray:
    """One Grover step H^⊗N U₀ H^⊗N U_f on a flat amplitude vector."""
    if psi.shape != oracle.shape:
        raise ArgumentError("state and oracle dimensions differ")
    return diffuse(oracle * psi)


def optimal_iterations(dim: int, num_solutions: int) -> int:
    """⌊(π/4)√(d/M) − 1/2⌋, clamped at 0."""
    if num_solutions < 1:
        raise NoSolutionError("no marked index: the optimal iteration count is undefined")
    return max(0, math.floor(QUARTER_PI * math.sqrt(dim / num_solutions) - 0.5))


@dataclass(frozen=True, slots=True)
class GroverDiagnostics:
    iterations: int
    theta: float
    success_prob_exact: float
    closed_form_alpha: float
    index: int
    is_solution: bool


def run_grover(problem: SearchProblem, iterations: int) -> np.ndarray:
    oracle = phase_oracle(problem)
    psi = uniform_state(problem.dim)
    for _ in range(iterations):
        psi = grover_iterate(psi, oracle)
    return psi


def grover_search(problem: SearchProblem, seed: Seed | None = None) -> GroverDiagnostics:
    if problem.num_solutions == 0:
        raise NoSolutionError(f"no marked index among d={problem.dim}")
    m = optimal_iterations(problem.dim, problem.num_solutions)
    psi = run_grover(problem, m)
    probs = np.abs(psi) ** 2
    success = float(probs[problem.mask()].sum())
    index = int(as_generator(seed).choice(problem.dim, p=probs / probs.sum()))
    alpha = math.sin((2 * m + 1) * problem.theta)
    logger.debug("Grover d=%d M=%d: m=%d, success %.6f", problem.dim,
                 problem.num_solutions, m, success)
    return GroverDiagnostics(m, problem.theta, success, alpha, index, index in problem.marked)


@dataclass(frozen=True, slots=True, eq=False)
class AmplitudeTrace:
    alphas: np.ndarray
    betas: np.ndarray
    closed_alphas: np.ndarray
    closed_betas: np.ndarray

    @property
    def max_error(self) -> float:
        return float(max(np.max(np.abs(self.alphas - self.closed_alphas)),
                         np.max(np.abs(self.betas - self.closed_betas))))


def grover_amplitude_trace(problem: SearchProblem, m_max: int) -> AmplitudeTrace:
    """Simulated (α_k, β_k) for k = 0..m_max next to their closed forms.

    α_k is the overlap with the normalized marked superposition and β_k with
    the unmarked one.
    """
    if problem.num_solutions == 0:
        raise NoSolutionError(f"no marked index among d={problem.dim}")
    if m_max < 0:
        raise ArgumentError("m_max must be non-negative")
    mask = problem.mask()
    m, rest = problem.num_solutions, problem.dim - problem.num_solutions
    oracle = phase_oracle(problem)
    psi = uniform_state(problem.dim)
    alphas, betas = [], []
    for _ in range(m_max + 1):
        alphas.append(float(np.real(psi[mask].sum())) / math.sqrt(m))
        betas.append(float(np.real(psi[~mask].sum())) / math.sqrt(rest) if rest else 0.0)
        psi = grover_iterate(psi, oracle)
    k = np.arange(m_max + 1)
    angle = (2 * k + 1) * problem.theta
    closed_b = np.cos(angle) if rest else np.zeros(m_max + 1)
    return AmplitudeTrace(np.array(alphas), np.array(betas), np.sin(angle), closed_b)
