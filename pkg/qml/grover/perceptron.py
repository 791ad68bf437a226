"""
Online quantum perceptron and its classical sampling baseline.

Responsibilities:
- QueryLedger: oracle-query accounting per kind and per phase
- quantum_perceptron_train: Grover search for misclassified samples with
  exponentially expanding iteration counts (unknown number of mistakes)
- classical_perceptron_sampling_baseline: uniform sampling with batch
  m_c = d⌈log(1/εγ²)⌉
- perceptron_scaling: median query counts across d and fitted exponents

The oracle F_w acts on the index register as a diagonal phase computed from
f(w, z_i) = [y_i·w·x_i ≤ 0]; the data register is bookkept, not simulated.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike

from qml.errors import ArgumentError
from qml.grover.search import grover_iterate, uniform_state
from qml.learners.perceptron import check_labelled, synth_margin_dataset
from qml.linalg import qubits_for_dim
from qml.rng import Seed, as_generator, derive_stream

logger = logging.getLogger(__name__)


@dataclass(slots=True)
class QueryLedger:
    """Monotone counters: F_w (quantum oracle) and f_w (classical) evaluations."""

    oracle_queries: int = 0
    classical_evaluations: int = 0
    grover_calls: int = 0
    updates: int = 0
    phases: Counter[str] = field(default_factory=Counter)

    def charge_oracle(self, count: int, phase: str) -> None:
        if count < 0:
            raise ArgumentError("query counts are non-negative")
        self.oracle_queries += count
        self.grover_calls += 1
        self.phases[f"oracle/{phase}"] += count

    def charge_classical(self, count: int, phase: str) -> None:
        if count < 0:
            raise ArgumentError("query counts are non-negative")
        self.classical_evaluations += count
        self.phases[f"classical/{phase}"] += count

    def as_dict(self) -> dict[str, object]:
        return {
            "oracle_queries": self.oracle_queries,
            "classical_evaluations": self.classical_evaluations,
            "grover_calls": self.grover_calls,
            "updates": self.updates,
            "phases": dict(self.phases),
        }


@dataclass(frozen=True, slots=True, eq=False)
class PerceptronRun:
    weights: np.ndarray
    ledger: QueryLedger
    converged: bool
    training_errors: int


def misclassified(w: np.ndarray, feats: np.ndarray, labels: np.ndarray) -> np.ndarray:
    """Boolean mask of f(w, z_i) = 1; a zero margin counts as a mistake."""
    return labels * (feats @ w) <= 0


def _check_args(gamma: float, epsilon: float) -> None:
    if not 0.0 < gamma < 1.0:
        raise ArgumentError(f"gamma must lie in (0, 1), got {gamma}")
    if not 0.0 < epsilon < 1.0:
        raise ArgumentError(f"epsilon must lie in (0, 1), got {epsilon}")


def _initial(w0: ArrayLike | None, width: int) -> np.ndarray:
    if w0 is None:
        return np.zeros(width)
    w = np.asarray(w0, dtype=float).reshape(-1)
    if w.size != width:
        raise ArgumentError(f"initial weights have {w.size} entries, data has {width} features")
    return w


def loop_bounds(dim: int, gamma: float, epsilon: float, c: float) -> tuple[int, int, int]:
    """(⌈1/γ²⌉, ⌈log_{3/4} γ²ε⌉, ⌈log_c 1/sin(2 arcsin(1/√d))⌉)."""
    outer = math.ceil(1.0 / gamma**2)
    repeats = math.ceil(math.log(gamma**2 * epsilon) / math.log(0.75))
    if dim == 1:
        return outer, repeats, 1
    expand = math.ceil(math.log(1.0 / math.sin(2 * math.asin(1 / math.sqrt(dim)))) / math.log(c))
    return outer, repeats, max(expand, 1)


def quantum_perceptron_train(
    x: ArrayLike,
    y: ArrayLike,
    gamma: float,
    epsilon: float,
    c: float = 1.5,
    seed: Seed | None = None,
    initial_weights: ArrayLike | None = None,
) -> PerceptronRun:
    """Each outer round searches for one mistake; a round that finds none ends training.

    Every measured index is verified with one classical evaluation of
    f(w, z_q); those are counted apart from the F_w queries.
    """
    feats, labels = check_labelled(x, y)
    _check_args(gamma, epsilon)
    if not 1.0 < c < 2.0:
        raise ArgumentError(f"c must lie in (1, 2), got {c}")
    dim = feats.shape[0]
    qubits_for_dim(dim)
    rng = as_generator(seed)
    outer, repeats, expand = loop_bounds(dim, gamma, epsilon, c)
    ledger = QueryLedger()
    w = _initial(initial_weights, feats.shape[1])
    converged = False
    for h in range(1, outer + 1):
        oracle = np.where(misclassified(w, feats, labels), -1.0, 1.0)
        found = None
        for _k in range(repeats):
            for j in range(1, expand + 1):
                m = int(rng.integers(0, math.ceil(c**j)))
                psi = uniform_state(dim)
                for _ in range(m):
                    psi = grover_iterate(psi, oracle)
                ledger.charge_oracle(m, "search")
                probs = np.abs(psi) ** 2
                q = int(rng.choice(dim, p=probs / probs.sum()))
                ledger.charge_classical(1, "verify")
                if oracle[q] < 0:
                    found = q
                    break
            if found is not None:
                break
        if found is None:
            converged = True
            logger.debug("quantum perceptron: round %d found no mistake, stopping", h)
            break
        w = w + labels[found] * feats[found]
        ledger.updates += 1
    errors = int(misclassified(w, feats, labels).sum())
    if not converged:
        logger.warning("quantum perceptron used all %d rounds; %d training errors remain",
                       outer, errors)
    return PerceptronRun(w, ledger, converged, errors)


def classical_batch_size(dim: int, gamma: float, epsilon: float) -> int:
    """m_c = d⌈log(1/εγ²)⌉."""
    return dim * math.ceil(math.log(1.0 / (epsilon * gamma**2)))


def classical_perceptron_sampling_baseline(
    x: ArrayLike,
    y: ArrayLike,
    gamma: float,
    epsilon: float,
    seed: Seed | None = None,
    initial_weights: ArrayLike | None = None,
) -> PerceptronRun:
    """Uniformly sample up to m_c points per round, updating on the first mistake."""
    feats, labels = check_labelled(x, y)
    _check_args(gamma, epsilon)
    dim = feats.shape[0]
    rng = as_generator(seed)
    batch = classical_batch_size(dim, gamma, epsilon)
    outer = math.ceil(1.0 / gamma**2)
    ledger = QueryLedger()
    w = _initial(initial_weights, feats.shape[1])
    converged = False
    for _h in range(outer):
        wrong = misclassified(w, feats, labels)
        draws = rng.integers(0, dim, size=batch)
        hits = np.flatnonzero(wrong[draws])
        if hits.size == 0:
            ledger.charge_classical(batch, "search")
            converged = True
            break
        first = int(hits[0])
        ledger.charge_classical(first + 1, "search")
        q = int(draws[first])
        w = w + labels[q] * feats[q]
        ledger.updates += 1
    return PerceptronRun(w, ledger, converged, int(misclassified(w, feats, labels).sum()))


# ---------------------------------------------------------------------------
# Scaling sweep
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class ScalingRow:
    dim: int
    median_quantum: float
    median_classical: float
    quantum_success: float


@dataclass(frozen=True, slots=True)
class ScalingReport:
    rows: tuple[ScalingRow, ...]
    quantum_exponent: float
    classical_exponent: float


def _fit_exponent(dims: Sequence[int], values: Sequence[float]) -> float:
    return float(np.polyfit(np.log(dims), np.log(np.maximum(values, 1.0)), 1)[0])


def perceptron_scaling(
    dims: Sequence[int],
    seeds: int,
    gamma: float = 0.3,
    epsilon: float = 0.1,
    c: float = 1.5,
    features: int = 8,
    master_seed: int = 0,
) -> ScalingReport:
    """Median F_w and f_w query counts over *seeds* margin datasets per d."""
    if len(dims) < 2 or seeds < 1:
        raise ArgumentError("scaling needs at least two sizes and one seed")
    rows = []
    for d in dims:
        quantum, classical, success = [], [], 0
        for s in range(seeds):
            data = synth_margin_dataset(d, features, gamma, derive_stream(master_seed, "data", d, s))
            q = quantum_perceptron_train(data.features, data.labels, gamma, epsilon, c,
                                         derive_stream(master_seed, "quantum", d, s))
            k = classical_perceptron_sampling_baseline(
                data.features, data.labels, gamma, epsilon,
                derive_stream(master_seed, "classical", d, s))
            quantum.append(q.ledger.oracle_queries)
            classical.append(k.ledger.classical_evaluations)
            success += q.training_errors == 0
        row = ScalingRow(d, float(np.median(quantum)), float(np.median(classical)), success / seeds)
        logger.info("perceptron scaling d=%d: quantum %.1f, classical %.1f", d,
                    row.median_quantum, row.median_classical)
        rows.append(row)
    return ScalingReport(
        tuple(rows),
        _fit_exponent(dims, [r.median_quantum for r in rows]),
        _fit_exponent(dims, [r.median_classical for r in rows]),
    )
