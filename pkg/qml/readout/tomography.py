"""
State tomography over the local Pauli measurement scheme.

Responsibilities:
- Simulate the 3^N local Pauli settings (exact probabilities or shot counts)
- Read and write measurement records as JSON lines
- Linear-inversion and maximum-likelihood reconstructions
- Closed-form angle-encoding kernel fixtures

Every setting is a string over {X, Y, Z}; its outcomes are bitstrings whose
effect is ⊗_q (I + (−1)^{b_q} σ_q)/2.  A full setting set therefore has
Σ_i E_i = 3^N · I, which the MLE update divides out.
"""

from __future__ import annotations

import enum
import itertools
import json
import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import reduce
from pathlib import Path

import numpy as np
from numpy.typing import ArrayLike
from scipy import linalg

from qml.config import active_config
from qml.constants import MLE_DILUTION, MLE_STOP_CHANGE, PROBABILITY_FLOOR
from qml.errors import ArgumentError, ParseError, SingularityError, ValidationError
from qml.linalg import ComplexArray, dagger
from qml.rng import Seed, as_generator
from qml.sim.paulis import PAULI_MATRICES
from qml.sim.states import DensityMatrix, State, fidelity, to_density

logger = logging.getLogger(__name__)


class TomographyMethod(enum.Enum):
    LINEAR_INVERSION = "linear_inversion"
    MLE = "mle"


@dataclass(frozen=True, slots=True)
class MeasurementRecord:
    """Outcome tallies for one Pauli setting (counts or exact probabilities)."""

    setting: str
    counts: dict[str, float]

    @property
    def total(self) -> float:
        return float(sum(self.counts.values()))

    def frequencies(self) -> dict[str, float]:
        total = self.total
        if total <= 0:
            raise ValidationError(f"setting {self.setting!r} has no recorded outcomes")
        return {k: v / total for k, v in self.counts.items()}


@dataclass(frozen=True, slots=True, eq=False)
class TomographyResult:
    rho_hat: DensityMatrix
    method: TomographyMethod
    settings_used: int
    shots_per_setting: int
    fidelity_to_truth: float | None = None
    min_eigenvalue: float = 0.0
    converged: bool = True
    iterations: int = 0
    log_likelihoods: tuple[float, ...] = field(default=(), repr=False)

    @property
    def psd_violation(self) -> bool:
        return self.min_eigenvalue < 0.0


# ---------------------------------------------------------------------------
# Settings and effects
# ---------------------------------------------------------------------------

def pauli_settings(num_qubits: int) -> list[str]:
    return ["".join(s) for s in itertools.product("XYZ", repeat=num_qubits)]


def outcome_effect(setting: str, outcome: str) -> ComplexArray:
    """Eigenprojector of *setting* for the ±1 pattern encoded by *outcome*."""
    if len(setting) != len(outcome):
        raise ArgumentError(f"outcome {outcome!r} does not match setting {setting!r}")
    factors = []
    for sigma, bit in zip(setting, outcome, strict=True):
        if sigma not in "XYZ" or bit not in "01":
            raise ArgumentError(f"invalid setting/outcome pair {setting!r}/{outcome!r}")
        sign = 1.0 if bit == "0" else -1.0
        factors.append((np.eye(2) + sign * PAULI_MATRICES[sigma]) / 2)
    return reduce(np.kron, factors).astype(np.complex128)


def simulate_pauli_settings(
    state: State, shots: int = 0, seed: Seed | None = None,
) -> list[MeasurementRecord]:
    """One record per local Pauli setting; shots=0 stores exact probabilities."""
    if shots < 0:
        raise ArgumentError(f"shots must be non-negative, got {shots}")
    rho = to_density(state).matrix
    n = to_density(state).num_qubits
    rng = as_generator(seed)
    outcomes = ["".join(b) for b in itertools.product("01", repeat=n)]
    records = []
    for setting in pauli_settings(n):
        probs = np.array([np.trace(outcome_effect(setting, o) @ rho).real for o in outcomes])
        probs = np.clip(probs, 0.0, None)
        probs /= probs.sum()
        if shots == 0:
            counts = {o: float(p) for o, p in zip(outcomes, probs, strict=True)}
        else:
            draws = rng.multinomial(shots, probs)
            counts = {o: int(c) for o, c in zip(outcomes, draws, strict=True) if c > 0}
        records.append(MeasurementRecord(setting, counts))
    return records


# ---------------------------------------------------------------------------
# JSON-lines persistence
# ---------------------------------------------------------------------------

def write_records(path: str | Path, records: Iterable[MeasurementRecord]) -> int:
    p = Path(path)
    count = 0
    with p.open("w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps({"setting": rec.setting, "counts": rec.counts}, sort_keys=True))
            fh.write("\n")
            count += 1
    logger.info("wrote %d measurement records to %s", count, p)
    return count


def read_records(path: str | Path) -> list[MeasurementRecord]:
    p = Path(path)
    records = []
    with p.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                raw = json.loads(line)
                setting = str(raw["setting"]).upper()
                counts = {str(k): float(v) for k, v in raw["counts"].items()}
            except (json.JSONDecodeError, KeyError, TypeError, AttributeError, ValueError) as exc:
                raise ParseError(p, lineno, f"malformed measurement record: {exc}") from exc
            if any(ch not in "XYZ" for ch in setting):
                raise ParseError(p, lineno, f"invalid setting {setting!r}")
            if any(len(k) != len(setting) or set(k) - {"0", "1"} for k in counts):
                raise ParseError(p, lineno, "outcome keys must be bitstrings of the setting length")
            records.append(MeasurementRecord(setting, counts))
    return records


# ---------------------------------------------------------------------------
# Reconstruction
# ---------------------------------------------------------------------------

def _flatten(records: Sequence[MeasurementRecord]) -> tuple[list[ComplexArray], np.ndarray, int]:
    if not records:
        raise ArgumentError("tomography needs at least one measurement record")
    n = len(records[0].setting)
    if any(len(r.setting) != n for r in records):
        raise ArgumentError("measurement records mix register sizes")
    active_config().check_qubits(n)
    effects, freqs = [], []
    outcomes = ["".join(b) for b in itertools.product("01", repeat=n)]
    for rec in records:
        observed = rec.frequencies()
        for outcome in outcomes:
            effects.append(outcome_effect(rec.setting, outcome))
            freqs.append(observed.get(outcome, 0.0))
    return effects, np.asarray(freqs), n


def _shots_per_setting(records: Sequence[MeasurementRecord]) -> int:
    totals = {round(r.total) for r in records}
    return 0 if all(abs(r.total - 1.0) < 1e-9 for r in records) else max(totals)


def _finish(rho: ComplexArray) -> ComplexArray:
    rho = (rho + dagger(rho)) / 2
    return rho / np.trace(rho).real


def qst_linear_inversion(
    records: Sequence[MeasurementRecord], truth: State | None = None,
) -> TomographyResult:
    """Least-squares vec ρ = (AᵀA)⁻¹Aᵀp; a negative eigenvalue is reported, not repaired."""
    effects, freqs, n = _flatten(records)
    dim = 2**n
    # Tr(Eρ) = vec(Eᵀ) · vec(ρ) in row-major order
    design = np.array([e.T.reshape(-1) for e in effects])
    rank = np.linalg.matrix_rank(design)
    if rank < dim * dim:
        raise SingularityError(f"design matrix has rank {rank} < {dim * dim}; settings incomplete")
    solution, *_ = linalg.lstsq(design, freqs.astype(np.complex128))
    rho = _finish(solution.reshape(dim, dim))
    lowest = float(np.linalg.eigvalsh(rho).min())
    if lowest < 0:
        logger.info("linear inversion estimate has negative eigenvalue %.3g", lowest)
    estimate = DensityMatrix(rho, require_psd=False)
    return TomographyResult(
        rho_hat=estimate,
        method=TomographyMethod.LINEAR_INVERSION,
        settings_used=len(records),
        shots_per_setting=_shots_per_setting(records),
        fidelity_to_truth=_fidelity_or_none(estimate, truth),
        min_eigenvalue=lowest,
    )


def _log_likelihood(rho: ComplexArray, effects: Sequence[ComplexArray], freqs: np.ndarray) -> float:
    probs = np.array([np.trace(e @ rho).real for e in effects])
    return float(np.sum(freqs * np.log(np.maximum(probs, PROBABILITY_FLOOR))))


def qst_mle(
    records: Sequence[MeasurementRecord],
    truth: State | None = None,
    max_iterations: int | None = None,
    dilution: float = MLE_DILUTION,
) -> TomographyResult:
    """Diluted RρR fixed-point iteration.

    A step that would lower the likelihood is retried with half the
    dilution, so the recorded likelihood sequence never decreases.
    """
    effects, freqs, n = _flatten(records)
    dim = 2**n
    settings = len(records)
    cap = active_config().mle_max_iterations if max_iterations is None else max_iterations
    rho = np.eye(dim, dtype=np.complex128) / dim
    history = [_log_likelihood(rho, effects, freqs)]
    converged = False
    stalled = False
    iteration = 0
    for iteration in range(1, cap + 1):
        probs = np.array([np.trace(e @ rho).real for e in effects])
        weights = freqs / np.maximum(probs, PROBABILITY_FLOOR)
        r = sum(w * e for w, e in zip(weights, effects, strict=True)) / settings
        eps = dilution
        while True:
            step = (np.eye(dim) + eps * r) / (1.0 + eps)
            candidate = _finish(step @ rho @ dagger(step))
            value = _log_likelihood(candidate, effects, freqs)
            if value >= history[-1] - 1e-13:
                break
            eps /= 2
            if eps < 1e-6:
                # no ascent direction left at this resolution
                stalled = True
                break
        if stalled:
            logger.warning("MLE tomography stalled at iteration %d without converging", iteration)
            break
        change = float(np.linalg.norm(candidate - rho))
        rho = candidate
        history.append(value)
        if change < MLE_STOP_CHANGE:
            converged = True
            break
    if not converged and not stalled:
        logger.warning("MLE tomography hit the iteration cap (%d) before converging", cap)
    estimate = DensityMatrix(rho, require_psd=False)
    return TomographyResult(
        rho_hat=estimate,
        method=TomographyMethod.MLE,
        settings_used=settings,
        shots_per_setting=_shots_per_setting(records),
        fidelity_to_truth=_fidelity_or_none(estimate, truth),
        min_eigenvalue=float(np.linalg.eigvalsh(rho).min()),
        converged=converged,
        iterations=iteration,
        log_likelihoods=tuple(history),
    )


def _fidelity_or_none(estimate: DensityMatrix, truth: State | None) -> float | None:
    if truth is None:
        return None
    if estimate.min_eigenvalue() < 0:
        # Uhlmann fidelity is undefined off the PSD cone; report the overlap Tr(ρ̂σ)
        return float(np.real(np.trace(estimate.matrix @ to_density(truth).matrix)))
    return fidelity(estimate, truth)


# ---------------------------------------------------------------------------
# Angle-encoding kernel fixtures
# ---------------------------------------------------------------------------

class AngleKernelForm(enum.Enum):
    HALF_ANGLE = "half_angle"
    FULL_ANGLE = "full_angle"


def angle_kernel_fixture(
    x: ArrayLike, x_prime: ArrayLike, form: AngleKernelForm | str = AngleKernelForm.HALF_ANGLE,
) -> float:
    """Closed-form angle-encoding kernel.

    HALF_ANGLE, Π cos²((xᵢ − xᵢ')/2), matches RX(x) = exp(−ixσ/2).
    FULL_ANGLE, Π cos²(xᵢ − xᵢ'), is the tabulated form without the half angle.
    """
    a = np.asarray(x, dtype=float).reshape(-1)
    b = np.asarray(x_prime, dtype=float).reshape(-1)
    if a.shape != b.shape:
        raise ArgumentError("kernel inputs differ in length")
    scale = 0.5 if AngleKernelForm(form) is AngleKernelForm.HALF_ANGLE else 1.0
    return float(np.prod(np.cos(scale * (a - b)) ** 2)) if a.size else 1.0
