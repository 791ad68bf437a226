"""
Norm scaling of token-embedding matrices.

Samples ℓ×d embedding matrices from a named row sampler and records the
spectral and Frobenius norms as ℓ grows, with log-log slopes fitted over
the grid.  Matrices whose spectral norm reaches the Frobenius norm are
rank one, the worst case ‖S‖ = √ℓ for unit rows, and are flagged.
"""

from __future__ import annotations

import enum
import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from qml.errors import ArgumentError
from qml.rng import derive_stream

logger = logging.getLogger(__name__)

RANK_ONE_TOL = 1e-9


class RowSampler(enum.Enum):
    UNIT = "unit"
    GAUSSIAN = "gaussian"
    ORTHONORMAL = "orthonormal"
    REPEATED = "repeated"


def _row_sampler(sampler: RowSampler | str) -> RowSampler:
    try:
        return RowSampler(sampler)
    except ValueError as exc:
        raise ArgumentError(f"unknown row sampler {sampler!r}") from exc


def sample_embeddings(
    sampler: RowSampler | str, ell: int, d: int, rng: np.random.Generator,
) -> np.ndarray:
    """ℓ×d rows: unit-norm random, iid N(0, 1/d), orthonormal (ℓ ≤ d) or one repeated unit row."""
    match _row_sampler(sampler):
        case RowSampler.UNIT:
            rows = rng.standard_normal((ell, d))
            return rows / np.linalg.norm(rows, axis=1, keepdims=True)
        case RowSampler.GAUSSIAN:
            return rng.standard_normal((ell, d)) / np.sqrt(d)
        case RowSampler.ORTHONORMAL:
            if ell > d:
                raise ArgumentError(f"orthonormal rows need ℓ ≤ d, got ℓ={ell}, d={d}")
            q, _ = linalg.qr(rng.standard_normal((d, d)))
            return q[:ell]
        case RowSampler.REPEATED:
            row = rng.standard_normal(d)
            return np.tile(row / np.linalg.norm(row), (ell, 1))


@dataclass(frozen=True, slots=True)
class NormRow:
    ell: int
    spectral: float
    frobenius: float
    flagged: bool

    def as_dict(self) -> dict[str, object]:
        return {"ell": self.ell, "spectral": self.spectral, "frobenius": self.frobenius,
                "flagged": self.flagged}


@dataclass(frozen=True, slots=True)
class NormStudy:
    sampler: RowSampler
    width: int
    rows: tuple[NormRow, ...]
    spectral_slope: float
    frobenius_slope: float

    def table(self) -> list[dict[str, object]]:
        return [r.as_dict() for r in self.rows]


def loglog_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    if len(xs) < 2:
        return float("nan")
    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])


def norm_scaling_study(
    sampler: RowSampler | str,
    ell_grid: Sequence[int],
    trials: int,
    seed: int,
    d: int = 64,
) -> NormStudy:
    """Mean ‖S‖ and ‖S‖_F over *trials* draws for each ℓ in *ell_grid*."""
    kind = _row_sampler(sampler)
    if trials < 1 or d < 1 or not ell_grid or min(ell_grid) < 1:
        raise ArgumentError("norm study needs positive trials, width and sequence lengths")
    rows = []
    for ell in ell_grid:
        rng = derive_stream(seed, "norms", kind.value, ell)
        spec, frob, flagged = [], [], False
        for _ in range(trials):
            s = sample_embeddings(kind, ell, d, rng)
            sv = linalg.svdvals(s)
            spec.append(float(sv[0]))
            frob.append(float(np.linalg.norm(s)))
            flagged |= ell > 1 and sv[0] >= (1 - RANK_ONE_TOL) * frob[-1]
        rows.append(NormRow(ell, float(np.mean(spec)), float(np.mean(frob)), bool(flagged)))
        logger.debug("norm study %s ℓ=%d: ‖S‖=%.4g ‖S‖_F=%.4g", kind.value, ell,
                     rows[-1].spectral, rows[-1].frobenius)
    ells = [r.ell for r in rows]
    study = NormStudy(
        kind, d, tuple(rows),
        loglog_slope(ells, [r.spectral for r in rows]),
        loglog_slope(ells, [r.frobenius for r in rows]),
    )
    logger.info("norm study %s: spectral slope %.3f, Frobenius slope %.3f", kind.value,
                study.spectral_slope, study.frobenius_slope)
    return study
