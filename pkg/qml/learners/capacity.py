"""Formula evaluation of the covering-number and generalization bounds for QNNs.

N_gt is the number of trainable gates, k the largest number of qubits a gate
acts on, ‖O‖ the observable's operator norm, n the training-set size, L the
loss Lipschitz constant and C a bound on the loss.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from qml.constants import COVERING_EPSILON
from qml.errors import ArgumentError


@dataclass(frozen=True, slots=True)
class CapacityBounds:
    covering_log_bound: float
    gen_bound: float
    confidence_term: float


def capacity_bound_diagnostics(
    num_trainable_gates: int,
    gate_locality: int,
    norm_o: float,
    n: int,
    delta: float = 0.05,
    lipschitz: float = 1.0,
    loss_bound: float = 1.0,
    epsilon: float = COVERING_EPSILON,
) -> CapacityBounds:
    """log N(ε) = 2^{2k}·N_gt·log(7·N_gt·‖O‖/ε) and (8L + C + 24L√N_gt·2^k)/√n.

    The confidence term 3C·√(log(2/δ)/(2n)) is reported separately; the
    headline bound omits it as the order-level statement does.
    """
    if num_trainable_gates < 1 or gate_locality < 1 or n < 1:
        raise ArgumentError("N_gt, k and n must be positive")
    if norm_o <= 0 or lipschitz <= 0 or loss_bound <= 0 or epsilon <= 0:
        raise ArgumentError("‖O‖, L, C and ε must be positive")
    if not 0.0 < delta < 1.0:
        raise ArgumentError(f"delta must lie in (0, 1), got {delta}")
    n_gt, k = num_trainable_gates, gate_locality
    covering = 2 ** (2 * k) * n_gt * math.log(7 * n_gt * norm_o / epsilon)
    gen = (8 * lipschitz + loss_bound + 24 * lipschitz * math.sqrt(n_gt) * 2**k) / math.sqrt(n)
    confidence = 3 * loss_bound * math.sqrt(math.log(2 / delta) / (2 * n))
    return CapacityBounds(covering, gen, confidence)
