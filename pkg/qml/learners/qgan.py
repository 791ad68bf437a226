"""
Patch quantum GAN.

T sub-generators share one latent vector z ~ U[0, 2π)^N loaded by RY(z)
rotations.  Each runs an HEC circuit, post-selects its last N_A qubits on
|0⟩ and emits the conditional distribution over the remaining
2^{N−N_A} outcomes as one image patch.  Patches are min-max rescaled and
concatenated; a sigmoid MLP discriminator scores the image.

Generator gradients apply the parameter-shift rule to the numerator and
denominator of every conditional probability, combine them by the
quotient rule and chain through the rescale and the discriminator input
gradient.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from qml.constants import QGAN_MAX_RESAMPLES, QGAN_MIN_POSTSELECT, QGAN_RESCALE_GUARD
from qml.errors import ArgumentError, DegenerateInputError
from qml.learners.circuits import ParamCircuit, build_hec
from qml.learners.mlp import MLP, Activation, init_mlp, loss_value, mlp_backprop, mlp_forward
from qml.learners.optim import make_optimizer
from qml.learners.records import EpochRecord, TrainRecord, param_hash
from qml.rng import derive_stream

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class QGANConfig:
    patches: int = 4
    num_qubits: int = 5
    ancillas: int = 1
    layers: int = 6
    lr_g: float = 0.3
    lr_d: float = 0.01
    epochs: int = 2
    batch: int = 4
    optimizer_g: str = "sgd"
    optimizer_d: str = "adam"
    hidden: int = 32
    seed: int = 0

    @property
    def patch_size(self) -> int:
        return 2 ** (self.num_qubits - self.ancillas)

    @property
    def pixels(self) -> int:
        return self.patches * self.patch_size

    def validate(self) -> None:
        if not 0 <= self.ancillas < self.num_qubits:
            raise ArgumentError("need 0 ≤ N_A < N")
        if self.patches < 1 or self.layers < 1 or self.batch < 1 or self.epochs < 0:
            raise ArgumentError("patches, layers and batch must be positive")


def latent_states(z: np.ndarray) -> np.ndarray:
    """Columns ⊗_q RY(z_q)|0⟩ for a (B, N) latent batch."""
    cols = []
    for row in np.atleast_2d(z):
        vec = np.ones(1)
        for angle in row:
            vec = np.kron(vec, [math.cos(angle / 2), math.sin(angle / 2)])
        cols.append(vec)
    return np.stack(cols, axis=1).astype(np.complex128)


def _numerators(u: np.ndarray, latent: np.ndarray, ancillas: int) -> np.ndarray:
    """(K, B) squared amplitudes of |j⟩|0_A⟩ after U."""
    psi = u @ latent
    return np.abs(psi.reshape(-1, 2**ancillas, psi.shape[1])[:, 0, :]) ** 2


def patch_probabilities(
    circuit: ParamCircuit, theta: ArrayLike, z: ArrayLike, ancillas: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Conditional patch distributions (B, K) and post-selection probabilities (B,)."""
    num = _numerators(circuit.unitary(theta), latent_states(np.asarray(z, dtype=float)), ancillas)
    post = num.sum(axis=0)
    if np.any(post < QGAN_MIN_POSTSELECT):
        raise DegenerateInputError(f"post-selection probability {post.min():.3g} is too small")
    return (num / post).T, post


def rescale(p: np.ndarray) -> np.ndarray:
    """(p − min) / (max − min + guard), row by row."""
    lo = p.min(axis=-1, keepdims=True)
    hi = p.max(axis=-1, keepdims=True)
    return (p - lo) / (hi - lo + QGAN_RESCALE_GUARD)


def _rescale_jacobian(p: np.ndarray, dp: np.ndarray) -> np.ndarray:
    """Chain dp (P, K, B) through the per-sample rescale of p (K, B)."""
    cols = np.arange(p.shape[1])
    lo_i, hi_i = p.argmin(axis=0), p.argmax(axis=0)
    lo, hi = p[lo_i, cols], p[hi_i, cols]
    den = hi - lo + QGAN_RESCALE_GUARD
    d_lo = dp[:, lo_i, cols][:, None, :]
    d_hi = dp[:, hi_i, cols][:, None, :]
    return (dp - d_lo) / den - (p - lo)[None] * (d_hi - d_lo) / den**2


@dataclass(frozen=True, slots=True, eq=False)
class QGANResult:
    circuit: ParamCircuit
    generator: np.ndarray
    discriminator: MLP
    record: TrainRecord
    config: QGANConfig


def generate_images(
    circuit: ParamCircuit, params: np.ndarray, z: ArrayLike, ancillas: int,
) -> np.ndarray:
    """Concatenated rescaled patches, shape (B, T·K)."""
    patches = [rescale(patch_probabilities(circuit, params[t], z, ancillas)[0])
               for t in range(params.shape[0])]
    return np.concatenate(patches, axis=1)


def discriminator_loss(disc: MLP, real: ArrayLike, fake: ArrayLike) -> float:
    """BCE(D(x), 1) + BCE(D(G(z)), 0)."""
    return (loss_value("bce", mlp_forward(disc, real), np.ones((np.atleast_2d(real).shape[0], 1)))
            + loss_value("bce", mlp_forward(disc, fake),
                         np.zeros((np.atleast_2d(fake).shape[0], 1))))


def _draw_latent(rng: np.random.Generator, circuit: ParamCircuit, params: np.ndarray,
                 batch: int, ancillas: int) -> np.ndarray:
    z = rng.uniform(0.0, 2 * math.pi, size=(batch, circuit.num_qubits))
    for b in range(batch):
        for attempt in range(QGAN_MAX_RESAMPLES + 1):
            lat = latent_states(z[b])
            post = min(_numerators(circuit.unitary(params[t]), lat, ancillas).sum()
                       for t in range(params.shape[0]))
            if post >= QGAN_MIN_POSTSELECT:
                break
            if attempt == QGAN_MAX_RESAMPLES:
                raise DegenerateInputError(
                    f"post-selection stayed below {QGAN_MIN_POSTSELECT} after "
                    f"{QGAN_MAX_RESAMPLES} latent resamples")
            logger.warning("post-selection probability %.3g below threshold, resampling z", post)
            z[b] = rng.uniform(0.0, 2 * math.pi, size=circuit.num_qubits)
    return z


def _generator_gradient(
    circuit: ParamCircuit, theta: np.ndarray, latent: np.ndarray, ancillas: int,
    upstream: np.ndarray,
) -> np.ndarray:
    """∂L/∂θ for one sub-generator given ∂L/∂(rescaled patch) of shape (B, K)."""
    num = _numerators(circuit.unitary(theta), latent, ancillas)
    post = num.sum(axis=0)
    p = num / post
    shifted = circuit.shifted_unitaries(theta)
    d_num = np.stack([
        0.5 * (_numerators(shifted[j, 0], latent, ancillas)
               - _numerators(shifted[j, 1], latent, ancillas))
        for j in range(circuit.num_params)
    ])
    d_post = d_num.sum(axis=1, keepdims=True)
    dp = (d_num * post - num[None] * d_post) / post**2
    dr = _rescale_jacobian(p, dp)
    return np.einsum("pkb,bk->p", dr, upstream)


def qgan_patch_train(images: ArrayLike, config: QGANConfig) -> QGANResult:
    """Alternate one discriminator and one generator update per mini-batch."""
    config.validate()
    data = np.atleast_2d(np.asarray(images, dtype=float))
    if data.shape[1] != config.pixels:
        raise ArgumentError(f"images have {data.shape[1]} pixels; {config.patches} patches of "
                            f"2^{config.num_qubits - config.ancillas} give {config.pixels}")
    if data.shape[0] < 1:
        raise ArgumentError("no training images")
    circuit = build_hec(config.num_qubits, config.layers, "CZ")
    params = derive_stream(config.seed, "qgan", "generator").uniform(
        0.0, 2 * math.pi, size=(config.patches, circuit.num_params))
    disc = init_mlp([config.pixels, config.hidden, 1], derive_stream(config.seed, "qgan", "disc"),
                    Activation.SIGMOID, Activation.SIGMOID)
    opt_g = make_optimizer(config.optimizer_g, config.lr_g)
    opt_d = make_optimizer(config.optimizer_d, config.lr_d)
    latent_rng = derive_stream(config.seed, "qgan", "latent")
    order_rng = derive_stream(config.seed, "qgan", "shuffle")
    record = TrainRecord(config.seed, f"qgan/{circuit.name}")
    logger.info("QGAN: %d images, %d patches x %d qubits (%d ancillas), %d params each",
                data.shape[0], config.patches, config.num_qubits, config.ancillas,
                circuit.num_params)

    for epoch in range(1, config.epochs + 1):
        started = time.perf_counter()
        g_losses, d_losses = [], []
        order = order_rng.permutation(data.shape[0])
        for start in range(0, len(order), config.batch):
            real = data[order[start : start + config.batch]]
            b = real.shape[0]
            z = _draw_latent(latent_rng, circuit, params, b, config.ancillas)
            fake = generate_images(circuit, params, z, config.ancillas)

            g_real = mlp_backprop(disc, real, np.ones((b, 1)), "bce")
            g_fake = mlp_backprop(disc, fake, np.zeros((b, 1)), "bce")
            disc = disc.with_flat(opt_d.step(disc.flat(), g_real.flat() + g_fake.flat()))
            d_losses.append(g_real.loss + g_fake.loss)

            g_out = mlp_backprop(disc, fake, np.ones((b, 1)), "bce")
            g_losses.append(g_out.loss)
            lat = latent_states(z)
            k = config.patch_size
            grads = np.stack([
                _generator_gradient(circuit, params[t], lat, config.ancillas,
                                    g_out.inputs[:, t * k : (t + 1) * k])
                for t in range(config.patches)
            ])
            params = opt_g.step(params, grads)
        g_mean, d_mean = float(np.mean(g_losses)), float(np.mean(d_losses))
        if not (math.isfinite(g_mean) and math.isfinite(d_mean)):
            raise DegenerateInputError(f"non-finite GAN loss at epoch {epoch}")
        record = record.with_epoch(EpochRecord(
            epoch, g_mean, param_hash=param_hash(params),
            wall_seconds=time.perf_counter() - started, extra={"discriminator_loss": d_mean},
        ))
        logger.info("QGAN epoch %d: generator %.4f, discriminator %.4f", epoch, g_mean, d_mean)
    return QGANResult(circuit, params, disc, record, config)
