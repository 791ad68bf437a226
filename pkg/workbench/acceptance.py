"""
Acceptance suite.

Responsibilities:
- One seeded check per acceptance criterion, grouped into suites
- PASS/FAIL per criterion with the measured value and runtime
- A quick mode that shrinks sample counts for smoke runs

Every check draws from streams derived from the suite seed, so a rerun with
the same seed reports identical values.
"""

from __future__ import annotations

import enum
import logging
import math
import time
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import linalg

from qml.blockenc import (
    PolySpec,
    be_from_matrix,
    be_from_pauli_terms,
    be_hadamard_product,
    be_linear_combination,
    be_product,
    be_pseudo_inverse,
    grid_error,
    poly_approx_exp,
    poly_approx_gelu,
    qsvt_apply,
)
from qml.grover import SearchProblem, grover_amplitude_trace, grover_search, perceptron_scaling
from qml.kernels import (
    FeatureMapKind,
    FeatureMapSpec,
    adversarial_dataset,
    c2qe_embed,
    kernel_risk_bounds,
    quantum_kernel,
)
from qml.learners import (
    QGANConfig,
    QNNConfig,
    bp_variance_experiment,
    build_hec,
    mistake_bound,
    parameter_shift_grad,
    perceptron_train,
    qgan_patch_train,
    qnn_accuracy,
    qnn_forward,
    qnn_train_classifier,
    synth_margin_dataset,
)
from qml.learners.qgan import patch_probabilities
from qml.readout import qst_linear_inversion, qst_mle, simulate_pauli_settings
from qml.rng import derive_stream
from qml.sim import (
    StateVector,
    apply_channel,
    depolarizing_channel,
    haar_random_unitary,
    kraus_dilation,
    pauli_channel,
    purity,
    random_density_matrix,
    stinespring_apply,
    trace_distance,
)
from qml.sim.paulis import pauli_matrix, pauli_strings
from qml.transformer import (
    RowSampler,
    WeightSet,
    attention_weights,
    build_input_encodings,
    classical_attention,
    classical_transformer_row,
    cosine_similarity,
    gelu,
    norm_scaling_study,
    q_transformer_row,
)
from workbench.datasets import load_csv_dataset

logger = logging.getLogger(__name__)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


class Suite(enum.Enum):
    CORE = "core"
    READOUT = "readout"
    BLOCKENC = "blockenc"
    KERNEL = "kernel"
    LEARNERS = "learners"
    GROVER = "grover"
    TRANSFORMER = "transformer"
    ALL = "all"


@dataclass(frozen=True, slots=True)
class Outcome:
    passed: bool
    value: float
    detail: str = ""


type Check = Callable[[bool, int], Outcome]


@dataclass(frozen=True, slots=True)
class Criterion:
    number: int
    name: str
    suite: Suite
    check: Check


@dataclass(frozen=True, slots=True)
class CriterionResult:
    number: int
    name: str
    suite: str
    passed: bool
    value: float
    detail: str
    seconds: float

    def as_dict(self) -> dict[str, object]:
        return {"number": self.number, "name": self.name, "suite": self.suite,
                "status": "PASS" if self.passed else "FAIL", "value": self.value,
                "detail": self.detail, "seconds": self.seconds}


def _pick(quick: bool, full: int, small: int) -> int:
    return small if quick else full


# ---------------------------------------------------------------------------
# core
# ---------------------------------------------------------------------------

def check_channel_algebra(quick: bool, seed: int) -> Outcome:
    zero = StateVector.zero(1).density()
    worst = 0.0
    for p in (0.0, 0.25, 0.5, 1.0):
        out = apply_channel(zero, depolarizing_channel(p, 1))
        expected = np.diag([1 - p / 2, p / 2])
        worst = max(worst, float(np.max(np.abs(out.matrix - expected))),
                    abs(purity(out) - (1 - p + p * p / 2)))
    return Outcome(worst <= 1e-12, worst, "max deviation from diag(1−p/2, p/2) and purity")


def check_dilation(quick: bool, seed: int) -> Outcome:
    rng = derive_stream(seed, "acceptance", "dilation")
    worst = 0.0
    for _ in range(_pick(quick, 200, 20)):
        n = int(rng.integers(1, 3))
        rho = random_density_matrix(n, rng)
        p = float(rng.uniform(0, 1))
        channels = [depolarizing_channel(p, n)]
        if n == 1:
            probs = rng.dirichlet(np.ones(4))
            channels.append(pauli_channel(*(float(v) for v in probs)))
        for ch in channels:
            u, env = kraus_dilation(ch)
            diff = stinespring_apply(rho, u, env).matrix - apply_channel(rho, ch).matrix
            worst = max(worst, float(np.max(np.abs(diff))))
    return Outcome(worst <= 1e-10, worst, "max |Stinespring − Kraus|")


def check_haar_moments(quick: bool, seed: int) -> Outcome:
    samples = _pick(quick, 10_000, 2_000)
    worst = 0.0
    for d in (2, 4):
        rng = derive_stream(seed, "acceptance", "haar", d)
        u00 = np.array([abs(haar_random_unitary(d, rng)[0, 0]) ** 2 for _ in range(samples)])
        for values, expected in ((u00, 1 / d), (u00**2, 2 / (d * (d + 1)))):
            se = float(values.std(ddof=1)) / math.sqrt(samples)
            worst = max(worst, abs(float(values.mean()) - expected) / se)
    return Outcome(worst <= 3.0, worst, "largest moment deviation in standard errors")


# ---------------------------------------------------------------------------
# blockenc
# ---------------------------------------------------------------------------

def check_blockenc_demo(quick: bool, seed: int) -> Outcome:
    demo = be_from_pauli_terms([(0.36, "IZ"), (0.64, "XX")], label="A")
    dense = 0.36 * pauli_matrix("IZ") + 0.64 * pauli_matrix("XX")
    demo_err = float(np.max(np.abs(demo.extract() - dense)))
    rng = derive_stream(seed, "acceptance", "blockenc")
    worst = 0.0
    for _ in range(_pick(quick, 100, 10)):
        dim = 2 ** int(rng.integers(1, 3))
        a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        b = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        x, y = (complex(v) for v in rng.standard_normal(2))
        ea, eb = be_from_matrix(a), be_from_matrix(b)
        pairs = [(be_product(ea, eb).extract(), a @ b),
                 (be_hadamard_product(ea, eb).extract(), a * b),
                 (be_linear_combination([ea, eb], [x, y]).extract(), x * a + y * b)]
        worst = max(worst, *(float(np.max(np.abs(got - want))) for got, want in pairs))
    passed = demo_err <= 1e-10 and worst <= 1e-9
    return Outcome(passed, max(demo_err, worst), f"demo error {demo_err:.3g}")


def check_qsvt_pinv(quick: bool, seed: int) -> Outcome:
    rng = derive_stream(seed, "acceptance", "qsvt")
    poly = PolySpec((0.0, 0.0, 0.0, 0.25), label="x^3/4")
    worst_qsvt, worst_pinv = 0.0, 0.0
    for _ in range(_pick(quick, 50, 10)):
        q1, _ = linalg.qr(rng.standard_normal((4, 4)))
        q2, _ = linalg.qr(rng.standard_normal((4, 4)))
        a = q1 @ np.diag(rng.uniform(0.5, 1.0, 4)) @ q2
        be = be_from_matrix(a)
        w, s, vh = linalg.svd(be.block)
        oracle = (w * poly.evaluate(s)) @ vh
        worst_qsvt = max(worst_qsvt, float(np.max(np.abs(qsvt_apply(be, poly).extract() - oracle))))
        inv = be_pseudo_inverse(be, 0.25, 1e-6)
        residual = np.linalg.norm(inv.extract() @ be.block - np.eye(4), 2)
        worst_pinv = max(worst_pinv, float(residual))
    passed = worst_qsvt <= 1e-9 and worst_pinv <= 1e-6
    return Outcome(passed, max(worst_qsvt, worst_pinv),
                   f"qsvt {worst_qsvt:.3g}, pseudo-inverse {worst_pinv:.3g}")


def check_polynomials(quick: bool, seed: int) -> Outcome:
    worst = 0.0
    problems = []
    for eps in (1e-3, 1e-6, 1e-9):
        spec = poly_approx_exp(eps)
        err = grid_error(spec, np.exp)
        worst = max(worst, err / eps)
        if spec.degree > 4 * math.log(1 / eps) + 4:
            problems.append(f"exp degree {spec.degree} at ε={eps:g}")
    for k in (1.0, 2.0, 4.0):
        spec = poly_approx_gelu(k, 1.0, 1e-4)
        err = grid_error(spec, lambda x, k=k: gelu(k * x))
        worst = max(worst, err / 1e-4)
    return Outcome(worst <= 1.0 and not problems, worst,
                   "; ".join(problems) or "grid error over ε (≤ 1 passes)")


# ---------------------------------------------------------------------------
# kernel
# ---------------------------------------------------------------------------

def check_kernel_identities(quick: bool, seed: int) -> Outcome:
    rng = derive_stream(seed, "acceptance", "kernels")
    rx = FeatureMapSpec(FeatureMapKind.SINGLE_QUBIT_RX)
    basis = FeatureMapSpec(FeatureMapKind.BASIS)
    amplitude = FeatureMapSpec(FeatureMapKind.AMPLITUDE)
    worst = 0.0
    for _ in range(_pick(quick, 1000, 100)):
        x, xp = rng.uniform(0, 2 * math.pi, 2)
        worst = max(worst, abs(quantum_kernel(rx, [x], [xp]) - math.cos((x - xp) / 2) ** 2))
    for _ in range(_pick(quick, 100, 20)):
        b1, b2 = rng.integers(0, 2, 3), rng.integers(0, 2, 3)
        worst = max(worst, abs(quantum_kernel(basis, b1, b2) - float(np.array_equal(b1, b2))))
        v1, v2 = rng.standard_normal(4), rng.standard_normal(4)
        expected = float(v1 @ v2) ** 2 / float(v1 @ v1 * (v2 @ v2))
        worst = max(worst, abs(quantum_kernel(amplitude, v1, v2) - expected))
    return Outcome(worst <= 1e-12, worst, "max deviation from closed forms")


def _l1_unit(rng: np.random.Generator, size: int) -> np.ndarray:
    v = rng.standard_normal(size)
    return v / np.abs(v).sum()


def check_c2qe(quick: bool, seed: int) -> Outcome:
    rng = derive_stream(seed, "acceptance", "c2qe")
    worst = 0.0
    for _ in range(_pick(quick, 1000, 100)):
        size = int(rng.integers(1, 64))
        r, rp = _l1_unit(rng, size), _l1_unit(rng, size)
        a, b = c2qe_embed(r), c2qe_embed(rp)
        lhs = a.matrix.shape[0] * float(np.real(np.trace(a.matrix @ b.matrix))) - 1
        worst = max(worst, abs(lhs - float(r @ rp)))
    return Outcome(worst <= 1e-10, worst, "max |2^N Tr(ρρ') − 1 − ⟨r,r'⟩|")


def _random_pd(rng: np.random.Generator, n: int) -> np.ndarray:
    g = rng.standard_normal((n, n))
    return g @ g.T + 0.1 * np.eye(n)


def check_geometric_difference(quick: bool, seed: int) -> Outcome:
    rng = derive_stream(seed, "acceptance", "gcq")
    worst = 0.0
    for _ in range(_pick(quick, 100, 10)):
        adv = adversarial_dataset(_random_pd(rng, 20), _random_pd(rng, 20))
        worst = max(worst, abs(adv.ratio - adv.g_squared) / adv.g_squared)
    return Outcome(worst <= 1e-6, worst, "max relative |s_C/s_Q − g²|")


def check_risk_bounds(quick: bool, seed: int) -> Outcome:
    rng = derive_stream(seed, "acceptance", "risk")
    n, lam, delta = 10, 0.3, 0.05
    k = _random_pd(rng, n)
    y = rng.standard_normal(n)
    zero = kernel_risk_bounds(k, y, 0.0).train_bound
    inv = np.linalg.inv(k + lam * np.eye(n))
    train = math.sqrt(lam**2 * float(y @ inv @ inv @ y) / n)
    gen = math.sqrt(float(y @ inv @ k @ inv @ y) / n) + math.sqrt(math.log(1 / delta) / n)
    got = kernel_risk_bounds(k, y, lam, delta=delta)
    worst = max(abs(got.train_bound - train), abs(got.gen_bound - gen))
    return Outcome(zero == 0.0 and worst <= 1e-10, worst, f"train bound at λ=0: {zero:g}")


# ---------------------------------------------------------------------------
# readout
# ---------------------------------------------------------------------------

def check_tomography(quick: bool, seed: int) -> Outcome:
    rng = derive_stream(seed, "acceptance", "tomography")
    worst_exact, monotone = 0.0, True
    for i in range(_pick(quick, 10, 4)):
        truth = random_density_matrix(1 + i % 2, rng)
        records = simulate_pauli_settings(truth, 0)
        li = qst_linear_inversion(records, truth)
        mle = qst_mle(records, truth)
        worst_exact = max(worst_exact, trace_distance(li.rho_hat, truth),
                          trace_distance(mle.rho_hat, truth))
        lls = np.asarray(mle.log_likelihoods)
        monotone &= bool(np.all(np.diff(lls) >= -1e-12))
    truth = random_density_matrix(2, rng)
    sampled = simulate_pauli_settings(truth, _pick(quick, 100_000, 10_000), rng)
    shot_dist = trace_distance(qst_linear_inversion(sampled, truth).rho_hat, truth)
    passed = worst_exact <= 1e-6 and monotone and shot_dist <= 0.05
    return Outcome(passed, worst_exact,
                   f"shot-based distance {shot_dist:.4f}, MLE monotone: {monotone}")


# ---------------------------------------------------------------------------
# learners
# ---------------------------------------------------------------------------

def check_parameter_shift(quick: bool, seed: int) -> Outcome:
    rng = derive_stream(seed, "acceptance", "shift")
    h = 1e-5
    worst = 0.0
    for _ in range(_pick(quick, 50, 8)):
        n, layers = int(rng.integers(1, 5)), int(rng.integers(1, 4))
        circuit = build_hec(n, layers)
        theta = rng.uniform(0, 2 * math.pi, circuit.num_params)
        rho = random_density_matrix(n, rng)
        labels = [p for p in pauli_strings(n, include_identity=False)]
        obs = pauli_matrix(labels[int(rng.integers(len(labels)))])
        grad = parameter_shift_grad(circuit, theta, rho, obs)
        for j in range(circuit.num_params):
            step = np.zeros_like(theta)
            step[j] = h
            fd = (qnn_forward(circuit, theta + step, rho, obs)
                  - qnn_forward(circuit, theta - step, rho, obs)) / (2 * h)
            worst = max(worst, abs(grad[j] - fd))
    return Outcome(worst <= 1e-6, worst, "max |shift − central difference|")


def check_barren_plateau(quick: bool, seed: int) -> Outcome:
    qubits = [2, 3, 4] if quick else [2, 3, 4, 5, 6]
    rows = bp_variance_experiment(qubits, _pick(quick, 10_000, 1_000), "two_design", seed)
    ratios = [r.ratio for r in rows]
    sigmas = max(r.mean_sigmas for r in rows)
    passed = all(0.5 <= q <= 2.0 for q in ratios) and sigmas <= 4.0
    return Outcome(passed, max(abs(math.log2(q)) for q in ratios),
                   f"ratios {', '.join(f'{q:.3f}' for q in ratios)}; mean within {sigmas:.2f}σ")


def check_qnn_classifier(quick: bool, seed: int) -> Outcome:
    from workbench.commands.learners import margin_angles, qnn_split

    train, test = qnn_split(_pick(quick, 40, 16), 4, 0.3, seed)
    config = QNNConfig(num_qubits=4, layers=2, epochs=_pick(quick, 50, 5), seed=seed)
    x_train, x_test = margin_angles(train.features), margin_angles(test.features)
    model, record = qnn_train_classifier(x_train, train.labels, config, x_test, test.labels)
    losses = record.losses
    accuracy = qnn_accuracy(model, x_test, test.labels)
    decreased = len(losses) > 1 and losses[-1] < losses[0]
    return Outcome(decreased and accuracy >= 0.8, accuracy,
                   f"loss {losses[0]:.4f} → {losses[-1]:.4f}" if losses else "no epochs")


def check_perceptron_bound(quick: bool, seed: int) -> Outcome:
    worst = 0.0
    for gamma in (0.2, 0.4):
        for s in range(_pick(quick, 100, 10)):
            data = synth_margin_dataset(50, 8, gamma, derive_stream(seed, "perceptron", gamma, s))
            res = perceptron_train(data.features, data.labels)
            worst = max(worst, res.mistakes / mistake_bound(gamma))
    return Outcome(worst <= 1.0, worst, "max mistakes over ⌈1/γ²⌉")


def check_qgan_smoke(quick: bool, seed: int) -> Outcome:
    data = load_csv_dataset(FIXTURES / "optdigits_small.csv", "optdigits")
    images = data.where_label(5).features[:50]
    config = QGANConfig(epochs=_pick(quick, 2, 1), layers=_pick(quick, 6, 2), seed=seed)
    res = qgan_patch_train(images, config)
    finite = all(math.isfinite(v) for v in res.record.losses) and all(
        math.isfinite(e.extra.get("discriminator_loss", 0.0)) for e in res.record.epochs)
    z = derive_stream(seed, "acceptance", "qgan").uniform(0, 2 * math.pi, (4, config.num_qubits))
    worst = 0.0
    for t in range(config.patches):
        probs, _ = patch_probabilities(res.circuit, res.generator[t], z, config.ancillas)
        worst = max(worst, float(np.max(np.abs(probs.sum(axis=1) - 1.0))),
                    float(max(0.0, -probs.min())))
    return Outcome(finite and worst <= 1e-9, worst, f"{len(images)} images, finite: {finite}")


# ---------------------------------------------------------------------------
# grover
# ---------------------------------------------------------------------------

def check_grover(quick: bool, seed: int) -> Outcome:
    rng = derive_stream(seed, "acceptance", "grover")
    worst, lowest = 0.0, 1.0
    for n in range(2, _pick(quick, 12, 8) + 1):
        problem = SearchProblem.from_indices(n, [int(rng.integers(2**n))])
        diag = grover_search(problem, rng)
        worst = max(worst, grover_amplitude_trace(problem, diag.iterations).max_error)
        if problem.dim >= 16:
            lowest = min(lowest, diag.success_prob_exact)
    return Outcome(worst <= 1e-9 and lowest >= 0.8, worst, f"lowest success {lowest:.4f}")


def check_qperceptron_scaling(quick: bool, seed: int) -> Outcome:
    dims = [16, 64, 256] if quick else [64, 256, 1024, 4096]
    report = perceptron_scaling(dims, _pick(quick, 20, 4), master_seed=seed)
    passed = (0.35 <= report.quantum_exponent <= 0.65
              and 0.85 <= report.classical_exponent <= 1.15)
    return Outcome(passed, report.quantum_exponent,
                   f"classical exponent {report.classical_exponent:.3f}")


# ---------------------------------------------------------------------------
# transformer
# ---------------------------------------------------------------------------

CAT_S = np.array([[1, 0, 1, 0], [0, 1, 1, 1], [1, 1, 0, 1]], dtype=float)
CAT_WQ = np.array([[.2, .4, .6, .8], [.1, .3, .5, .7], [.9, .8, .7, .6], [.5, .4, .3, .2]])
CAT_WK = np.array([[.1, .3, .5, .7], [.6, .4, .2, .1], [.8, .9, .7, .6], [.2, .1, .3, .4]])
CAT_WV = np.array([[.3, .5, .7, .9], [.6, .4, .2, .1], [.8, .9, .7, .6], [.5, .4, .3, .2]])
CAT_WEIGHTS = np.array([[.324, .467, .209], [.305, .515, .180], [.346, .432, .222]])
CAT_OUTPUT = np.array([[1.536, 1.519, 1.265, 1.157], [1.566, 1.536, 1.261, 1.137],
                       [1.512, 1.507, 1.269, 1.174]])


def cat_weights() -> WeightSet:
    eye = np.eye(4)
    return WeightSet(CAT_WQ, CAT_WK, CAT_WV, eye, eye, np.zeros(4), np.zeros(4))


def check_transformer_fixture(quick: bool, seed: int) -> Outcome:
    weights = cat_weights()
    w_err = float(np.max(np.abs(attention_weights(CAT_S, weights, 2.0) - CAT_WEIGHTS)))
    o_err = float(np.max(np.abs(classical_attention(CAT_S, weights, 2.0) - CAT_OUTPUT)))
    return Outcome(max(w_err, o_err) <= 5e-4, max(w_err, o_err),
                   f"weights {w_err:.2g}, output {o_err:.2g}")


def check_quantum_transformer(quick: bool, seed: int) -> Outcome:
    lowest_exact, lowest_poly = 1.0, 1.0
    poly_runs = _pick(quick, 10, 1)
    for s in range(_pick(quick, 100, 5)):
        rng = derive_stream(seed, "acceptance", "transformer", s)
        tokens = rng.standard_normal((4, 4))
        weights = WeightSet.random(4, 8, rng)
        inputs = build_input_encodings(tokens, weights)
        j = int(rng.integers(1, 5))
        reference = classical_transformer_row(tokens, j, weights, inputs.alpha0)
        run = q_transformer_row(inputs, j, "exact")
        lowest_exact = min(lowest_exact, cosine_similarity(run.state.amplitudes, reference))
        if s < poly_runs:
            poly = q_transformer_row(inputs, j, "poly", 1e-6)
            lowest_poly = min(lowest_poly, cosine_similarity(poly.state.amplitudes, reference))
    passed = lowest_exact >= 1 - 1e-9 and lowest_poly >= 1 - 1e-4
    return Outcome(passed, 1 - lowest_exact, f"polynomial mode 1 − cos = {1 - lowest_poly:.3g}")


def check_norm_study(quick: bool, seed: int) -> Outcome:
    ells = [32, 64, 128] if quick else [32, 64, 128, 256, 512, 1024]
    trials = _pick(quick, 5, 2)
    unit = norm_scaling_study(RowSampler.UNIT, ells, trials, seed)
    frob_err = max(abs(r.frobenius - math.sqrt(r.ell)) for r in unit.rows)
    gaussian = norm_scaling_study(RowSampler.GAUSSIAN, ells, trials, seed)
    passed = frob_err <= 1e-9 and gaussian.spectral_slope <= 0.6
    return Outcome(passed, gaussian.spectral_slope, f"unit-row Frobenius error {frob_err:.2g}")


CRITERIA: tuple[Criterion, ...] = (
    Criterion(1, "channel algebra", Suite.CORE, check_channel_algebra),
    Criterion(2, "dilation equivalence", Suite.CORE, check_dilation),
    Criterion(3, "Haar moments", Suite.CORE, check_haar_moments),
    Criterion(4, "block-encoding demo", Suite.BLOCKENC, check_blockenc_demo),
    Criterion(5, "QSVT and pseudo-inverse", Suite.BLOCKENC, check_qsvt_pinv),
    Criterion(6, "kernel identities", Suite.KERNEL, check_kernel_identities),
    Criterion(7, "C2QE inner products", Suite.KERNEL, check_c2qe),
    Criterion(8, "geometric-difference saturation", Suite.KERNEL, check_geometric_difference),
    Criterion(9, "risk-bound formulas", Suite.KERNEL, check_risk_bounds),
    Criterion(10, "tomography", Suite.READOUT, check_tomography),
    Criterion(11, "parameter shift", Suite.LEARNERS, check_parameter_shift),
    Criterion(12, "barren plateau", Suite.LEARNERS, check_barren_plateau),
    Criterion(13, "QNN classifier", Suite.LEARNERS, check_qnn_classifier),
    Criterion(14, "perceptron bound", Suite.LEARNERS, check_perceptron_bound),
    Criterion(15, "Grover", Suite.GROVER, check_grover),
    Criterion(16, "quantum-perceptron scaling", Suite.GROVER, check_qperceptron_scaling),
    Criterion(17, "Transformer fixture", Suite.TRANSFORMER, check_transformer_fixture),
    Criterion(18, "quantum Transformer end to end", Suite.TRANSFORMER, check_quantum_transformer),
    Criterion(19, "polynomial approximations", Suite.BLOCKENC, check_polynomials),
    Criterion(20, "QGAN smoke", Suite.LEARNERS, check_qgan_smoke),
    Criterion(21, "norm-scaling study", Suite.TRANSFORMER, check_norm_study),
)


def select(suite: Suite | str) -> list[Criterion]:
    chosen = Suite(suite)
    return [c for c in CRITERIA if chosen is Suite.ALL or c.suite is chosen]


def run_suite(suite: Suite | str, quick: bool = False, seed: int = 0,
              only: Sequence[int] | None = None) -> list[CriterionResult]:
    results = []
    for crit in select(suite):
        if only and crit.number not in only:
            continue
        start = time.perf_counter()
        outcome = crit.check(quick, seed)
        elapsed = time.perf_counter() - start
        res = CriterionResult(crit.number, crit.name, crit.suite.value, outcome.passed,
                              float(outcome.value), outcome.detail, elapsed)
        logger.info("[%s] %2d %-34s value=%.4g  (%.2fs)  %s",
                    "PASS" if res.passed else "FAIL", res.number, res.name, res.value,
                    elapsed, res.detail)
        results.append(res)
    return results
