from __future__ import annotations

import json
import math

import numpy as np
import pytest

from qml.blockenc.polynomials import gelu
from qml.errors import ArgumentError, DegenerateInputError, ValidationError
from qml.transformer import (
    RowSampler,
    TokenSequence,
    WeightSet,
    attention_weights,
    build_input_encodings,
    causal_mask,
    classical_attention,
    classical_transformer_row,
    classical_transformer_trace,
    cosine_similarity,
    ffn,
    layer_norm_residual,
    norm_scaling_study,
    q_transformer_row,
)
from workbench.acceptance import (
    CAT_OUTPUT,
    CAT_S,
    CAT_WEIGHTS,
    check_norm_study,
    check_quantum_transformer,
    check_transformer_fixture,
)


# ---------------------------------------------------------------------------
# Classical reference
# ---------------------------------------------------------------------------

def test_cat_attention_matches_reference(cat_weights):
    np.testing.assert_allclose(attention_weights(CAT_S, cat_weights, 2.0), CAT_WEIGHTS, atol=5e-4)
    np.testing.assert_allclose(classical_attention(CAT_S, cat_weights, 2.0), CAT_OUTPUT,
                               atol=5e-4)


def test_cat_fixture_file_loads(fixtures_dir):
    raw = json.loads((fixtures_dir / "transformer_cat.json").read_text())
    weights = WeightSet.from_dict(raw)
    assert (weights.d, weights.d_ff) == (4, 4)
    np.testing.assert_allclose(attention_weights(raw["S"], weights, raw["alpha0"]), CAT_WEIGHTS,
                               atol=5e-4)
    del raw["M_1"]
    with pytest.raises(ArgumentError):
        WeightSet.from_dict(raw)


def test_weight_shapes_are_checked():
    eye = np.eye(4)
    with pytest.raises(ValidationError):
        WeightSet(eye, np.eye(3), eye, eye, eye, np.zeros(4), np.zeros(4))
    with pytest.raises(ValidationError):
        WeightSet(eye, eye, eye, np.ones((8, 4)), np.ones((4, 8)), np.zeros(4), np.zeros(4))


def test_causal_mask_blocks_future_keys(cat_weights):
    mask = causal_mask(3)
    assert np.all(np.isneginf(mask[np.triu_indices(3, k=1)]))
    assert np.all(mask[np.tril_indices(3)] == 0)
    weights = attention_weights(CAT_S, cat_weights, 2.0, masked=True)
    np.testing.assert_allclose(weights[0], [1.0, 0.0, 0.0])
    np.testing.assert_allclose(weights.sum(axis=1), 1.0)


def test_layer_norm_centres_and_scales(rng):
    out = layer_norm_residual(rng.standard_normal(6), rng.standard_normal(6))
    assert out.mean() == pytest.approx(0.0, abs=1e-12)
    assert math.sqrt(np.mean(out**2)) == pytest.approx(1.0)


def test_layer_norm_rejects_degenerate_input():
    with pytest.raises(DegenerateInputError):
        layer_norm_residual([1.0, 1.0, 1.0], [2.0, 2.0, 2.0])
    with pytest.raises(ArgumentError):
        layer_norm_residual([1.0, 2.0], [1.0, 2.0, 3.0])


def test_identity_ffn_is_gelu(cat_weights):
    x = np.array([-1.0, 0.0, 0.5, 2.0])
    np.testing.assert_allclose(ffn(x, cat_weights), gelu(x))


def test_trace_stages_and_row_bounds(cat_weights):
    trace = classical_transformer_trace(CAT_S, 2, cat_weights, 2.0)
    np.testing.assert_allclose(trace.attention, CAT_OUTPUT[1], atol=5e-4)
    assert trace.output.shape == (4,)
    with pytest.raises(ArgumentError):
        classical_transformer_row(CAT_S, 0, cat_weights, 2.0)
    with pytest.raises(ArgumentError):
        classical_transformer_row(CAT_S, 4, cat_weights, 2.0)


def test_token_padding():
    padded, flags = TokenSequence(CAT_S).padded()
    assert padded.shape == (4, 4)
    assert flags.tolist() == [False, False, False, True]


def test_transformer_fixture_criterion():
    assert check_transformer_fixture(True, 0).passed


# ---------------------------------------------------------------------------
# Block-encoding pipeline
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("j", [1, 2, 3])
def test_exact_quantum_row_matches_classical(rng, j):
    tokens = rng.standard_normal((3, 4))
    weights = WeightSet.random(4, 8, rng)
    inputs = build_input_encodings(tokens, weights)
    run = q_transformer_row(inputs, j, "exact")
    reference = classical_transformer_row(tokens, j, weights, inputs.alpha0)
    assert cosine_similarity(run.state.amplitudes, reference) >= 1 - 1e-9
    np.testing.assert_allclose(run.stages["softmax"].amplitudes ** 2,
                               attention_weights(tokens, weights, inputs.alpha0)[j - 1],
                               atol=1e-10)


def test_masked_quantum_row_matches_classical(rng):
    tokens = rng.standard_normal((4, 4))
    weights = WeightSet.random(4, 8, rng)
    inputs = build_input_encodings(tokens, weights)
    run = q_transformer_row(inputs, 2, "exact", masked=True)
    reference = classical_transformer_row(tokens, 2, weights, inputs.alpha0, masked=True)
    assert cosine_similarity(run.state.amplitudes, reference) >= 1 - 1e-9


def test_resource_report_and_alpha0(rng):
    tokens = rng.standard_normal((2, 4))
    weights = WeightSet.random(4, 4, rng, bias=False)
    inputs = build_input_encodings(tokens, weights)
    assert inputs.alpha0 == pytest.approx(
        inputs.s.alpha**2 * inputs.w_q.alpha * inputs.w_k.alpha)
    report = q_transformer_row(inputs, 1).report.as_dict()
    assert report["kind"] == "construction count"
    assert report["totals"]
    with pytest.raises(ArgumentError):
        q_transformer_row(inputs, 3)


def test_width_mismatch_is_rejected(rng):
    with pytest.raises(ArgumentError):
        build_input_encodings(rng.standard_normal((2, 3)), WeightSet.random(4, 4, rng))


def test_cosine_of_zero_vector():
    with pytest.raises(DegenerateInputError):
        cosine_similarity([0.0, 0.0], [1.0, 0.0])


@pytest.mark.slow
def test_polynomial_quantum_row_is_close(rng):
    tokens = rng.standard_normal((3, 4))
    weights = WeightSet.random(4, 8, rng)
    inputs = build_input_encodings(tokens, weights)
    run = q_transformer_row(inputs, 2, "poly", 1e-6)
    reference = classical_transformer_row(tokens, 2, weights, inputs.alpha0)
    assert cosine_similarity(run.state.amplitudes, reference) >= 1 - 1e-4


@pytest.mark.slow
def test_quantum_transformer_criterion():
    assert check_quantum_transformer(True, 0).passed


# ---------------------------------------------------------------------------
# Norm study
# ---------------------------------------------------------------------------

def test_unit_rows_have_root_ell_frobenius_norm():
    study = norm_scaling_study(RowSampler.UNIT, [4, 16], 2, seed=0, d=8)
    for row in study.rows:
        assert row.frobenius == pytest.approx(math.sqrt(row.ell))
    assert study.frobenius_slope == pytest.approx(0.5)


def test_orthonormal_and_repeated_rows():
    ortho = norm_scaling_study("orthonormal", [2, 4], 2, seed=0, d=8)
    assert all(r.spectral == pytest.approx(1.0) and not r.flagged for r in ortho.rows)
    repeated = norm_scaling_study("repeated", [2, 4], 2, seed=0, d=8)
    assert all(r.flagged for r in repeated.rows)
    assert repeated.spectral_slope == pytest.approx(0.5)
    with pytest.raises(ArgumentError):
        norm_scaling_study("orthonormal", [16], 1, seed=0, d=8)
    with pytest.raises(ArgumentError):
        norm_scaling_study("unit", [], 1, seed=0)
    with pytest.raises(ArgumentError):
        norm_scaling_study("bogus", [4], 1, seed=0)


def test_norm_study_criterion():
    assert check_norm_study(True, 0).passed
