import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from semdisc.errors import ValidationError
from semdisc.interpret import (
    build_stimuli,
    model_presets,
    pearson_r,
    predict_accuracy,
    predict_rt,
    prediction_csv,
    preset,
    zscore,
)


def test_preset_catalog_complete():
    presets = model_presets()
    assert len(presets) == 12
    kinds = {spec.kind for spec in presets.values()}
    assert kinds == {"logistic_accuracy", "linear_rt"}


def test_preset_lookup_flexible():
    assert preset("Acc 2.2").label == "Acc 2.2"
    assert preset("acc2.2").label == "Acc 2.2"
    with pytest.raises(ValidationError):
        preset("Acc 9.9")


def test_published_intercepts():
    assert preset("Acc 2.2").intercept == pytest.approx(1.00)
    assert preset("RT 2.2").intercept == pytest.approx(1121.5)
    assert preset("Acc 1.1").intercept == pytest.approx(0.89)
    assert preset("RT 1.1").intercept == pytest.approx(1017.7)


def test_published_slopes():
    spec = preset("Acc 2.2")
    assert spec.beta_perc == pytest.approx(-0.06)
    assert spec.beta_sem == pytest.approx(0.41)
    assert spec.beta_assoc == pytest.approx(0.37)
    rt = preset("RT 2.2")
    assert rt.beta_perc == pytest.approx(9.0)
    assert rt.beta_sem == pytest.approx(-36.0)
    assert rt.beta_assoc == pytest.approx(-120.6)


def test_linear_predictor_unit_effects():
    spec = preset("Acc 2.2")
    base = spec.linear_predictor(0.0, 0.0, 0.0)
    assert spec.linear_predictor(1.0, 0.0, 0.0) - base == pytest.approx(spec.beta_perc)
    assert spec.linear_predictor(0.0, 1.0, 0.0) - base == pytest.approx(spec.beta_sem)
    assert spec.linear_predictor(0.0, 0.0, 1.0) - base == pytest.approx(spec.beta_assoc)


# -- z-scoring --------------------------------------------------------------

def test_zscore_basic():
    z = zscore([1.0, 2.0, 3.0])
    assert z.mean() == pytest.approx(0.0)
    assert z.std(ddof=1) == pytest.approx(1.0)


def test_zscore_guards():
    with pytest.raises(ValidationError):
        zscore([1.0])
    with pytest.raises(ValidationError):
        zscore([2.0, 2.0, 2.0])


@given(
    st.lists(st.floats(-100, 100), min_size=3, max_size=30).filter(
        lambda v: max(v) - min(v) > 1e-6
    )
)
def test_zscore_idempotent(values):
    z = zscore(values)
    assert np.allclose(zscore(z), z, atol=1e-9)


# -- stimulus construction --------------------------------------------------

def test_stimulus_batch_shape(exp2):
    rows = build_stimuli(exp2)
    assert len(rows) == 56  # 28 pairs x 2 targets
    assert {r.target for r in rows} == {"mango", "watermelon"}
    z = np.array([r.z_delta_s for r in rows])
    assert z.mean() == pytest.approx(0.0, abs=1e-12)
    assert z.std(ddof=1) == pytest.approx(1.0)


def test_stimulus_correct_color_follows_assignment(exp2):
    rows = build_stimuli(exp2)
    for r in rows:
        assert r.correct_color in r.color_pair
        assert r.assoc == exp2.value(r.target, r.correct_color)


def test_build_stimuli_needs_concept_pair(table):
    with pytest.raises(ValidationError):
        build_stimuli(table.subset(["mango"], [49, 36]))


# -- prediction -------------------------------------------------------------

def test_mean_predictor_accuracy(exp2):
    """With all predictors at their batch means, the logistic prediction is
    the plain logistic of the intercept."""
    rows = build_stimuli(exp2)
    for r in rows:
        r.z_delta_e = r.z_delta_s = r.z_assoc = 0.0
    acc = predict_accuracy(rows, preset("Acc 2.2"))
    want = 1.0 / (1.0 + math.exp(-1.00))
    assert all(a == pytest.approx(want, abs=1e-4) for a in acc)
    rt = predict_rt(rows, preset("RT 2.2"))
    assert all(v == 1121.5 for v in rt)


def test_predictions_bounded(exp2):
    rows = build_stimuli(exp2)
    acc = predict_accuracy(rows, preset("Acc 2.2"))
    assert all(0.0 < a < 1.0 for a in acc)


def test_kind_mismatch_rejected(exp2):
    rows = build_stimuli(exp2)
    with pytest.raises(ValidationError):
        predict_accuracy(rows, preset("RT 2.2"))
    with pytest.raises(ValidationError):
        predict_rt(rows, preset("Acc 2.2"))


def test_association_only_model_is_monotone(exp2):
    rows = build_stimuli(exp2)
    acc = np.array(predict_accuracy(rows, preset("Acc 2.A")))
    z = np.array([r.z_assoc for r in rows if not r.tie])
    order = np.argsort(z)
    assert np.all(np.diff(acc[order]) >= -1e-12)


def test_csv_output(exp2):
    rows = build_stimuli(exp2)
    text = prediction_csv(rows, acc_spec=preset("Acc 2.2"), rt_spec=preset("RT 2.2"))
    lines = text.strip().splitlines()
    assert lines[0].startswith("target,color_1,color_2,")
    assert len(lines) == 1 + len([r for r in rows if not r.tie])


# -- correlation helper -----------------------------------------------------

def test_pearson_guards():
    with pytest.raises(ValidationError):
        pearson_r([1, 2], [3, 4])
    with pytest.raises(ValidationError):
        pearson_r([1, 1, 1], [1, 2, 3])


def test_pearson_exact():
    assert pearson_r([1, 2, 3], [2, 4, 6]) == pytest.approx(1.0)
    assert pearson_r([1, 2, 3], [3, 2, 1]) == pytest.approx(-1.0)
