"""Decoding accuracy / response-time prediction from published coefficients.

Builds per-(target, color pair) stimulus rows from a 2-concept table,
z-scores the three predictors over the batch, and applies fixed-effect
regression coefficients (logistic link for accuracy, identity for RT).
Coefficients ship as named presets; nothing is refit here.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from .assignment import solve_2x2
from .associations import AssociationTable, NoiseModel
from .color import delta_e
from .distance import PairContext, semantic_distance
from .errors import ValidationError


@dataclass(frozen=True)
class RegressionSpec:
    kind: str  # "logistic_accuracy" | "linear_rt"
    label: str
    intercept: float
    beta_perc: float | None = None
    beta_sem: float | None = None
    beta_assoc: float | None = None

    def linear_predictor(self, z_de, z_ds, z_assoc):
        lp = self.intercept
        if self.beta_perc is not None:
            lp += self.beta_perc * z_de
        if self.beta_sem is not None:
            lp += self.beta_sem * z_ds
        if self.beta_assoc is not None:
            lp += self.beta_assoc * z_assoc
        return lp


def _load_presets():
    raw = json.loads(
        (resources.files("semdisc.data") / "regression_models.json").read_text()
    )
    out = {}
    for m in raw["models"]:
        spec = RegressionSpec(
            kind=m["kind"],
            label=m["label"],
            intercept=m["intercept"],
            beta_perc=m["beta_perc"],
            beta_sem=m["beta_sem"],
            beta_assoc=m["beta_assoc"],
        )
        out[m["label"]] = spec
    return out


_PRESETS = None


def model_presets():
    global _PRESETS
    if _PRESETS is None:
        _PRESETS = _load_presets()
    return dict(_PRESETS)


def preset(label: str) -> RegressionSpec:
    """Look up a preset by label; whitespace-insensitive ("Acc2.2" works)."""
    presets = model_presets()
    if label in presets:
        return presets[label]
    wanted = label.replace(" ", "").lower()
    for name, spec in presets.items():
        if name.replace(" ", "").lower() == wanted:
            return spec
    raise ValidationError(f"unknown model preset: {label!r}")


@dataclass
class StimulusRow:
    target: str
    color_pair: tuple
    correct_color: int
    delta_s: float
    delta_e: float
    assoc: float
    tie: bool = False
    z_delta_s: float | None = None
    z_delta_e: float | None = None
    z_assoc: float | None = None


def zscore(values):
    """(v - mean) / sd with the n-1 denominator."""
    arr = np.asarray(values, dtype=float)
    if arr.size < 2:
        raise ValidationError("zscore needs at least 2 values")
    sd = arr.std(ddof=1)
    if sd == 0.0:
        raise ValidationError("zscore undefined for zero spread")
    return (arr - arr.mean()) / sd


def build_stimuli(table: AssociationTable, model: NoiseModel = NoiseModel()):
    """One row per (target concept, unordered color pair), z-scored over
    the batch.  Rows whose 2x2 assignment is tied are flagged."""
    if len(table.concepts) != 2:
        raise ValidationError("requires exactly 2 concepts")
    ids = table.color_ids
    n = len(ids)
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            ctx = PairContext.from_table(table, table.concepts, (ids[i], ids[j]))
            sol = solve_2x2(ctx)
            ds = semantic_distance(ctx, model)
            de = delta_e(table.colors[i], table.colors[j])
            for target in table.concepts:
                correct = sol.mapping[target]
                rows.append(
                    StimulusRow(
                        target=target,
                        color_pair=(ids[i], ids[j]),
                        correct_color=correct,
                        delta_s=ds,
                        delta_e=de,
                        assoc=table.value(target, correct),
                        tie=sol.tie,
                    )
                )
    for name, attr in (("delta_s", "z_delta_s"), ("delta_e", "z_delta_e"), ("assoc", "z_assoc")):
        z = zscore([getattr(r, name) for r in rows])
        for r, v in zip(rows, z):
            setattr(r, attr, float(v))
    return rows


def _usable(rows, include_ties):
    out = [r for r in rows if include_ties or not r.tie]
    if not out:
        raise ValidationError("no unambiguous stimulus rows to predict")
    return out


def predict_accuracy(rows, spec: RegressionSpec, include_ties=False):
    """Fixed-effects logistic prediction, strictly inside (0, 1)."""
    if spec.kind != "logistic_accuracy":
        raise ValidationError(f"{spec.label} is not an accuracy model")
    return [
        1.0 / (1.0 + math.exp(-spec.linear_predictor(r.z_delta_e, r.z_delta_s, r.z_assoc)))
        for r in _usable(rows, include_ties)
    ]


def predict_rt(rows, spec: RegressionSpec, include_ties=False):
    """Fixed-effects linear prediction in milliseconds."""
    if spec.kind != "linear_rt":
        raise ValidationError(f"{spec.label} is not an RT model")
    return [
        spec.linear_predictor(r.z_delta_e, r.z_delta_s, r.z_assoc)
        for r in _usable(rows, include_ties)
    ]


def pearson_r(a, b) -> float:
    """Sample Pearson correlation of two equal-length lists."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.size < 3:
        raise ValidationError("pearson_r needs equal-length lists of at least 3")
    if a.std() == 0.0 or b.std() == 0.0:
        raise ValidationError("pearson_r undefined for zero variance")
    return float(np.corrcoef(a, b)[0, 1])


def prediction_csv(rows, acc_spec=None, rt_spec=None, include_ties=False):
    """CSV with raw predictors and model predictions per stimulus row."""
    usable = _usable(rows, include_ties)
    acc = predict_accuracy(rows, acc_spec, include_ties) if acc_spec else [None] * len(usable)
    rt = predict_rt(rows, rt_spec, include_ties) if rt_spec else [None] * len(usable)
    buf = io.StringIO()
    buf.write("target,color_1,color_2,correct_color,delta_s,delta_e,assoc,pred_accuracy,pred_rt_ms\n")
    for r, pa, prt in zip(usable, acc, rt):
        buf.write(
            f"{r.target},{r.color_pair[0]},{r.color_pair[1]},{r.correct_color},"
            f"{r.delta_s!r},{r.delta_e!r},{r.assoc!r},"
            f"{'' if pa is None else repr(pa)},{'' if prt is None else repr(prt)}\n"
        )
    return buf.getvalue()
