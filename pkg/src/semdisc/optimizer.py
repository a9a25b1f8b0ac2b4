"""Constrained palette search over a candidate color pool.

A palette for a concept pair is two groups of k colors: each group's
own-concept associations must be spaced by at least `min_assoc_step`,
its other-concept associations must stay below `max_cross_assoc`, and
all pairwise perceptual distances must clear `min_delta_e`.  Feasible
palettes are ranked by a configurable objective (mean semantic distance
by default).

Group candidates are enumerated by depth-first search with pruning on
the association-gap constraint; pairing the two group lists is done with
vectorized matrix products so the full cross product stays cheap.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from importlib import resources

import numpy as np
from scipy.special import ndtr

from .associations import AssociationTable, NoiseModel
from .color import delta_e
from .errors import ValidationError

OBJECTIVES = ("mean_delta_s", "min_delta_s", "min_delta_e")

# Distance thresholds are audited with a small slack: bundled coordinates are
# printed at fixed precision, so exact grid spacings land within ~1e-2.
_DE_TOL = 1e-2


def _default_config():
    return json.loads(
        (resources.files("semdisc.data") / "palette_search_defaults.json").read_text()
    )


@dataclass(frozen=True)
class PaletteConstraints:
    k_per_concept: int = 4
    min_assoc_step: float = 0.10
    max_cross_assoc: float = 0.30
    min_delta_e: float = 25.0
    concept_blacklist: tuple = ("orange", "blueberry")

    def __post_init__(self):
        if self.k_per_concept < 1:
            raise ValidationError("k_per_concept must be >= 1")
        if min(self.min_assoc_step, self.max_cross_assoc, self.min_delta_e) < 0:
            raise ValidationError("thresholds must be >= 0")

    @classmethod
    def default(cls):
        return cls.from_json_dict(_default_config())

    @classmethod
    def from_json_dict(cls, d):
        known = {k: d[k] for k in ("k_per_concept", "min_assoc_step", "max_cross_assoc", "min_delta_e") if k in d}
        if "concept_blacklist" in d:
            known["concept_blacklist"] = tuple(d["concept_blacklist"])
        return cls(**known)

    def to_json_dict(self):
        return {
            "k_per_concept": self.k_per_concept,
            "min_assoc_step": self.min_assoc_step,
            "max_cross_assoc": self.max_cross_assoc,
            "min_delta_e": self.min_delta_e,
            "concept_blacklist": list(self.concept_blacklist),
        }


@dataclass
class PaletteCandidate:
    concepts: tuple
    colors: list  # group for concepts[0] first, then group for concepts[1]
    min_delta_s: float
    mean_delta_s: float
    min_delta_e: float
    feasible: bool
    violations: list = field(default_factory=list)

    def to_json_dict(self):
        return {
            "concepts": list(self.concepts),
            "colors": list(self.colors),
            "min_delta_s": self.min_delta_s,
            "mean_delta_s": self.mean_delta_s,
            "min_delta_e": self.min_delta_e,
            "feasible": self.feasible,
            "violations": list(self.violations),
        }


def _delta_s_matrix(table, concepts, model):
    """Closed-form pairwise semantic distances over every table color."""
    xa = table.concept_row(concepts[0])
    xb = table.concept_row(concepts[1])
    sa, sb = model.sigma(xa), model.sigma(xb)
    num = (xa[:, None] + xb[None, :]) - (xa[None, :] + xb[:, None])
    var = sa[:, None] ** 2 + sb[None, :] ** 2 + sa[None, :] ** 2 + sb[:, None] ** 2
    with np.errstate(invalid="ignore"):
        z = np.where(var > 0, num / np.sqrt(np.where(var > 0, var, 1.0)), np.sign(num) * np.inf)
    out = np.abs(2.0 * ndtr(z) - 1.0)
    out[(var == 0) & (num == 0)] = 0.0
    np.fill_diagonal(out, 0.0)
    return out


def _delta_e_matrix(table):
    lab = np.array([c.lab for c in table.colors])
    diff = lab[:, None, :] - lab[None, :, :]
    return np.sqrt((diff ** 2).sum(axis=2))


def _check_blacklist(concepts, constraints):
    for k in concepts:
        if k in constraints.concept_blacklist:
            raise ValidationError(f"concept {k!r} is blacklisted")


def _audit_group(table, own, cross, ids, constraints, tag):
    violations = []
    own_vals = sorted((table.value(own, c) for c in ids), reverse=True)
    for hi, lo in zip(own_vals, own_vals[1:]):
        if hi - lo < constraints.min_assoc_step - 1e-12:
            violations.append(f"{tag}: association gap {hi - lo:.4f} below min_assoc_step")
            break
    for c in ids:
        if table.value(cross, c) > constraints.max_cross_assoc + 1e-12:
            violations.append(f"{tag}: color {c} cross-association exceeds max_cross_assoc")
    return violations


def score_palette(
    table: AssociationTable,
    concepts,
    colors,
    model: NoiseModel = NoiseModel(),
    constraints: PaletteConstraints | None = None,
) -> PaletteCandidate:
    """Distance statistics plus a constraint audit for one palette.

    `colors` lists the first concept's group then the second's; an odd
    color count is audited for distances only.
    """
    colors = list(colors)
    if len(set(colors)) != len(colors):
        raise ValidationError("duplicate color ids in palette")
    if len(colors) < 2:
        raise ValidationError("palette needs at least 2 colors")
    constraints = constraints or PaletteConstraints.default()
    sub = table.subset(list(concepts), colors)
    ds = _delta_s_matrix(sub, concepts, model)
    de = _delta_e_matrix(sub)
    iu = np.triu_indices(len(colors), k=1)
    violations = []
    if float(de[iu].min()) < constraints.min_delta_e - _DE_TOL:
        violations.append("pairwise delta_e below min_delta_e")
    if len(colors) % 2 == 0:
        half = len(colors) // 2
        violations += _audit_group(table, concepts[0], concepts[1], colors[:half], constraints, concepts[0])
        violations += _audit_group(table, concepts[1], concepts[0], colors[half:], constraints, concepts[1])
    return PaletteCandidate(
        concepts=tuple(concepts),
        colors=colors,
        min_delta_s=float(ds[iu].min()),
        mean_delta_s=float(ds[iu].mean()),
        min_delta_e=float(de[iu].min()),
        feasible=not violations,
        violations=violations,
    )


def _group_chains(table, own, cross, pool_pos, constraints, de):
    """All ordered k-subsets (own-assoc descending) satisfying the gap,
    cross-association, and within-group distance constraints."""
    own_row = table.concept_row(own)
    cross_row = table.concept_row(cross)
    elig = [p for p in pool_pos if cross_row[p] <= constraints.max_cross_assoc + 1e-12]
    elig.sort(key=lambda p: (-own_row[p], table.colors[p].id))
    k = constraints.k_per_concept
    chains = []

    def dfs(start, chosen):
        if len(chosen) == k:
            chains.append(tuple(chosen))
            return
        for idx in range(start, len(elig)):
            p = elig[idx]
            if chosen:
                if own_row[chosen[-1]] - own_row[p] < constraints.min_assoc_step - 1e-12:
                    continue
                if any(de[q, p] < constraints.min_delta_e - _DE_TOL for q in chosen):
                    continue
            dfs(idx + 1, chosen + [p])

    dfs(0, [])
    return chains


def enumerate_palettes(
    table: AssociationTable,
    concepts,
    constraints: PaletteConstraints | None = None,
    limit: int = 100,
    model: NoiseModel = NoiseModel(),
    pool=None,
    objective: str = "mean_delta_s",
) -> list:
    """Top feasible palettes for a concept pair, ranked by the objective
    (descending) with lexicographic color-id tie-break.

    The search is exhaustive over the pool; `limit` caps the result list
    only.  `pool` restricts the candidate color ids (default: all).
    """
    constraints = constraints or PaletteConstraints.default()
    if objective not in OBJECTIVES:
        raise ValidationError(f"objective must be one of {OBJECTIVES}")
    ca, cb = concepts
    table.concept_pos(ca), table.concept_pos(cb)
    _check_blacklist(concepts, constraints)
    if pool is None:
        pool_pos = list(range(len(table.colors)))
    else:
        pool_pos = [table.color_pos(c) for c in pool]

    ds = _delta_s_matrix(table, (ca, cb), model)
    de = _delta_e_matrix(table)
    chains_a = _group_chains(table, ca, cb, pool_pos, constraints, de)
    chains_b = _group_chains(table, cb, ca, pool_pos, constraints, de)
    if not chains_a or not chains_b:
        return []

    n = len(table.colors)
    A = np.array(chains_a)
    B = np.array(chains_b)
    ia = np.zeros((len(A), n))
    ia[np.arange(len(A))[:, None], A] = 1.0
    ib = np.zeros((len(B), n))
    ib[np.arange(len(B))[:, None], B] = 1.0
    k = constraints.k_per_concept
    n_pairs = (2 * k) * (2 * k - 1) // 2

    within_sum = lambda ind, m: ((ind @ m) * ind).sum(axis=1) / 2.0
    wa_sum, wb_sum = within_sum(ia, ds), within_sum(ib, ds)
    conflict = (de < constraints.min_delta_e - _DE_TOL).astype(float)
    np.fill_diagonal(conflict, 1.0)  # also rejects overlapping groups
    am = ia @ ds
    ac = ia @ conflict

    def within_min(chains, m):
        out = np.full(len(chains), np.inf)
        for c in range(k):
            for d in range(c + 1, k):
                out = np.minimum(out, m[chains[:, c], chains[:, d]])
        return out

    if objective != "mean_delta_s":
        m_obj = ds if objective == "min_delta_s" else de
        wa_min, wb_min = within_min(A, m_obj), within_min(B, m_obj)

    results = []  # (-score, colors tuple, a_idx, b_idx)
    chunk = 512
    for i0 in range(0, len(A), chunk):
        sl = slice(i0, min(i0 + chunk, len(A)))
        ok = (ac[sl] @ ib.T) == 0.0
        if not ok.any():
            continue
        if objective == "mean_delta_s":
            score = (wa_sum[sl][:, None] + wb_sum[None, :] + am[sl] @ ib.T) / n_pairs
        else:
            cross_min = np.full(ok.shape, np.inf)
            for c in range(k):
                rows = m_obj[A[sl, c]]
                for d in range(k):
                    cross_min = np.minimum(cross_min, rows[:, B[:, d]])
            score = np.minimum(np.minimum(wa_min[sl][:, None], wb_min[None, :]), cross_min)
        score = np.where(ok, score, -np.inf)
        flat = score.ravel()
        keep = np.nonzero(flat > -np.inf)[0]
        if limit is not None and len(keep) > limit:
            keep = keep[np.argpartition(flat[keep], -limit)[-limit:]]
        for idx in keep:
            a_i, b_i = divmod(int(idx), len(B))
            a_i += sl.start
            colors = tuple(table.colors[p].id for p in chains_a[a_i] + chains_b[b_i])
            results.append((-flat[idx], colors, a_i, b_i))
        if limit is not None and len(results) > 4 * limit:
            results.sort()
            del results[limit:]

    results.sort()
    if limit is not None:
        del results[limit:]
    return [
        score_palette(table, (ca, cb), list(colors), model, constraints)
        for _, colors, _, _ in results
    ]


def swap_what_if(
    candidate: PaletteCandidate,
    remove: int,
    add: int,
    table: AssociationTable,
    model: NoiseModel = NoiseModel(),
    constraints: PaletteConstraints | None = None,
) -> PaletteCandidate:
    """Rescore the palette with one color replaced; pure."""
    if remove == add:
        raise ValidationError("swap source and target are the same color")
    if remove not in candidate.colors:
        raise ValidationError(f"color {remove} not in palette")
    if add in candidate.colors:
        raise ValidationError(f"color {add} already in palette")
    table.color_pos(add)
    colors = [add if c == remove else c for c in candidate.colors]
    return score_palette(table, candidate.concepts, colors, model, constraints)
