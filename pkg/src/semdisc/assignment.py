"""Color-to-concept assignment solvers and merit functions.

The general solver finds the maximum-total-merit injective mapping of
concepts to colors (Hungarian method via scipy), then refines it to the
lexicographically smallest optimal mapping by concept order so ties are
resolved deterministically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .associations import AssociationTable
from .distance import PairContext
from .errors import ValidationError

_TIE_TOL = 1e-9


@dataclass
class MeritMatrix:
    concepts: list
    color_ids: list
    merit: np.ndarray
    merit_kind: str  # "isolated" | "balanced"

    def __post_init__(self):
        self.merit = np.asarray(self.merit, dtype=float)
        if self.merit.shape != (len(self.concepts), len(self.color_ids)):
            raise ValidationError("merit shape does not match labels")
        if len(self.concepts) > len(self.color_ids):
            raise ValidationError("need at least as many colors as concepts")


@dataclass
class AssignmentSolution:
    mapping: dict  # concept -> color id, injective
    total_merit: float
    tie: bool
    local_conflicts: list  # concepts not assigned their own argmax color
    merit_kind: str = "isolated"

    def to_json_dict(self):
        return {
            "merit_kind": self.merit_kind,
            "mapping": dict(self.mapping),
            "total_merit": self.total_merit,
            "tie": self.tie,
            "local_conflicts": list(self.local_conflicts),
        }

    def to_json(self):
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)


def merit_isolated(table: AssociationTable) -> MeritMatrix:
    """Merit = raw association strength."""
    if not table.concepts or not table.colors:
        raise ValidationError("empty table")
    return MeritMatrix(list(table.concepts), table.color_ids, table.mean.copy(), "isolated")


def merit_balanced(table: AssociationTable) -> MeritMatrix:
    """Merit = own association minus the best association among the
    other available colors for the same concept."""
    if len(table.colors) < 2:
        raise ValidationError("balanced merit needs at least 2 colors")
    x = table.mean
    n = x.shape[1]
    merit = np.empty_like(x)
    for j in range(n):
        others = np.delete(x, j, axis=1)
        merit[:, j] = x[:, j] - others.max(axis=1)
    return MeritMatrix(list(table.concepts), table.color_ids, merit, "balanced")


def _best_total(merit: np.ndarray) -> float:
    if merit.shape[0] == 0:
        return 0.0
    rows, cols = linear_sum_assignment(merit, maximize=True)
    return float(merit[rows, cols].sum())


def solve_nxn(m: MeritMatrix) -> AssignmentSolution:
    """Maximum-total-merit assignment of each concept to a distinct color.

    Among equally optimal mappings, returns the lexicographically smallest
    permutation by concept order (comparing color ids); `tie` reports
    whether more than one optimal mapping exists.
    """
    merit = np.asarray(m.merit, dtype=float)
    if not np.all(np.isfinite(merit)):
        raise ValidationError("merit matrix contains non-finite entries")
    k, n = merit.shape
    best = _best_total(merit)
    tol = _TIE_TOL * max(1.0, float(np.abs(merit).sum()))

    # Column order by ascending color id gives the lexicographic refinement.
    col_order = sorted(range(n), key=lambda j: m.color_ids[j])
    available = set(range(n))
    chosen = []
    tie = False
    prefix = 0.0
    for i in range(k):
        feasible = []
        for j in col_order:
            if j not in available:
                continue
            rest_cols = sorted(available - {j})
            rest = merit[np.ix_(range(i + 1, k), rest_cols)]
            if prefix + merit[i, j] + _best_total(rest) >= best - tol:
                feasible.append(j)
        if len(feasible) > 1:
            tie = True
        j = feasible[0]
        chosen.append(j)
        available.remove(j)
        prefix += merit[i, j]

    mapping = {m.concepts[i]: m.color_ids[j] for i, j in enumerate(chosen)}
    conflicts = [
        m.concepts[i]
        for i, j in enumerate(chosen)
        if merit[i, j] < merit[i].max() - tol
    ]
    return AssignmentSolution(mapping, float(prefix), tie, conflicts, m.merit_kind)


def solve_2x2(ctx: PairContext) -> AssignmentSolution:
    """Closed-form 2x2 assignment by the sign of (x1 + x4) - (x2 + x3)."""
    x1, x2, x3, x4 = ctx.x
    dx = (x1 + x4) - (x2 + x3)
    tol = _TIE_TOL * max(1.0, abs(x1) + abs(x2) + abs(x3) + abs(x4))
    tie = abs(dx) <= tol
    if tie:
        # Same tie-break as solve_nxn: concept_a takes the smaller color id.
        outer = ctx.color_1 < ctx.color_2
    else:
        outer = dx > 0.0
    if outer:
        mapping = {ctx.concept_a: ctx.color_1, ctx.concept_b: ctx.color_2}
        total = x1 + x4
    else:
        mapping = {ctx.concept_a: ctx.color_2, ctx.concept_b: ctx.color_1}
        total = x2 + x3
    row_max_a = max(x1, x2)
    row_max_b = max(x3, x4)
    assigned_a = x1 if mapping[ctx.concept_a] == ctx.color_1 else x2
    assigned_b = x3 if mapping[ctx.concept_b] == ctx.color_1 else x4
    conflicts = [
        k
        for k, assigned, rmax in (
            (ctx.concept_a, assigned_a, row_max_a),
            (ctx.concept_b, assigned_b, row_max_b),
        )
        if assigned < rmax
    ]
    return AssignmentSolution(mapping, float(total), tie, conflicts, "isolated")


def brute_force_best_total(merit: np.ndarray) -> float:
    """Exhaustive-permutation oracle; intended for tests at small n."""
    from itertools import permutations

    merit = np.asarray(merit, dtype=float)
    k, n = merit.shape
    best = -np.inf
    for perm in permutations(range(n), k):
        best = max(best, float(merit[range(k), perm].sum()))
    return best
