"""Semantic distance between colors in the context of a concept pair.

For two concepts and two colors there are two possible bijections.  Under
the rating noise model the decision variable is
dx = (x1 + x4) - (x2 + x3) with the four ratings drawn independently from
untruncated normals, so the probability of the "outer" assignment has the
closed form Phi(mean(dx) / sd(dx)).  Semantic distance is |2 P - 1|.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .associations import AssociationTable, NoiseModel
from .color import delta_e
from .errors import ValidationError


def _phi(z):
    return 0.5 * (1.0 + math.erf(z / math.sqrt(2.0)))


@dataclass(frozen=True)
class PairContext:
    """Two concepts, two colors, and the four mean ratings wiring them.

    x1 = (concept_a, color_1), x2 = (concept_a, color_2),
    x3 = (concept_b, color_1), x4 = (concept_b, color_2).
    """

    concept_a: str
    concept_b: str
    color_1: int
    color_2: int
    x: tuple  # (x1, x2, x3, x4)

    def __post_init__(self):
        if self.concept_a == self.concept_b:
            raise ValidationError("concepts must be distinct")
        if self.color_1 == self.color_2:
            raise ValidationError("colors must be distinct")
        if len(self.x) != 4:
            raise ValidationError("expected exactly four mean ratings")

    @classmethod
    def from_table(cls, table: AssociationTable, concepts, colors):
        ca, cb = concepts
        c1, c2 = colors
        return cls(
            concept_a=ca,
            concept_b=cb,
            color_1=c1,
            color_2=c2,
            x=(
                table.value(ca, c1),
                table.value(ca, c2),
                table.value(cb, c1),
                table.value(cb, c2),
            ),
        )

    def swapped_colors(self):
        x1, x2, x3, x4 = self.x
        return PairContext(self.concept_a, self.concept_b, self.color_2, self.color_1, (x2, x1, x4, x3))


def prob_positive(ctx: PairContext, model: NoiseModel = NoiseModel()) -> float:
    """Probability that the outer assignment (a->1, b->2) wins.

    With all sigmas zero the distribution degenerates: returns 1, 0 or 0.5
    according to the sign of the mean difference.
    """
    x1, x2, x3, x4 = ctx.x
    num = (x1 + x4) - (x2 + x3)
    var = sum(model.sigma(v) ** 2 for v in ctx.x)
    if var == 0.0:
        return 1.0 if num > 0 else (0.0 if num < 0 else 0.5)
    return _phi(num / math.sqrt(var))


def semantic_distance(ctx: PairContext, model: NoiseModel = NoiseModel()) -> float:
    """|P(dx > 0) - P(dx < 0)|, in [0, 1]."""
    return abs(2.0 * prob_positive(ctx, model) - 1.0)


@dataclass
class SemanticDistanceReport:
    """Pairwise semantic and perceptual distance matrices over a color set."""

    concepts: tuple
    color_ids: list
    delta_s: np.ndarray  # symmetric, diagonal stored as 0 (not meaningful)
    delta_e: np.ndarray

    def pairs(self):
        n = len(self.color_ids)
        for i in range(n):
            for j in range(i + 1, n):
                yield (self.color_ids[i], self.color_ids[j], float(self.delta_s[i, j]), float(self.delta_e[i, j]))

    def pair_values(self, which="delta_s"):
        m = self.delta_s if which == "delta_s" else self.delta_e
        n = len(self.color_ids)
        return np.array([m[i, j] for i in range(n) for j in range(i + 1, n)])

    def to_json_dict(self):
        n = len(self.color_ids)
        lower = lambda m: [float(m[i, j]) for i in range(1, n) for j in range(i)]
        return {
            "concepts": list(self.concepts),
            "color_ids": list(self.color_ids),
            "delta_s": lower(self.delta_s),
            "delta_e": lower(self.delta_e),
        }

    def to_json(self):
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)

    def to_csv(self, which="both"):
        buf = io.StringIO()
        buf.write("color_1,color_2,delta_s,delta_e\n")
        for c1, c2, ds, de in self.pairs():
            buf.write(f"{c1},{c2},{ds!r},{de!r}\n")
        return buf.getvalue()


def pairwise_report(table: AssociationTable, model: NoiseModel = NoiseModel()) -> SemanticDistanceReport:
    """All-pairs semantic and perceptual distances for a 2-concept table."""
    if len(table.concepts) != 2:
        raise ValidationError(
            "pairwise_report requires exactly 2 concepts; "
            "use the Monte-Carlo inference module for N-way palettes"
        )
    if len(table.colors) < 2:
        raise ValidationError("need at least 2 colors")
    n = len(table.colors)
    ds = np.zeros((n, n))
    de = np.zeros((n, n))
    ids = table.color_ids
    for i in range(n):
        for j in range(i + 1, n):
            ctx = PairContext.from_table(table, table.concepts, (ids[i], ids[j]))
            ds[i, j] = ds[j, i] = semantic_distance(ctx, model)
            de[i, j] = de[j, i] = delta_e(table.colors[i], table.colors[j])
    return SemanticDistanceReport(tuple(table.concepts), ids, ds, de)
