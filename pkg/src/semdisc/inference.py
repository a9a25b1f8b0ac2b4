"""Monte-Carlo assignment inference for N concepts x N colors.

Each sample draws a full rating matrix from the noise model (untruncated
normals), solves the maximum-merit assignment on the drawn values, and
tallies the winning mapping.  The resulting distribution over mappings is
summarized with a normalized-entropy discriminability index.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from . import kernels
from .associations import AssociationTable, NoiseModel
from .color import delta_e
from .distance import SemanticDistanceReport
from .errors import ValidationError

RNG_NAME = "pcg64"
_CHUNK = 1 << 16
_MAX_MAPPINGS = 50_000


@dataclass
class AssignmentDistribution:
    """Empirical distribution over injective concept->color mappings."""

    concepts: list
    mappings: list  # list of dicts, distinct
    probabilities: list
    samples: int
    seed: int
    rng: str = RNG_NAME

    def entropy_nats(self) -> float:
        p = np.asarray(self.probabilities)
        p = p[p > 0]
        return float(-(p * np.log(p)).sum())

    def to_json_dict(self, n=None):
        out = {
            "samples": self.samples,
            "seed": self.seed,
            "rng": self.rng,
            "outcomes": [
                {"mapping": m, "p": p}
                for m, p in zip(self.mappings, self.probabilities)
            ],
            "entropy_nats": self.entropy_nats(),
        }
        if n is None:
            n = max(len(self.concepts), 2)
        if n >= 2:
            out["index"] = discriminability_index(self, n).index
        return out

    def to_json(self, n=None):
        return json.dumps(self.to_json_dict(n=n), indent=2, sort_keys=True)


@dataclass
class DiscriminabilityIndex:
    entropy: float
    normalized_entropy: float
    index: float


def _candidate_mappings(k, n):
    count = math.perm(n, k)
    if count > _MAX_MAPPINGS:
        raise ValidationError(
            f"{count} candidate mappings exceed the tally limit "
            f"({_MAX_MAPPINGS}); use a smaller palette"
        )
    return np.array(list(permutations(range(n), k)), dtype=np.int64)


def sample_assignment_distribution(
    table: AssociationTable,
    model: NoiseModel = NoiseModel(),
    samples: int = 100_000,
    seed: int = 0,
) -> AssignmentDistribution:
    """Distribution over max-merit assignments of sampled rating matrices.

    Reproducible for a given seed: chunks of samples use generators spawned
    from the master seed, so the tally does not depend on how chunks are
    scheduled.
    """
    if samples < 1:
        raise ValidationError("samples must be >= 1")
    k, n = table.mean.shape
    if k > n:
        raise ValidationError("need at least as many colors as concepts")
    perm_cols = _candidate_mappings(k, n)
    counts = np.zeros(len(perm_cols), dtype=np.int64)

    mean = table.mean
    sig = model.sigma(mean)
    ss = np.random.SeedSequence(seed)
    n_chunks = (samples + _CHUNK - 1) // _CHUNK
    children = ss.spawn(n_chunks)
    done = 0
    for child in children:
        size = min(_CHUNK, samples - done)
        rng = np.random.default_rng(child)
        draws = rng.normal(loc=mean, scale=sig, size=(size, k, n))
        kernels.tally_argmax(np.ascontiguousarray(draws), perm_cols, counts)
        done += size

    observed = np.nonzero(counts)[0]
    order = sorted(observed, key=lambda p: (-counts[p], tuple(perm_cols[p])))
    ids = table.color_ids
    mappings = [
        {table.concepts[i]: ids[j] for i, j in enumerate(perm_cols[p])} for p in order
    ]
    probs = [counts[p] / samples for p in order]
    return AssignmentDistribution(list(table.concepts), mappings, probs, samples, seed)


def discriminability_index(dist: AssignmentDistribution, n: int) -> DiscriminabilityIndex:
    """1 - entropy / ln(n!): 1 for a deterministic mapping, 0 for uniform."""
    if n < 2:
        raise ValidationError("n must be >= 2")
    entropy = dist.entropy_nats()
    max_entropy = math.log(math.factorial(n))
    normalized = min(entropy / max_entropy, 1.0)
    return DiscriminabilityIndex(entropy, normalized, 1.0 - normalized)


def pairwise_delta_s_via_mc(
    table: AssociationTable,
    model: NoiseModel = NoiseModel(),
    samples: int = 100_000,
    seed: int = 0,
) -> SemanticDistanceReport:
    """Monte-Carlo estimate of the pairwise semantic-distance report.

    Each color pair gets its own generator spawned from the master seed,
    so per-pair estimates are independent and reproducible.
    """
    if len(table.concepts) != 2:
        raise ValidationError("requires exactly 2 concepts")
    if samples < 1:
        raise ValidationError("samples must be >= 1")
    n = len(table.colors)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    children = np.random.SeedSequence(seed).spawn(len(pairs))
    ds = np.zeros((n, n))
    de = np.zeros((n, n))
    x = table.mean
    for (i, j), child in zip(pairs, children):
        means = np.array([x[0, i], x[0, j], x[1, i], x[1, j]])
        sig = model.sigma(means)
        rng = np.random.default_rng(child)
        positive = 0
        done = 0
        while done < samples:
            size = min(1 << 20, samples - done)
            draws = rng.normal(loc=means, scale=sig, size=(size, 4))
            positive += kernels.count_positive_2x2(np.ascontiguousarray(draws))
            done += size
        p_hat = positive / samples
        ds[i, j] = ds[j, i] = abs(2.0 * p_hat - 1.0)
        de[i, j] = de[j, i] = delta_e(table.colors[i], table.colors[j])
    return SemanticDistanceReport(tuple(table.concepts), table.color_ids, ds, de)
