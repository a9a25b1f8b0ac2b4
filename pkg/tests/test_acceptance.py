"""End-to-end acceptance gate.

Each test prints exactly one PASS/FAIL line (visible even under capture)
and then asserts.  Tolerances and runtime budgets are part of the
contract, not implementation details.
"""

import itertools
import time

import numpy as np

from semdisc.assignment import (
    MeritMatrix,
    merit_balanced,
    merit_isolated,
    solve_nxn,
)
from semdisc.color import xyY_to_lab
from semdisc.distance import PairContext, pairwise_report, semantic_distance
from semdisc.inference import pairwise_delta_s_via_mc, sample_assignment_distribution
from semdisc.interpret import build_stimuli, predict_accuracy, predict_rt, preset


def _report(capsys, name, ok, detail):
    with capsys.disabled():
        print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    assert ok, f"{name}: {detail}"


def _pearson(a, b):
    return float(np.corrcoef(np.asarray(a), np.asarray(b))[0, 1])


def test_cross_palette_semantic_correlation(capsys, exp1, exp2):
    """The 28 pairwise semantic distances of the two 8-color palettes are
    nearly perfectly correlated: r = 0.99 +/- 0.02, in under a second."""
    t0 = time.perf_counter()
    ds1 = pairwise_report(exp1).pair_values("delta_s")
    ds2 = pairwise_report(exp2).pair_values("delta_s")
    r = _pearson(ds1, ds2)
    elapsed = time.perf_counter() - t0
    ok = abs(r - 0.99) <= 0.02 and elapsed < 1.0
    _report(capsys, "semantic-distance cross-palette correlation", ok,
            f"r = {r:.4f} (want 0.99 +/- 0.02), {elapsed:.2f}s")


def test_perceptual_vs_semantic_structure(capsys, exp1, exp2):
    """Palette 1 confounds perceptual and semantic distance (r = 0.71);
    palette 2 decouples them (r = 0.02); the two perceptual-distance sets
    are mutually uncorrelated (r = 0.08).  All +/- 0.03, under a second."""
    t0 = time.perf_counter()
    rep1, rep2 = pairwise_report(exp1), pairwise_report(exp2)
    r_de1_ds1 = _pearson(rep1.pair_values("delta_e"), rep1.pair_values("delta_s"))
    r_de2_ds2 = _pearson(rep2.pair_values("delta_e"), rep2.pair_values("delta_s"))
    r_de1_de2 = _pearson(rep1.pair_values("delta_e"), rep2.pair_values("delta_e"))
    elapsed = time.perf_counter() - t0
    ok = (
        abs(r_de1_ds1 - 0.71) <= 0.03
        and abs(r_de2_ds2 - 0.02) <= 0.03
        and abs(r_de1_de2 - 0.08) <= 0.03
        and elapsed < 1.0
    )
    _report(capsys, "perceptual/semantic correlation structure", ok,
            f"r(dE1,dS1) = {r_de1_ds1:.4f} (0.71), r(dE2,dS2) = {r_de2_ds2:.4f} (0.02), "
            f"r(dE1,dE2) = {r_de1_de2:.4f} (0.08), {elapsed:.2f}s")


def test_closed_form_matches_monte_carlo(capsys):
    """Over 1000 random 2x2 contexts, a million-sample Monte-Carlo estimate
    stays within 0.005 of the closed form, in under a minute."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(2024)
    samples = 1_000_000
    # drawing x_i ~ Normal(mean_i, sigma_i) as mean + sigma * z lets one
    # standard-normal block serve every context without changing the
    # sampled distribution
    z = rng.standard_normal((samples, 4))
    worst = 0.0
    for _ in range(1000):
        x = rng.uniform(0.0, 1.0, size=4)
        ctx = PairContext("a", "b", 1, 2, tuple(x))
        exact = semantic_distance(ctx)
        sig = 1.4 * x * (1.0 - x)
        num = (x[0] + x[3]) - (x[1] + x[2])
        margin = z @ (sig * np.array([1.0, -1.0, -1.0, 1.0]))
        p_hat = np.count_nonzero(margin + num > 0.0) / samples
        worst = max(worst, abs(abs(2.0 * p_hat - 1.0) - exact))
    elapsed = time.perf_counter() - t0
    ok = worst <= 0.005 and elapsed < 60.0
    _report(capsys, "closed form vs Monte-Carlo", ok,
            f"max |dS_mc - dS| = {worst:.5f} (<= 0.005), {elapsed:.1f}s")


def test_solver_optimality(capsys):
    """10 000 random square merit matrices, n in 2..6: solver total merit
    equals the exhaustive-permutation maximum every time, in under a minute."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(7)
    failures = 0
    for n in (2, 3, 4, 5, 6):
        perms = np.array(list(itertools.permutations(range(n))))
        rows = np.arange(n)
        for _ in range(2000):
            merit = rng.uniform(-1.0, 1.0, size=(n, n))
            best = merit[rows, perms].sum(axis=1).max()
            sol = solve_nxn(MeritMatrix([f"k{i}" for i in range(n)], list(range(n)), merit, "isolated"))
            if abs(sol.total_merit - best) > 1e-8:
                failures += 1
    elapsed = time.perf_counter() - t0
    ok = failures == 0 and elapsed < 60.0
    _report(capsys, "assignment optimality vs brute force", ok,
            f"{failures}/10000 mismatches, {elapsed:.1f}s")


def test_merit_variants_agree_on_pairs(capsys, exp1, exp2):
    """Raw and margin-based merit give identical 2x2 mappings on every
    color pair of both bundled palettes, in under a second."""
    t0 = time.perf_counter()
    mismatches = 0
    for exp in (exp1, exp2):
        for c1, c2 in itertools.combinations(exp.color_ids, 2):
            sub = exp.subset(list(exp.concepts), [c1, c2])
            if solve_nxn(merit_isolated(sub)).mapping != solve_nxn(merit_balanced(sub)).mapping:
                mismatches += 1
    elapsed = time.perf_counter() - t0
    ok = mismatches == 0 and elapsed < 1.0
    _report(capsys, "merit-function agreement on 2x2 palettes", ok,
            f"{mismatches}/56 pair mismatches, {elapsed:.2f}s")


def test_colorimetry(capsys, table, reference_rows):
    """All 58 bundled colors: published xyY converts to the published LAB
    within 0.5 per channel and lands inside the sRGB gamut; Euclidean LAB
    distance satisfies the metric axioms on 1e5 random triples."""
    worst = 0.0
    for ref in reference_rows.values():
        lab = xyY_to_lab((ref["x"], ref["y"], ref["Y"]))
        worst = max(worst, *(abs(g - w) for g, w in zip(lab, (ref["L"], ref["a"], ref["b"]))))
    gamut_ok = all(c.in_gamut for c in table.colors)

    rng = np.random.default_rng(1)
    u = rng.uniform([0, -100, -100], [100, 100, 100], size=(100_000, 3))
    v = rng.uniform([0, -100, -100], [100, 100, 100], size=(100_000, 3))
    w = rng.uniform([0, -100, -100], [100, 100, 100], size=(100_000, 3))
    duv = np.linalg.norm(u - v, axis=1)
    metric_ok = (
        np.all(np.linalg.norm(u - u, axis=1) == 0.0)
        and np.allclose(duv, np.linalg.norm(v - u, axis=1))
        and np.all(np.linalg.norm(u - w, axis=1) <= duv + np.linalg.norm(v - w, axis=1) + 1e-9)
        and np.all(duv[np.any(u != v, axis=1)] > 0.0)
    )
    roundtrip_ok = worst < 0.5 and len(reference_rows) == 58
    ok = roundtrip_ok and gamut_ok and metric_ok
    _report(capsys, "colorimetry round-trip / gamut / metric axioms", ok,
            f"max channel error = {worst:.3f} (< 0.5), all in gamut = {gamut_ok}, "
            f"metric axioms on 1e5 triples = {metric_ok}")


def test_prediction_presets(capsys, exp2):
    """At batch-mean predictors the flagship accuracy preset returns the
    logistic of its intercept (0.7311 +/- 1e-4) and the RT preset returns
    its intercept exactly; every coefficient matches the published value."""
    rows = build_stimuli(exp2)
    for r in rows:
        r.z_delta_e = r.z_delta_s = r.z_assoc = 0.0
    acc = predict_accuracy(rows, preset("Acc 2.2"))
    rt = predict_rt(rows, preset("RT 2.2"))
    acc_ok = all(abs(a - 0.7311) <= 1e-4 for a in acc)
    rt_ok = all(v == 1121.5 for v in rt)

    expected = {
        "Acc 1.1": (0.89, 0.22, 0.34, None),
        "Acc 1.2": (0.91, 0.26, 0.23, 0.23),
        "Acc 1.A": (0.79, None, None, 0.37),
        "Acc 2.1": (0.97, -0.06, 0.55, None),
        "Acc 2.2": (1.00, -0.06, 0.41, 0.37),
        "Acc 2.A": (0.93, None, None, 0.53),
        "RT 1.1": (1017.7, -29.3, -37.2, None),
        "RT 1.2": (1017.7, -42.8, 1.9, -68.3),
        "RT 1.A": (1017.7, None, None, -76.4),
        "RT 2.1": (1121.5, 12.1, -86.4, None),
        "RT 2.2": (1121.5, 9.0, -36.0, -120.6),
        "RT 2.A": (1121.5, None, None, -135.7),
    }
    coeff_ok = True
    for label, (b0, bp, bs, ba) in expected.items():
        spec = preset(label)
        coeff_ok &= (spec.intercept, spec.beta_perc, spec.beta_sem, spec.beta_assoc) == (b0, bp, bs, ba)

    ok = acc_ok and rt_ok and coeff_ok
    _report(capsys, "prediction presets", ok,
            f"mean-predictor accuracy in 0.7311 +/- 1e-4: {acc_ok}, "
            f"mean-predictor RT == 1121.5: {rt_ok}, all coefficients exact: {coeff_ok}")


def test_shared_favorite_reassignment(capsys):
    """A 3x3 scenario where two concepts share a favorite color: the global
    optimum moves one concept off its argmax, the conflict is reported, and
    the total matches the 3!-permutation brute force."""
    concepts = ["apple", "strawberry", "banana"]
    colors = ["red", "green", "yellow"]
    merit = np.array(
        [
            [0.8, 0.6, 0.2],   # apple: wants red, green is close behind
            [0.9, 0.2, 0.1],   # strawberry: wants red outright
            [0.1, 0.2, 0.9],   # banana: wants yellow
        ]
    )
    sol = solve_nxn(MeritMatrix(concepts, colors, merit, "isolated"))
    best = max(
        merit[(0, 1, 2), perm].sum() for perm in itertools.permutations(range(3))
    )
    ok = (
        sol.mapping["apple"] == "green"
        and "apple" in sol.local_conflicts
        and len(sol.local_conflicts) > 0
        and abs(sol.total_merit - best) < 1e-12
    )
    _report(capsys, "local/global assignment conflict", ok,
            f"apple -> {sol.mapping['apple']}, conflicts = {sol.local_conflicts}, "
            f"total = {sol.total_merit:.3f} (brute force {best:.3f})")


def test_seeded_determinism_substitute(capsys, exp2):
    """Reproducing the human accuracy/RT measurements is not possible from
    the bundled summary data (per-trial responses were never published), so
    this gate substitutes the model-side checks above plus strict seeded
    determinism of every Monte-Carlo output."""
    sub = exp2.subset(list(exp2.concepts), [58, 49, 36, 44])
    d1 = sample_assignment_distribution(sub, samples=50_000, seed=99)
    d2 = sample_assignment_distribution(sub, samples=50_000, seed=99)
    dist_ok = d1.mappings == d2.mappings and d1.probabilities == d2.probabilities

    m1 = pairwise_delta_s_via_mc(sub, samples=20_000, seed=5)
    m2 = pairwise_delta_s_via_mc(sub, samples=20_000, seed=5)
    mc_ok = np.array_equal(m1.delta_s, m2.delta_s)

    d3 = sample_assignment_distribution(sub, samples=50_000, seed=100)
    distinct_ok = d1.probabilities != d3.probabilities

    ok = dist_ok and mc_ok and distinct_ok
    _report(capsys, "human-response reproduction (substituted)", ok,
            "per-trial human data unavailable; seeded Monte-Carlo determinism "
            f"verified instead (distribution: {dist_ok}, pairwise: {mc_ok}, "
            f"seed sensitivity: {distinct_ok})")
