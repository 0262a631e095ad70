"""Acceptance suite: one test per criterion, one printed verdict line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the verdict lines
as they happen; without -s they still appear in captured output.  The full
module is designed to finish in a few minutes on a laptop.
"""

import json
import math
import subprocess
import sys
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

import satset as ss
from satset.gf import factor_prime_power
from satset.rng import trial_generator

GREEDY_SWEEP_QS = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 19, 23, 25, 27, 32,
                   49, 64, 81, 128]


def _report(num, name, ok, detail=""):
    print(f"\n[criterion {num:02d}] {name}: {'PASS' if ok else 'FAIL'}"
          + (f" ({detail})" if detail else ""))
    assert ok, f"criterion {num} ({name}) failed: {detail}"


def prime_powers(lo, hi):
    out = []
    for q in range(lo, hi + 1):
        try:
            factor_prime_power(q)
        except ValueError:
            continue
        out.append(q)
    return out


@pytest.fixture(scope="module")
def greedy_sweep():
    """Criterion-1 runs, reused by criterion 4 for the step invariants."""
    runs = {}
    for q in GREEDY_SWEEP_QS:
        plane = ss.canonical_plane(q)
        for variant in ("skew", "global"):
            points, trace = ss.greedy_construct(plane, variant=variant)
            runs[(q, variant)] = (plane, points, trace)
    return runs


def test_criterion_01_greedy_theorem_bound(greedy_sweep):
    failures = []
    for (q, variant), (plane, points, _) in greedy_sweep.items():
        bound = ss.theorem_bound(q)
        if not ss.is_saturating(plane, points) or len(points) > bound:
            failures.append((q, variant, len(points), bound))
    _report(1, "greedy sizes within the guarantee for all 19 orders",
            not failures, f"violations={failures}" if failures else
            "both variants, exact inequality")


def test_criterion_02_random_mean_within_bound():
    details = []
    ok = True
    for q in (121, 169):
        plane = ss.canonical_plane(q)
        sizes = []
        for seed in range(100):
            points, stats = ss.random_construct(plane, seed)
            if not ss.is_saturating(plane, points):
                ok = False
            sizes.append(stats.final_size)
        mean = float(np.mean(sizes))
        bound = ss.theorem_bound(q)
        ok = ok and mean <= bound
        details.append(f"q={q}: mean={mean:.2f} <= {bound}")
    _report(2, "random construction verified, mean size within the guarantee",
            ok, "; ".join(details))


def test_criterion_03_exact_expectation():
    plane = ss.canonical_plane(2)
    total = Fraction(0)
    half = Fraction(1, 2)
    for size in range(8):
        for combo in combinations(range(7), size):
            total += (half ** 7) * ss.undetermined_count(plane, combo)
    formula = ss.expected_unsaturated(2, 0.5)
    exact_ok = (abs(float(total) - formula) <= 1e-12
                and abs(formula - 1.53125) <= 1e-12)

    q7 = ss.canonical_plane(7)
    p7 = ss.sampling_probability(7)
    mean, stderr = ss.monte_carlo_expectation(q7, p7, 100000, seed=2026)
    target = ss.expected_unsaturated(7, p7)
    mc_ok = abs(mean - target) <= 5 * stderr
    _report(3, "expectation formula: exhaustive match and Monte-Carlo agreement",
            exact_ok and mc_ok,
            f"enumeration={float(total):.12f}, formula={formula:.12f}, "
            f"mc={mean:.4f}±{stderr:.4f} vs {target:.4f}")


def test_criterion_04_greedy_step_invariants(greedy_sweep):
    checked = 0
    violations = []
    for (q, variant), (_, _, trace) in greedy_sweep.items():
        for rec in trace:
            if rec.step < 2 or rec.skew_line is None:
                continue
            checked += 1
            cap = rec.min_skew_intersection
            if rec.skew_benefit_sum != cap + rec.step * (rec.r_before - cap):
                violations.append((q, variant, rec.step, "benefit-sum"))
            if cap * q > rec.r_before:
                violations.append((q, variant, rec.step, "min-intersection"))
            if rec.r_after * (q + 2) > rec.r_before * (q + 2 - rec.step):
                violations.append((q, variant, rec.step, "contraction"))
    _report(4, "per-step identities and contraction across all greedy runs",
            checked > 0 and not violations,
            f"{checked} steps checked, violations={violations}")


def test_criterion_05_contraction_product_below_q_minus_three_halves():
    bad = []
    for q in prime_powers(4, 1024):
        k = ss.default_step_cap(q)
        if not ss.contraction_product(q, k) < q ** -1.5:
            bad.append(q)
    spot9 = ss.contraction_product(9, 8)
    spot4 = ss.contraction_product(4, 5)
    spots_ok = (abs(spot9 - 1814400 / 214358881) < 1e-15 and spot9 < 3.70e-2
                and abs(spot4 - 120 / 7776) < 1e-15 and spot4 < 0.125)
    _report(5, "k-step contraction product under q^(-3/2) for 4 <= q <= 1024",
            not bad and spots_ok,
            f"violations={bad}, spot q=9: {spot9:.6g}, q=4: {spot4:.6g}")


def test_criterion_06_completion_budget():
    checked = 0
    ok = True
    for q in (5, 7, 9, 11, 13):
        plane = ss.canonical_plane(q)
        top = 3 * int(math.isqrt(q)) + 3
        for k in range(200):
            rng = trial_generator(600 + q, k)
            size = int(rng.integers(0, top))
            start = set(int(v) for v in rng.choice(plane.n, size=size,
                                                   replace=False))
            seeded = set(start)
            p = 0
            while len(seeded) < 2:
                while p in seeded:
                    p += 1
                seeded.add(p)
            budget = math.ceil(len(ss.unsaturated(plane, seeded)) / 2)
            result = ss.complete(plane, start)
            if (not ss.is_saturating(plane, result)
                    or len(result) - len(seeded) > budget):
                ok = False
            checked += 1
    _report(6, "completion stays within the pairing budget and verifies",
            ok, f"{checked} random subsets across q in {{5,7,9,11,13}}")


def test_criterion_07_exact_minima_vs_lower_bound():
    recorded = {2: 4, 3: 4, 4: 5}   # oracle outputs, re-checked every run
    ok = True
    details = []
    for q, expected in recorded.items():
        plane = ss.canonical_plane(q)
        size, witness = ss.minsat_bruteforce(plane)
        lower = ss.lunelli_sce_bound(q)
        ok = ok and size == expected and size > lower
        ok = ok and ss.is_saturating(plane, witness) and len(witness) == size
        details.append(f"q={q}: min={size} > {lower:.3f}")
    _report(7, "brute-force minima match records and beat the lower bound",
            ok, "; ".join(details))


def test_criterion_08_baer_construction():
    ok = True
    details = []
    for q in (9, 16, 25, 49, 81):
        plane = ss.canonical_plane(q)
        points = ss.three_subline_construction(ss.baer_subplane(plane))
        s = int(math.isqrt(q))
        good = len(points) == 3 * s and ss.is_saturating(plane, points)
        ok = ok and good
        details.append(f"q={q}: size={len(points)}")
    _report(8, "triangle-of-sublines sets have size 3*sqrt(q) and verify",
            ok, "; ".join(details))


def test_criterion_09_hypergraph_suite():
    size_ok = lemma_ok = cover_ok = True
    families = 0
    pairs = 0
    for q in (7, 9, 11):
        plane = ss.canonical_plane(q)
        for s0_size in (3, 4, 5):
            for k in range(30):
                rng = trial_generator(900 + q, 100 * s0_size + k)
                seed_set = set(int(v) for v in
                               rng.choice(plane.n, size=s0_size, replace=False))
                family = ss.saturation_family(plane, seed_set)
                families += 1
                # (a) uniform edge size
                if any(len(e) != s0_size * (q - 1) + 1 for e in family.edges):
                    size_ok = False
                if len(family) >= 2:
                    # (b) the intersection lemma's case split, case by case
                    labels = family.labels
                    for i in range(len(family)):
                        for j in range(i + 1, len(family)):
                            line = plane.points_on_line(
                                plane.line_through(labels[i], labels[j]))
                            hits = sum(1 for v in line if v in seed_set)
                            want = (s0_size * (s0_size - 1) if hits == 0 else
                                    (s0_size - 1) * (s0_size - 2) + q)
                            if len(family.edges[i] & family.edges[j]) != want:
                                lemma_ok = False
                            pairs += 1
                    # (c) transversal bound and first-pick degree
                    r, t = ss.check_uniform_intersecting(family)
                    result = ss.greedy_transversal(family)
                    m = len(family)
                    if len(result.vertices) > result.bound:
                        cover_ok = False
                    if result.covered_counts[0] < 1 + math.ceil(t * m / r):
                        cover_ok = False
                else:
                    result = ss.greedy_transversal(family)
                # (d) the transversal completes the seed set
                if not ss.is_saturating(plane, seed_set | set(result.vertices)):
                    cover_ok = False
    _report(9, "saturation-family sizes, intersection lemma, transversal bounds",
            size_ok and lemma_ok and cover_ok,
            f"{families} families, {pairs} edge pairs")


def test_criterion_10_infrastructure(tmp_path):
    axioms_ok = True
    for q in prime_powers(2, 64):
        if not ss.validate_axioms(ss.canonical_plane(q)).ok:
            axioms_ok = False

    plane = ss.canonical_plane(9)
    f1, f2 = tmp_path / "a.txt", tmp_path / "b.txt"
    ss.save_plane(plane, f1)
    loaded = ss.load_plane(f1)
    ss.save_plane(loaded, f2)
    roundtrip_ok = loaded == plane and f1.read_bytes() == f2.read_bytes()

    argv = [sys.executable, "-m", "satset.cli", "construct", "--q", "9",
            "--method", "random", "--seed", "12"]
    out1 = subprocess.run(argv, capture_output=True, check=True).stdout
    out2 = subprocess.run(argv, capture_output=True, check=True).stdout
    cli_ok = out1 == out2 and json.loads(out1)["verified"] is True
    _report(10, "axioms exhaustive to q=64, bit-exact files, byte-identical CLI",
            axioms_ok and roundtrip_ok and cli_ok,
            f"{len(prime_powers(2, 64))} canonical planes validated")


def test_criterion_11_main_term_ratio_diagnostic():
    """Spec target: formula/main-term ratio in [0.5, 2] for 121 <= q <= 1024.

    The exact expectation keeps the (q+1)ln(1+qp/(1-p)) corrections that the
    displayed main term drops; at these orders qp is still ~0.14..0.34, so
    the ratio sits near e^1 rather than inside the stated band.  The
    criterion is asserted as written; see the verdict line for the measured
    range.
    """
    ratios = {}
    for q in prime_powers(121, 1024):
        p = ss.sampling_probability(q)
        ratios[q] = (ss.expected_unsaturated(q, p)
                     / ss.expected_unsaturated_main_term(q, p))
    bad = {q: round(r, 3) for q, r in ratios.items() if not 0.5 <= r <= 2.0}
    lo, hi = min(ratios.values()), max(ratios.values())
    _report(11, "main-term ratio inside [0.5, 2] across 121 <= q <= 1024",
            not bad,
            f"measured ratio range [{lo:.3f}, {hi:.3f}] over {len(ratios)} "
            f"orders, {len(bad)} outside the band")
