"""Command-line interface.

Every command is deterministic given its full flag set (seeds included),
and every construction is verified before it is reported; a failed
verification exits 1 because it would mean a library bug, not bad luck.
Exit codes: 0 success/verified, 1 semantic failure (not saturating, bound
violated), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import baer, formulas, hypergraph, plane as plane_mod, saturation
from .gf import factor_prime_power
from .plane import ProjectivePlane, canonical_plane, load_plane, load_point_set
from .rng import generator_from_seed


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _json_float(x: float) -> float:
    return float(_fmt(x))


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _plane_order(value: str, parser) -> int:
    try:
        q = int(value)
        factor_prime_power(q)
    except ValueError:
        parser.error(f"{value} is not a prime power")
    if q < 2:
        parser.error("plane order must be >= 2")
    return q


def _resolve_plane(args, parser) -> ProjectivePlane:
    if (args.q is None) == (args.plane is None):
        parser.error("exactly one of --q and --plane is required")
    if args.q is not None:
        return canonical_plane(_plane_order(args.q, parser))
    try:
        return load_plane(args.plane)
    except (OSError, ValueError) as exc:
        parser.error(f"cannot load plane file: {exc}")


# ---------------------------------------------------------------------------
# construct
# ---------------------------------------------------------------------------

def _trace_rows(trace):
    return [{"i": r.step, "point": r.point, "benefit": r.benefit,
             "r_before": r.r_before, "r_after": r.r_after,
             "skew_line": r.skew_line,
             "min_skew_intersection": r.min_skew_intersection}
            for r in trace]


def cmd_construct(args, parser) -> int:
    pl = _resolve_plane(args, parser)
    if args.method == "random" and args.seed is None:
        parser.error("--seed is required with --method random")
    if args.method != "random" and args.p is not None:
        parser.error("--p only applies to --method random")
    if args.method != "greedy" and args.cap is not None:
        parser.error("--cap only applies to --method greedy")

    variant = stop_rule = seed = None
    stats = None
    trace = []
    if args.method == "greedy":
        variant = args.variant
        stop_rule = args.stop_rule
        if args.stop_rule == "step-cap" and args.cap is not None:
            stop_rule = f"step-cap:{args.cap}"
        points, trace = saturation.greedy_construct(
            pl, variant=variant, stop_rule=args.stop_rule, step_cap=args.cap)
        if args.stop_rule == "step-cap" and args.cap is None:
            stop_rule = f"step-cap:{formulas.default_step_cap(pl.q)}"
    elif args.method == "random":
        seed = args.seed
        try:
            points, stats = saturation.random_construct(pl, seed, args.p)
        except ValueError as exc:
            parser.error(str(exc))
    else:
        if pl.origin != "canonical-PG2":
            parser.error("--method baer needs a canonical plane (--q)")
        try:
            embedding = baer.baer_subplane(pl)
        except ValueError as exc:
            parser.error(str(exc))
        points = baer.three_subline_construction(embedding)

    verified = saturation.is_saturating(pl, points)
    doc = {
        "q": pl.q,
        "n": pl.n,
        "method": args.method,
        "variant": variant,
        "stop_rule": stop_rule,
        "seed": seed,
        "size": len(points),
        "points": sorted(points),
        "verified": verified,
        "bound_theorem": formulas.theorem_bound(pl.q),
        "bound_lunelli_sce": _json_float(formulas.lunelli_sce_bound(pl.q)),
    }
    if stats is not None:
        doc["stats"] = {"X": stats.sample_size, "Y": stats.unsaturated_size}
    doc["trace"] = _trace_rows(trace)
    _emit(json.dumps(doc, indent=2) + "\n", args.output)
    return 0 if verified else 1


# ---------------------------------------------------------------------------
# bounds
# ---------------------------------------------------------------------------

def cmd_bounds(args, parser) -> int:
    qs = []
    for tok in args.q_list.split(","):
        qs.append(_plane_order(tok.strip(), parser))
    rows = ["q,lower_bound,theorem_bound,greedy_size,random_mean_size"]
    for q in qs:
        pl = canonical_plane(q)
        points, _ = saturation.greedy_construct(pl, variant="skew")
        mean_text = ""
        if args.random_trials:
            if args.seed is None:
                parser.error("--seed is required with --random-trials")
            sizes = [saturation.random_construct(pl, args.seed + k)[1].final_size
                     for k in range(args.random_trials)]
            mean_text = _fmt(float(np.mean(sizes)))
        rows.append(f"{q},{_fmt(formulas.lunelli_sce_bound(q))},"
                    f"{formulas.theorem_bound(q)},{len(points)},{mean_text}")
    _emit("\n".join(rows) + "\n", args.output)
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def cmd_verify(args, parser) -> int:
    pl = _resolve_plane(args, parser)
    try:
        points = load_point_set(args.points)
        if points and max(points) >= pl.n:
            raise ValueError(f"point index {max(points)} outside [0, {pl.n})")
    except (OSError, ValueError) as exc:
        parser.error(f"cannot load point set: {exc}")
    missing = sorted(saturation.unsaturated(pl, points))
    if not missing and len(points) >= 2:
        print(f"saturating: size={len(points)} q={pl.q}")
        return 0
    if len(points) < 2:
        print(f"not saturating: only {len(points)} points (need >= 2)")
    for p in missing:
        print(p)
    return 1


# ---------------------------------------------------------------------------
# mc / minsat / hypergraph / plane
# ---------------------------------------------------------------------------

def cmd_mc(args, parser) -> int:
    pl = _resolve_plane(args, parser)
    p = args.p if args.p is not None else formulas.sampling_probability(pl.q)
    if not 0.0 <= p <= 1.0:
        parser.error(f"--p must lie in [0, 1], got {p}")
    mean, stderr = saturation.monte_carlo_expectation(pl, p, args.trials, args.seed)
    formula = formulas.expected_unsaturated(pl.q, p) if p < 1.0 else 0.0
    print(f"q={pl.q} n={pl.n} p={_fmt(p)} trials={args.trials} seed={args.seed}")
    print(f"mean={_fmt(mean)} stderr={_fmt(stderr)}")
    print(f"formula={_fmt(formula)}")
    if stderr > 0:
        print(f"z={_fmt((mean - formula) / stderr)}")
    return 0


def cmd_minsat(args, parser) -> int:
    pl = _resolve_plane(args, parser)
    try:
        size, witness = saturation.minsat_bruteforce(pl, allow_large=args.force)
    except ValueError as exc:
        parser.error(str(exc))
    print(f"q={pl.q} n={pl.n}")
    print(f"minimum={size}")
    print("witness=" + " ".join(str(v) for v in sorted(witness)))
    print(f"lower_bound={_fmt(formulas.lunelli_sce_bound(pl.q))}")
    return 0


def cmd_hypergraph(args, parser) -> int:
    pl = _resolve_plane(args, parser)
    if args.s0_size < 2:
        parser.error("--s0-size must be >= 2")
    if args.s0_size > pl.n:
        parser.error(f"--s0-size cannot exceed {pl.n}")
    rng = generator_from_seed(args.seed)
    seed_set = set(int(v) for v in
                   rng.choice(pl.n, size=args.s0_size, replace=False))
    family = hypergraph.saturation_family(pl, seed_set)
    print(f"q={pl.q} n={pl.n} s0_size={args.s0_size} seed={args.seed}")
    print("s0=" + " ".join(str(v) for v in sorted(seed_set)))
    print(f"m={len(family)}")
    if len(family) == 0:
        print("seed set already saturating; nothing to cover")
        return 0
    r, t = hypergraph.check_uniform_intersecting(family)
    print(f"r={r} t={t if t is not None else 'NA'}")
    ok = True
    if len(family) >= 2:
        expected = _lemma_expected_sizes(pl, family, seed_set)
        actual = hypergraph.pairwise_intersection_sizes(family)
        verdict = expected == actual
        ok &= verdict
        print(f"lemma_check={'PASS' if verdict else 'FAIL'}")
    result = hypergraph.greedy_transversal(family)
    print(f"transversal_size={len(result.vertices)} "
          f"bound={result.bound if result.bound is not None else 'NA'}")
    if result.bound is not None:
        ok &= len(result.vertices) <= result.bound
        degree_floor = 1 + -(-t * len(family) // r)
        print(f"first_pick_degree={result.covered_counts[0]} floor={degree_floor}")
        ok &= result.covered_counts[0] >= degree_floor
    augmented = seed_set | set(result.vertices)
    sat = saturation.is_saturating(pl, augmented)
    ok &= sat
    print(f"augmented_size={len(augmented)} saturating={sat}")
    return 0 if ok else 1


def _lemma_expected_sizes(pl, family, seed_set):
    """Intersection sizes the two-case split predicts, in pair order."""
    labels = family.labels
    k = len(seed_set)
    out = []
    for i in range(len(labels)):
        for j in range(i + 1, len(labels)):
            line = pl.line_points[pl.line_through(labels[i], labels[j])]
            hits = sum(1 for v in line.tolist() if v in seed_set)
            out.append(k * (k - 1) if hits == 0 else (k - 1) * (k - 2) + pl.q)
    return out


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="satset",
        description="Construct and verify saturating sets in projective planes.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_plane_args(p):
        p.add_argument("--q", help="prime-power order of the canonical plane")
        p.add_argument("--plane", help="path to a PLANE v1 incidence file")

    p_construct = sub.add_parser("construct", help="build a verified saturating set")
    add_plane_args(p_construct)
    p_construct.add_argument("--method", required=True,
                             choices=["greedy", "random", "baer"])
    p_construct.add_argument("--variant", choices=list(saturation.VARIANTS),
                             default="skew")
    p_construct.add_argument("--stop-rule", choices=list(saturation.STOP_RULES),
                             default="benefit-floor")
    p_construct.add_argument("--cap", type=int, help="step cap for --stop-rule step-cap")
    p_construct.add_argument("--seed", type=int, help="seed (required for random)")
    p_construct.add_argument("--p", type=float, help="sampling probability override")
    p_construct.add_argument("--output", help="write the JSON document here")

    p_bounds = sub.add_parser("bounds", help="CSV table of bounds and achieved sizes")
    p_bounds.add_argument("--q-list", required=True,
                          help="comma-separated prime powers")
    p_bounds.add_argument("--random-trials", type=int, default=0,
                          help="add a mean random-construction column")
    p_bounds.add_argument("--seed", type=int)
    p_bounds.add_argument("--output")

    p_verify = sub.add_parser("verify", help="check a point-set file for saturation")
    add_plane_args(p_verify)
    p_verify.add_argument("--points", required=True)

    p_mc = sub.add_parser("mc", help="Monte-Carlo estimate of the undetermined count")
    add_plane_args(p_mc)
    p_mc.add_argument("--p", type=float)
    p_mc.add_argument("--trials", type=int, required=True)
    p_mc.add_argument("--seed", type=int, required=True)

    p_minsat = sub.add_parser("minsat", help="exact minimum by exhaustive search")
    add_plane_args(p_minsat)
    p_minsat.add_argument("--force", action="store_true",
                          help="override the 21-point cap")

    p_hyper = sub.add_parser("hypergraph", help="saturation family diagnostics")
    add_plane_args(p_hyper)
    p_hyper.add_argument("--s0-size", type=int, required=True)
    p_hyper.add_argument("--seed", type=int, required=True)

    p_plane = sub.add_parser("plane", help="generate or check plane files")
    p_plane.add_argument("action", choices=["gen", "check"])
    p_plane.add_argument("--q")
    p_plane.add_argument("--file", required=True)

    args = parser.parse_args(argv)
    if args.command == "construct":
        return cmd_construct(args, parser)
    if args.command == "bounds":
        return cmd_bounds(args, parser)
    if args.command == "verify":
        return cmd_verify(args, parser)
    if args.command == "mc":
        return cmd_mc(args, parser)
    if args.command == "minsat":
        return cmd_minsat(args, parser)
    if args.command == "hypergraph":
        return cmd_hypergraph(args, parser)
    return cmd_plane(args, parser)


def cmd_plane(args, parser) -> int:
    if args.action == "gen":
        if args.q is None:
            parser.error("plane gen needs --q")
        pl = canonical_plane(_plane_order(args.q, parser))
        plane_mod.save_plane(pl, args.file)
        print(f"wrote q={pl.q} plane ({pl.n} lines) to {args.file}")
        return 0
    try:
        pl = load_plane(args.file)
    except OSError as exc:
        parser.error(str(exc))
    except ValueError as exc:
        if str(exc).startswith("axiom failure"):
            print(str(exc))
            return 1
        parser.error(str(exc))
    print(f"plane file OK: q={pl.q} n={pl.n}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
