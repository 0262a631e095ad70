"""Saturating sets: verification, greedy and randomized construction.

A set S saturates the plane when every point outside S lies on a line
carrying two points of S.  The module tracks three disjoint pools that
partition the points at every step: the chosen set S, the determined
points D (outside S but on some 2-secant of S), and the unsaturated rest
R.  The benefit of a candidate point is the number of R-points its
addition would remove, counting the candidate itself once S is nonempty.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import formulas
from .plane import ProjectivePlane
from .rng import generator_from_seed, trial_generator

BRUTEFORCE_POINT_CAP = 21


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

def _point_mask(plane: ProjectivePlane, points: Iterable[int]) -> np.ndarray:
    mask = np.zeros(plane.n, dtype=bool)
    idx = np.fromiter(points, dtype=np.int64, count=-1)
    if idx.size:
        if idx.min() < 0 or idx.max() >= plane.n:
            raise ValueError(f"point index outside [0, {plane.n})")
        mask[idx] = True
    return mask


def _covered_mask(plane: ProjectivePlane, mask: np.ndarray) -> np.ndarray:
    """Points lying on some line with >= 2 marked points."""
    hits = mask[plane.line_points].sum(axis=1)
    covered = np.zeros(plane.n, dtype=bool)
    det = np.flatnonzero(hits >= 2)
    if det.size:
        covered[plane.line_points[det].ravel()] = True
    return covered


def unsaturated(plane: ProjectivePlane, points: Iterable[int]) -> set[int]:
    """Points outside the set with no line through them carrying two set points."""
    mask = _point_mask(plane, points)
    return set(np.flatnonzero(~_covered_mask(plane, mask) & ~mask).tolist())


def undetermined_count(plane: ProjectivePlane, points: Iterable[int]) -> int:
    """Number of points on no 2-secant of the set, the set's own members included.

    This differs from len(unsaturated(...)) only when the set has fewer than
    two points: a singleton determines no line, so its lone member is itself
    undetermined here, while `unsaturated` always excludes set members.
    This is the count whose expectation `formulas.expected_unsaturated` gives.
    """
    mask = _point_mask(plane, points)
    return int(plane.n - _covered_mask(plane, mask).sum())


def is_saturating(plane: ProjectivePlane, points: Iterable[int]) -> bool:
    """True iff the set has >= 2 points and saturates every outside point."""
    pts = set(points)
    return len(pts) >= 2 and not unsaturated(plane, pts)


# ---------------------------------------------------------------------------
# incremental state
# ---------------------------------------------------------------------------

class SaturationState:
    """Mutable chosen/determined/unsaturated bookkeeping for one plane.

    Maintains per-line counts of chosen points (`line_hits`) and of
    unsaturated points (`unsat_on_line`) so that benefits and skew-line
    scans cost O(q) instead of a full recount.  Single-owner: not meant
    to be shared across threads.
    """

    def __init__(self, plane: ProjectivePlane):
        self.plane = plane
        self.chosen: list[int] = []
        self.in_chosen = np.zeros(plane.n, dtype=bool)
        self.in_unsat = np.ones(plane.n, dtype=bool)
        self.line_hits = np.zeros(plane.n, dtype=np.int64)
        self.unsat_on_line = np.full(plane.n, plane.q + 1, dtype=np.int64)
        self._unsat_total = plane.n

    @property
    def size(self) -> int:
        return len(self.chosen)

    @property
    def unsat_count(self) -> int:
        return self._unsat_total

    @property
    def current_set(self) -> set[int]:
        return set(self.chosen)

    @property
    def unsaturated_set(self) -> set[int]:
        return set(np.flatnonzero(self.in_unsat).tolist())

    @property
    def determined_set(self) -> set[int]:
        return set(np.flatnonzero(~self.in_unsat & ~self.in_chosen).tolist())

    def add_point(self, point: int) -> int:
        """Add a point to the chosen set; returns how many points left R."""
        if self.in_chosen[point]:
            raise ValueError(f"point {point} already chosen")
        lines_p = self.plane.point_lines[point]
        newly_secant = lines_p[self.line_hits[lines_p] == 1]
        removed = 0
        self.in_chosen[point] = True
        self.chosen.append(int(point))
        self.line_hits[lines_p] += 1
        if self.in_unsat[point]:
            self.in_unsat[point] = False
            self.unsat_on_line[lines_p] -= 1
            removed += 1
        if newly_secant.size:
            # two lines through `point` share no other point, so no dupes
            cand = self.plane.line_points[newly_secant].ravel()
            dying = cand[self.in_unsat[cand]]
            if dying.size:
                self.in_unsat[dying] = False
                np.subtract.at(self.unsat_on_line,
                               self.plane.point_lines[dying].ravel(), 1)
                removed += int(dying.size)
        self._unsat_total -= removed
        return removed

    def benefit(self, point: int) -> int:
        """How many unsaturated points adding `point` would remove."""
        if self.in_chosen[point]:
            raise ValueError(f"point {point} is already in the set")
        if not self.chosen:
            return 0
        lines_p = self.plane.point_lines[point]
        live = self.line_hits[lines_p] >= 1
        base = int(self.unsat_on_line[lines_p[live]].sum())
        if self.in_unsat[point]:
            # the candidate sits on every one of its own live lines
            return base + 1 - int(live.sum())
        return base

    def benefit_vector(self) -> np.ndarray:
        """Benefits for all points at once; chosen points get -1."""
        n = self.plane.n
        if not self.chosen:
            out = np.zeros(n, dtype=np.int64)
        else:
            pl = self.plane.point_lines
            live = self.line_hits[pl] >= 1
            base = np.where(live, self.unsat_on_line[pl], 0).sum(axis=1)
            out = base + np.where(self.in_unsat, 1 - live.sum(axis=1), 0)
        out[self.in_chosen] = -1
        return out

    def check_partition(self) -> bool:
        """S, D, R partition the points and R matches a full recount."""
        s, d, r = self.in_chosen, ~self.in_unsat & ~self.in_chosen, self.in_unsat
        if np.any(s & r) or int(s.sum() + d.sum() + r.sum()) != self.plane.n:
            return False
        return self.unsaturated_set == unsaturated(self.plane, self.chosen)


def benefit(state: SaturationState, point: int) -> int:
    return state.benefit(point)


# ---------------------------------------------------------------------------
# greedy construction
# ---------------------------------------------------------------------------

@dataclass
class StepRecord:
    """One greedy step: who was picked, why, and what it did to R.

    `skew_line` is the minimum-|R ∩ line| line among those missing the
    chosen set (lowest index on ties), recorded for both variants whenever
    one exists; the skew variant also picks its point from it.  The two
    seed steps carry no line diagnostics, and their `benefit` is the
    number of points that left R (the seed point itself at step 0).
    """
    step: int
    point: int
    benefit: int
    r_before: int
    r_after: int
    skew_line: int | None
    min_skew_intersection: int | None
    skew_benefit_sum: int | None = None


@dataclass
class _Selection:
    point: int
    benefit: int
    skew_line: int | None
    min_skew_intersection: int | None
    skew_benefit_sum: int | None


VARIANTS = ("skew", "global")
STOP_RULES = ("benefit-floor", "step-cap", "exhaust")


def _select(state: SaturationState, variant: str) -> _Selection:
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")
    if state.size < 2:
        raise ValueError("greedy steps need two seed points in place; "
                         "see greedy_construct for the startup")
    if state.unsat_count == 0:
        raise ValueError("no unsaturated points remain")
    plane = state.plane
    skew = np.flatnonzero(state.line_hits == 0)
    l_star = min_int = benefit_sum = None
    bvec = state.benefit_vector()
    if skew.size:
        counts = state.unsat_on_line[skew]
        k = int(np.argmin(counts))          # first minimum = lowest line index
        l_star, min_int = int(skew[k]), int(counts[k])
        line_pts = plane.line_points[l_star]
        benefit_sum = int(bvec[line_pts].sum())
        if state.size >= 2:
            # double count: each unsaturated point on the line is removable
            # only by itself, each one off it by its |S| connecting points
            i, r = state.size, state.unsat_count
            assert benefit_sum == min_int + i * (r - min_int), \
                "benefit double-count identity failed"
            assert min_int * plane.q <= r, \
                "minimum skew intersection exceeded |R|/q"
    if variant == "skew" and l_star is not None:
        cands = plane.line_points[l_star]
        pick = int(cands[np.argmax(bvec[cands])])
    else:
        pick = int(np.argmax(bvec))
    return _Selection(pick, int(bvec[pick]), l_star, min_int, benefit_sum)


def _apply(state: SaturationState, sel: _Selection) -> StepRecord:
    i, r_before = state.size, state.unsat_count
    removed = state.add_point(sel.point)
    assert removed == sel.benefit, "incremental update disagrees with benefit"
    return StepRecord(step=i, point=sel.point, benefit=sel.benefit,
                      r_before=r_before, r_after=state.unsat_count,
                      skew_line=sel.skew_line,
                      min_skew_intersection=sel.min_skew_intersection,
                      skew_benefit_sum=sel.skew_benefit_sum)


def greedy_step(state: SaturationState, variant: str = "skew") -> StepRecord:
    """Commit one greedy step; ties always break to the lowest index."""
    return _apply(state, _select(state, variant))


def greedy_construct(plane: ProjectivePlane, variant: str = "skew",
                     stop_rule: str = "benefit-floor",
                     step_cap: int | None = None,
                     ) -> tuple[set[int], list[StepRecord]]:
    """Build a verified saturating set greedily.

    Starts from points 0 and 1 (in the canonical plane all point pairs are
    projectively equivalent, and benefits cannot distinguish candidates
    before two points are in).  Then repeats greedy steps until the stop
    rule fires:

    - ``benefit-floor`` (default): stop once the variant's best candidate
      removes at most one unsaturated point, then run `complete` (whose
      additions remove two each).
    - ``step-cap``: stop at |S| = step_cap (default ceil(sqrt(3 q ln q))),
      then run `complete`.
    - ``exhaust``: greedy steps until nothing is unsaturated; no completion.

    The result is always verified before being returned.
    """
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")
    if stop_rule not in STOP_RULES:
        raise ValueError(f"stop_rule must be one of {STOP_RULES}, got {stop_rule!r}")
    state = SaturationState(plane)
    trace: list[StepRecord] = []
    for seed_point in (0, 1):
        r_before = state.unsat_count
        removed = state.add_point(seed_point)
        trace.append(StepRecord(step=state.size - 1, point=seed_point,
                                benefit=removed, r_before=r_before,
                                r_after=state.unsat_count,
                                skew_line=None, min_skew_intersection=None))
    cap = None
    if stop_rule == "step-cap":
        cap = formulas.default_step_cap(plane.q) if step_cap is None else int(step_cap)
    while state.unsat_count:
        if stop_rule == "benefit-floor":
            sel = _select(state, variant)
            if sel.benefit <= 1:
                break
            trace.append(_apply(state, sel))
        elif stop_rule == "step-cap":
            if state.size >= cap:
                break
            trace.append(greedy_step(state, variant))
        else:
            trace.append(greedy_step(state, variant))
    if state.unsat_count:
        result = complete(plane, state.current_set)
    else:
        result = state.current_set
    assert is_saturating(plane, result)
    return result, trace


# ---------------------------------------------------------------------------
# completion
# ---------------------------------------------------------------------------

def complete(plane: ProjectivePlane, points: Iterable[int]) -> set[int]:
    """Extend a set until it saturates, adding at most ceil(|R|/2) points.

    Unsaturated points are processed in pairs (x1, x2), always the two
    lowest-index ones: with (s1, s2) the two lowest-index set points, the
    meet y of <x1,s1> and <x2,s2> is added, which determines both.  Sets
    with fewer than two points are first seeded with the lowest-index
    outside points (callers report those startup additions separately).
    """
    state = SaturationState(plane)
    start = sorted(set(int(v) for v in points))
    if start and not 0 <= start[0] <= start[-1] < plane.n:
        raise ValueError(f"point index outside [0, {plane.n})")
    for p in start:
        state.add_point(p)
    p = 0
    while state.size < 2:
        while state.in_chosen[p]:
            p += 1
        state.add_point(p)
    while state.unsat_count >= 2:
        x1, x2 = (int(v) for v in np.flatnonzero(state.in_unsat)[:2])
        s1, s2 = (int(v) for v in np.flatnonzero(state.in_chosen)[:2])
        l1 = plane.line_through(x1, s1)
        l2 = plane.line_through(x2, s2)
        # The lines differ: one line through x1, s1, x2, s2 would put two
        # set points on a line through x1, contradicting x1 unsaturated.
        assert l1 != l2
        y = plane.meet(l1, l2)
        # y is never already chosen: a second set point on <x1,s1> would
        # likewise contradict x1 unsaturated.  y may coincide with x1 or
        # x2; adding it is then still valid, the mate being determined by
        # y together with its own anchor.
        assert not state.in_chosen[y]
        state.add_point(y)
        assert not state.in_unsat[x1] and not state.in_unsat[x2]
    if state.unsat_count == 1:
        x = int(np.flatnonzero(state.in_unsat)[0])
        s = int(np.flatnonzero(state.in_chosen)[0])
        row = plane.line_points[plane.line_through(x, s)]
        y = next(int(v) for v in row if v != x and not state.in_chosen[v])
        state.add_point(y)
    assert state.unsat_count == 0
    return state.current_set


# ---------------------------------------------------------------------------
# randomized construction
# ---------------------------------------------------------------------------

@dataclass
class RandomTrialStats:
    """Bookkeeping of one seeded sampling run.

    final_size never exceeds sample_size + ceil(unsaturated_size / 2)
    + startup_additions (the latter only when fewer than two points were
    sampled).
    """
    seed: int
    sample_size: int
    unsaturated_size: int
    startup_additions: int
    final_size: int


def random_construct(plane: ProjectivePlane, seed: int,
                     p_override: float | None = None,
                     ) -> tuple[set[int], RandomTrialStats]:
    """Sample each point independently, then complete to a saturating set.

    The inclusion probability defaults to `formulas.sampling_probability`;
    an explicit override in [0, 1] is accepted.  All randomness comes from
    the package PCG64 stream for `seed`, so runs reproduce exactly.
    """
    if p_override is None:
        p = formulas.sampling_probability(plane.q)
    else:
        p = float(p_override)
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"sampling probability must lie in [0, 1], got {p}")
    rng = generator_from_seed(seed)
    mask = rng.random(plane.n) < p
    sample = set(np.flatnonzero(mask).tolist())
    x_size = len(sample)
    y_size = len(unsaturated(plane, sample))
    final = complete(plane, sample)
    assert is_saturating(plane, final)
    stats = RandomTrialStats(seed=seed, sample_size=x_size,
                             unsaturated_size=y_size,
                             startup_additions=max(0, 2 - x_size),
                             final_size=len(final))
    return final, stats


def monte_carlo_expectation(plane: ProjectivePlane, p: float, trials: int,
                            seed: int) -> tuple[float, float]:
    """Empirical mean and standard error of the undetermined-point count.

    Each trial samples every point with probability p from its own
    (seed, trial) stream and counts points on no 2-secant of the sample
    (the `undetermined_count` semantics, so the mean is comparable to
    `formulas.expected_unsaturated`).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability must lie in [0, 1], got {p}")
    n = plane.n
    lp = plane.line_points
    ys = np.empty(trials, dtype=np.float64)
    for t in range(trials):
        mask = trial_generator(seed, t).random(n) < p
        hits = mask[lp].sum(axis=1)
        det = np.flatnonzero(hits >= 2)
        if det.size:
            covered = np.zeros(n, dtype=bool)
            covered[lp[det].ravel()] = True
            ys[t] = n - int(covered.sum())
        else:
            ys[t] = n
    mean = float(ys.mean())
    stderr = float(ys.std(ddof=1) / np.sqrt(trials)) if trials > 1 else 0.0
    return mean, stderr


# ---------------------------------------------------------------------------
# brute-force oracle
# ---------------------------------------------------------------------------

def minsat_bruteforce(plane: ProjectivePlane, allow_large: bool = False,
                      ) -> tuple[int, set[int]]:
    """Exact minimum saturating-set size with the lexicographically first witness.

    Enumerates subsets in increasing size, lexicographically within each
    size, using bitmask incidence; no lower-bound pruning, so the result
    is a bound-free oracle.  Refuses planes with more than 21 points
    unless allow_large is set.
    """
    n = plane.n
    if n > BRUTEFORCE_POINT_CAP and not allow_large:
        raise ValueError(f"plane has {n} points; brute force capped at "
                         f"{BRUTEFORCE_POINT_CAP} (pass allow_large=True to override)")
    line_bits = [0] * n
    for j in range(n):
        m = 0
        for v in plane.line_points[j].tolist():
            m |= 1 << v
        line_bits[j] = m
    pair_bits = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            bits = line_bits[plane.line_through(a, b)]
            pair_bits[a][b] = bits
            pair_bits[b][a] = bits
    full = (1 << n) - 1
    for k in range(2, n + 1):
        for combo in itertools.combinations(range(n), k):
            covered = 0
            for a, b in itertools.combinations(combo, 2):
                covered |= pair_bits[a][b]
            for v in combo:
                covered |= 1 << v
            if covered == full:
                return k, set(combo)
    raise RuntimeError("no saturating set found")  # unreachable: all points saturate
