"""Set families, greedy transversals, and the saturation hypergraph.

For a seed set S0 in a plane, each unsaturated point x gets an edge
holding every point whose addition would saturate x: the points of the
|S0| lines joining x to S0, minus S0 itself.  All edges have exactly
|S0|(q-1)+1 vertices, and any two intersect in |S0|(|S0|-1) points (when
the line through their two defining points misses S0) or in
(|S0|-1)(|S0|-2)+q points (when it meets S0 in one point).  A transversal
of the family, added to S0, therefore saturates the plane.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import mpmath
import numpy as np

from .formulas import _precise_ceil
from .plane import ProjectivePlane
from .saturation import unsaturated

FAMILY_HEADER = "FAMILY v1"


@dataclass(frozen=True)
class SetFamily:
    """A list of vertex subsets over a ground set [0, ground_size).

    `labels`, when present, records the originating unsaturated point of
    each edge of a saturation family.
    """
    ground_size: int
    edges: tuple[frozenset[int], ...]
    labels: tuple[int, ...] | None = None

    def __post_init__(self):
        for k, edge in enumerate(self.edges):
            if not edge:
                raise ValueError(f"edge {k} is empty")
            if min(edge) < 0 or max(edge) >= self.ground_size:
                raise ValueError(f"edge {k} has a vertex outside "
                                 f"[0, {self.ground_size})")
        if self.labels is not None and len(self.labels) != len(self.edges):
            raise ValueError("labels must match edges one to one")

    def __len__(self):
        return len(self.edges)


@dataclass
class TransversalResult:
    vertices: list[int]          # in pick order
    covered_counts: list[int]    # edges newly covered by each pick
    bound: int | None            # ceil(rm/(tm+r) ln m) when it applies


def saturation_family(plane: ProjectivePlane, seed_set: Iterable[int]) -> SetFamily:
    """One edge per unsaturated point: the points that would saturate it."""
    s0 = sorted(set(int(v) for v in seed_set))
    if len(s0) < 2:
        raise ValueError("the seed set needs at least 2 points")
    missing = sorted(unsaturated(plane, s0))   # also validates the indices
    s0_mask = np.zeros(plane.n, dtype=bool)
    s0_mask[s0] = True
    edges = []
    labels = []
    for x in missing:
        rows = plane.line_points[[plane.line_through(x, s) for s in s0]]
        members = np.unique(rows.ravel())
        edges.append(frozenset(int(v) for v in members[~s0_mask[members]]))
        labels.append(x)
    return SetFamily(ground_size=plane.n, edges=tuple(edges),
                     labels=tuple(labels) if labels else None)


def pairwise_intersection_sizes(family: SetFamily) -> list[int]:
    """|H_i ∩ H_j| for all i < j, in row-major pair order."""
    out = []
    for i in range(len(family.edges)):
        for j in range(i + 1, len(family.edges)):
            out.append(len(family.edges[i] & family.edges[j]))
    return out


def check_uniform_intersecting(family: SetFamily) -> tuple[int | None, int | None]:
    """(r, t): the uniform edge size and the minimum pairwise intersection.

    r is None unless every edge has the same size; t is None unless the
    family has at least two edges.  t is always computed, never trusted.
    """
    sizes = {len(e) for e in family.edges}
    r = sizes.pop() if len(sizes) == 1 else None
    t = min(pairwise_intersection_sizes(family)) if len(family.edges) >= 2 else None
    return r, t


def transversal_bound(r: int, t: int, m: int) -> int:
    """ceil( r*m / (t*m + r) * ln m ) for an r-uniform t-intersecting family.

    Meaningless at m = 1 (it evaluates to 0 while one vertex is always
    needed), hence the m >= 2 requirement.
    """
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    if m < 2:
        raise ValueError(f"the bound needs m >= 2, got {m}")
    if t > r:
        raise ValueError(f"t={t} cannot exceed r={r}")
    value = r * m / (t * m + r) * math.log(m)
    return _precise_ceil(value, lambda: mpmath.mpf(r * m) / (t * m + r) * mpmath.log(m))


def greedy_transversal(family: SetFamily) -> TransversalResult:
    """Repeatedly pick the vertex covering the most uncovered edges.

    Ties break to the lowest vertex index; degrees are recomputed exactly
    each round.  The result is checked to hit every edge.  For a uniform
    intersecting family with m >= 2 the `transversal_bound` value is
    attached for callers to compare against.
    """
    m = len(family.edges)
    if m == 0:
        return TransversalResult([], [], None)
    r, t = check_uniform_intersecting(family)
    bound = transversal_bound(r, t, m) if (r is not None and m >= 2) else None
    uncovered = set(range(m))
    picks: list[int] = []
    covered_counts: list[int] = []
    while uncovered:
        degree = np.zeros(family.ground_size, dtype=np.int64)
        for k in uncovered:
            degree[list(family.edges[k])] += 1
        v = int(np.argmax(degree))
        newly = [k for k in uncovered if v in family.edges[k]]
        picks.append(v)
        covered_counts.append(len(newly))
        uncovered.difference_update(newly)
    assert all(any(v in e for v in picks) for e in family.edges)
    return TransversalResult(picks, covered_counts, bound)


# ---------------------------------------------------------------------------
# family file format
# ---------------------------------------------------------------------------

def save_family(family: SetFamily, destination) -> None:
    out = [f"{FAMILY_HEADER} n={family.ground_size} m={len(family.edges)}"]
    out.extend(" ".join(str(v) for v in sorted(e)) for e in family.edges)
    Path(destination).write_text("\n".join(out) + "\n")


def load_family(source) -> SetFamily:
    text = Path(source).read_text()
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ValueError("family file is empty")
    head = lines[0].split(" ")
    if (len(head) != 4 or " ".join(head[:2]) != FAMILY_HEADER
            or not head[2].startswith("n=") or not head[3].startswith("m=")):
        raise ValueError(f"bad family header {lines[0]!r}")
    try:
        n, m = int(head[2][2:]), int(head[3][2:])
    except ValueError:
        raise ValueError(f"bad family header {lines[0]!r}") from None
    if len(lines) - 1 != m:
        raise ValueError(f"expected {m} edge rows, got {len(lines) - 1}")
    edges = []
    for k, row in enumerate(lines[1:]):
        try:
            vals = [int(tok) for tok in row.split(" ")]
        except ValueError:
            raise ValueError(f"edge {k}: non-integer token") from None
        if any(vals[i] >= vals[i + 1] for i in range(len(vals) - 1)):
            raise ValueError(f"edge {k}: vertices must be strictly ascending")
        edges.append(frozenset(vals))
    return SetFamily(ground_size=n, edges=tuple(edges))
