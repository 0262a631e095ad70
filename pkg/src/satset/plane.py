"""Projective planes of order q as immutable incidence structures.

A plane holds two cross-indexed arrays: ``line_points[j]`` lists the q+1
points of line j in ascending order, and ``point_lines[P]`` the q+1 lines
through point P.  Canonical PG(2,q) uses a fixed indexing of homogeneous
triples (leftmost nonzero coordinate normalised to 1):

    points 0 .. q^2-1      (1, a, b)   index = a*q + b
    points q^2 .. q^2+q-1  (0, 1, a)   index = q^2 + a
    point  q^2+q           (0, 0, 1)

Lines carry the identical encoding on their dual triples, and point P lies
on line L exactly when the dot product of the two triples vanishes.  The
fixed indexing makes every construction in this package reproducible.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .gf import GaloisField, field_for_order

PLANE_HEADER = "PLANE v1"


def point_triple(q: int, index: int) -> tuple[int, int, int]:
    """Decode a canonical point (or dual line) index into its triple."""
    if not 0 <= index <= q * q + q:
        raise ValueError(f"index {index} out of range for order {q}")
    if index < q * q:
        return (1, index // q, index % q)
    if index < q * q + q:
        return (0, 1, index - q * q)
    return (0, 0, 1)


def triple_index(q: int, triple: Sequence[int]) -> int:
    """Encode a normalised triple (leftmost nonzero coordinate = 1)."""
    x, y, z = triple
    if x == 1:
        return y * q + z
    if x == 0 and y == 1:
        return q * q + z
    if x == 0 and y == 0 and z == 1:
        return q * q + q
    raise ValueError(f"triple {triple!r} is not normalised")


@dataclass
class ValidationReport:
    ok: bool
    failures: list[str]


class ProjectivePlane:
    """Incidence structure with q^2+q+1 points and lines, q+1 per line."""

    def __init__(self, q: int, line_points: np.ndarray, origin: str,
                 field: GaloisField | None = None, validate: bool = True):
        n = q * q + q + 1
        arr = np.ascontiguousarray(np.asarray(line_points, dtype=np.int32))
        if validate:
            report = validate_axioms(arr.tolist(), q)
            if not report.ok:
                raise ValueError("invalid plane: " + report.failures[0])
        if arr.shape != (n, q + 1):
            raise ValueError(f"expected {n}x{q + 1} incidence array, got {arr.shape}")
        self.q = q
        self.n = n
        self.origin = origin
        self.field = field
        self.line_points = arr
        self.point_lines = self._invert(arr, n, q)
        self.line_points.setflags(write=False)
        self.point_lines.setflags(write=False)

    @staticmethod
    def _invert(line_points: np.ndarray, n: int, q: int) -> np.ndarray:
        flat = line_points.ravel()
        line_idx = np.repeat(np.arange(n, dtype=np.int32), q + 1)
        order = np.argsort(flat, kind="stable")
        grouped = flat[order].reshape(n, q + 1)
        if not np.array_equal(grouped[:, 0], np.arange(n)) or np.any(grouped[:, 0:1] != grouped):
            raise ValueError("some point is not on exactly q+1 lines")
        return np.ascontiguousarray(line_idx[order].reshape(n, q + 1))

    def __eq__(self, other):
        # round-trip identity ignores the origin tag
        return (isinstance(other, ProjectivePlane)
                and self.q == other.q
                and np.array_equal(self.line_points, other.line_points))

    def __repr__(self):
        return f"ProjectivePlane(q={self.q}, n={self.n}, origin={self.origin!r})"

    def points_on_line(self, line: int) -> list[int]:
        return self.line_points[line].tolist()

    def lines_through(self, point: int) -> list[int]:
        return self.point_lines[point].tolist()

    def line_through(self, p: int, r: int) -> int:
        """Index of the unique line containing two distinct points."""
        if p == r:
            raise ValueError("line_through needs two distinct points")
        common = np.intersect1d(self.point_lines[p], self.point_lines[r],
                                assume_unique=True)
        return int(common[0])

    def meet(self, l1: int, l2: int) -> int:
        """The unique common point of two distinct lines."""
        if l1 == l2:
            raise ValueError("meet needs two distinct lines")
        common = np.intersect1d(self.line_points[l1], self.line_points[l2],
                                assume_unique=True)
        return int(common[0])


def build_pg2(field: GaloisField) -> ProjectivePlane:
    """Canonical Desarguesian plane PG(2,q) over the given field."""
    q = field.q
    n = q * q + q + 1
    if field._tables is None:
        raise ValueError(f"plane construction needs field tables (q <= 1024), got q={q}")
    add = field._tables["add"]
    mul = field._tables["mul"]
    neg = field._tables["neg"]
    inv = field._tables["inv"]
    a_range = np.arange(q, dtype=np.int64)
    line_points = np.empty((n, q + 1), dtype=np.int32)

    for j in range(n):
        d0, d1, d2 = point_triple(q, j)
        if d0 == 1:
            b, c = d1, d2
            if b != 0:
                # (1, a2, a3) with 1 + b*a2 + c*a3 = 0
                a3 = a_range
                a2 = mul[inv[b], neg[add[1, mul[c, a3]]]]
                pts = a2 * q + a3
            else:
                # b = 0, c != 0: a3 fixed, a2 free
                a3 = mul[inv[c], neg[1]]
                pts = a_range * q + a3
            extra = q * q + mul[inv[c], neg[b]] if c != 0 else q * q + q
        elif d1 == 1:
            c = d2
            # (1, a, b) with a + c*b = 0
            b = a_range
            pts = mul[neg[c], b] * q + b
            extra = (q * q + neg[inv[c]]) if c != 0 else q * q + q
        else:
            # dual (0,0,1): all (1, a, 0) plus (0,1,0)
            pts = a_range * q
            extra = q * q
        row = np.empty(q + 1, dtype=np.int64)
        row[:q] = pts
        row[q] = extra
        row.sort()
        line_points[j] = row

    # dual (1,0,0) has no x=1 solutions; fix it up explicitly
    j = triple_index(q, (1, 0, 0))
    row = np.concatenate([q * q + a_range, [q * q + q]])
    line_points[j] = row
    return ProjectivePlane(q, line_points, origin="canonical-PG2", field=field,
                           validate=False)


@functools.lru_cache(maxsize=None)
def canonical_plane(q: int) -> ProjectivePlane:
    """Cached canonical PG(2,q) for a prime power q."""
    return build_pg2(field_for_order(q))


def validate_axioms(rows, q: int | None = None) -> ValidationReport:
    """Check the projective-plane axioms, reporting the failures found.

    Accepts a ProjectivePlane or a raw list of line rows (with ``q``).
    Beyond the structural checks, it verifies that every unordered point
    pair lies on exactly one common line; together with the line-size and
    point-degree counts this forces the dual axiom (two lines meet in
    exactly one point) by double counting, so it is not checked separately.
    """
    if isinstance(rows, ProjectivePlane):
        q = rows.q
        rows = rows.line_points.tolist()
    if q is None:
        raise ValueError("q is required when validating raw rows")
    n = q * q + q + 1
    failures: list[str] = []
    if len(rows) != n:
        failures.append(f"line count: expected {n} lines, got {len(rows)}")
        return ValidationReport(False, failures)
    for j, row in enumerate(rows):
        if len(row) != q + 1:
            failures.append(f"line size: line {j} has {len(row)} points, expected {q + 1}")
            return ValidationReport(False, failures)
        if any(not 0 <= v < n for v in row):
            failures.append(f"point index: line {j} has an index outside [0, {n})")
            return ValidationReport(False, failures)
        if any(row[i] >= row[i + 1] for i in range(q)):
            failures.append(f"ascending: line {j} is not strictly ascending")
            return ValidationReport(False, failures)
    arr = np.asarray(rows, dtype=np.int32)
    degrees = np.bincount(arr.ravel(), minlength=n)
    if np.any(degrees != q + 1):
        bad = int(np.flatnonzero(degrees != q + 1)[0])
        failures.append(f"point degree: point {bad} lies on {int(degrees[bad])} lines, "
                        f"expected {q + 1}")
        return ValidationReport(False, failures)
    point_lines = ProjectivePlane._invert(arr, n, q)
    for p in range(n):
        counts = np.bincount(arr[point_lines[p]].ravel(), minlength=n)
        counts[p] = 1
        if np.any(counts != 1):
            other = int(np.flatnonzero(counts != 1)[0])
            word = "no common line" if counts[other] == 0 else "more than one common line"
            failures.append(f"unique meet: points {p} and {other} have {word}")
            return ValidationReport(False, failures)
    return ValidationReport(True, failures)


def skew_lines(plane: ProjectivePlane, points: Iterable[int]) -> list[int]:
    """All lines containing no point of the given set, ascending."""
    mask = np.zeros(plane.n, dtype=bool)
    idx = list(points)
    if idx:
        mask[idx] = True
    hits = mask[plane.line_points].sum(axis=1)
    return np.flatnonzero(hits == 0).tolist()


# ---------------------------------------------------------------------------
# file formats
# ---------------------------------------------------------------------------

def save_plane(plane: ProjectivePlane, destination) -> None:
    """Write the plane file: header, order, then one ascending row per line."""
    out = [PLANE_HEADER, f"q={plane.q}"]
    out.extend(" ".join(str(v) for v in row) for row in plane.line_points.tolist())
    Path(destination).write_text("\n".join(out) + "\n")


def load_plane(source) -> ProjectivePlane:
    """Read and fully validate a plane file; raises ValueError on any defect."""
    text = Path(source).read_text()
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    else:
        raise ValueError("plane file must end with a newline")
    if len(lines) < 2:
        raise ValueError("plane file is missing its header")
    if lines[0] != PLANE_HEADER:
        raise ValueError(f"bad header: expected {PLANE_HEADER!r}, got {lines[0]!r}")
    if not lines[1].startswith("q="):
        raise ValueError("second line must be q=<order>")
    try:
        q = int(lines[1][2:])
    except ValueError:
        raise ValueError(f"bad order line {lines[1]!r}") from None
    if q < 2:
        raise ValueError(f"order must be >= 2, got {q}")
    n = q * q + q + 1
    data = lines[2:]
    if len(data) != n:
        raise ValueError(f"line count: expected {n} data rows, got {len(data)}")
    rows = []
    for j, row_text in enumerate(data):
        if row_text != row_text.strip():
            raise ValueError(f"line {j}: leading or trailing whitespace")
        try:
            rows.append([int(tok) for tok in row_text.split(" ")])
        except ValueError:
            raise ValueError(f"line {j}: non-integer token") from None
    report = validate_axioms(rows, q)
    if not report.ok:
        raise ValueError("axiom failure: " + report.failures[0])
    return ProjectivePlane(q, np.asarray(rows, dtype=np.int32),
                           origin="loaded-file", validate=False)


def save_point_set(points: Iterable[int], destination) -> None:
    """Write a point-set file: one ascending index per line."""
    out = "\n".join(str(v) for v in sorted(points))
    Path(destination).write_text(out + "\n" if out else "")


def load_point_set(source) -> set[int]:
    """Read a point-set file: ascending indices, ``#`` comments allowed."""
    values = []
    for ln, raw in enumerate(Path(source).read_text().split("\n"), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        try:
            v = int(body)
        except ValueError:
            raise ValueError(f"line {ln}: expected a point index, got {body!r}") from None
        if values and v <= values[-1]:
            raise ValueError(f"line {ln}: indices must be strictly ascending")
        values.append(v)
    return set(values)
