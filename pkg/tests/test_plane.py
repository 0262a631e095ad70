import numpy as np
import pytest

from satset.gf import field_for_order
from satset.plane import (ProjectivePlane, build_pg2, canonical_plane,
                          load_plane, load_point_set, point_triple,
                          save_plane, save_point_set, skew_lines,
                          triple_index, validate_axioms)

# the Fano plane under the canonical indexing, derived by hand from the
# dual-triple encoding (line j's dual is the triple of point j)
FANO_LINES = [
    [4, 5, 6],   # dual (1,0,0)
    [1, 3, 4],   # dual (1,0,1)
    [2, 3, 6],   # dual (1,1,0)
    [1, 2, 5],   # dual (1,1,1)
    [0, 1, 6],   # dual (0,1,0)
    [0, 3, 5],   # dual (0,1,1)
    [0, 2, 4],   # dual (0,0,1)
]


def test_fano_incidence_frozen():
    pl = canonical_plane(2)
    assert [pl.points_on_line(j) for j in range(7)] == FANO_LINES


def test_triple_round_trip():
    for q in (2, 3, 4, 9):
        n = q * q + q + 1
        seen = set()
        for idx in range(n):
            t = point_triple(q, idx)
            assert triple_index(q, t) == idx
            seen.add(t)
        assert len(seen) == n


def test_counts_and_duality():
    for q in (2, 3, 4, 5, 9):
        pl = canonical_plane(q)
        assert pl.n == q * q + q + 1
        assert pl.line_points.shape == (pl.n, q + 1)
        assert pl.point_lines.shape == (pl.n, q + 1)
        # cross-index consistency
        for p in range(0, pl.n, max(1, pl.n // 20)):
            for j in pl.lines_through(p):
                assert p in pl.points_on_line(j)


def test_pairs_on_unique_line_exhaustive_small():
    for q in (2, 3, 4, 5, 7):
        pl = canonical_plane(q)
        for p in range(pl.n):
            counts = np.bincount(
                pl.line_points[pl.point_lines[p]].ravel(), minlength=pl.n)
            assert counts[p] == q + 1
            counts[p] = 1
            assert np.all(counts == 1)


def test_line_through_and_meet_fano():
    pl = canonical_plane(2)
    assert pl.points_on_line(pl.line_through(0, 4)) == [0, 2, 4]
    assert pl.points_on_line(pl.line_through(3, 0)) == [0, 3, 5]
    assert pl.meet(6, 4) == 0
    with pytest.raises(ValueError):
        pl.line_through(3, 3)
    with pytest.raises(ValueError):
        pl.meet(1, 1)


def test_line_through_symmetry_and_meet_duality():
    pl = canonical_plane(5)
    rng = np.random.default_rng(5)
    for _ in range(200):
        p, r = rng.choice(pl.n, size=2, replace=False)
        j = pl.line_through(int(p), int(r))
        assert j == pl.line_through(int(r), int(p))
        row = pl.points_on_line(j)
        assert int(p) in row and int(r) in row
    for _ in range(200):
        l1, l2 = rng.choice(pl.n, size=2, replace=False)
        m = pl.meet(int(l1), int(l2))
        assert m == pl.meet(int(l2), int(l1))
        assert m in pl.points_on_line(int(l1))
        assert m in pl.points_on_line(int(l2))


def test_meet_of_pencil_lines_is_the_point():
    pl = canonical_plane(3)
    for p in range(pl.n):
        lines = pl.lines_through(p)
        assert pl.meet(lines[0], lines[1]) == p


def test_skew_lines():
    pl = canonical_plane(2)
    assert skew_lines(pl, set()) == list(range(7))
    assert skew_lines(pl, {0, 4, 6}) == [3]
    # oracle: direct scan
    for q in (3, 4, 5):
        plq = canonical_plane(q)
        rng = np.random.default_rng(q)
        pts = set(int(v) for v in rng.choice(plq.n, size=q, replace=False))
        expect = [j for j in range(plq.n)
                  if not pts.intersection(plq.points_on_line(j))]
        assert skew_lines(plq, pts) == expect
        # each of the i points kills at most q+1 lines
        assert len(expect) >= plq.n - len(pts) * (q + 1)


def test_skew_count_lower_bound_for_small_sets():
    # for any i-set with i <= q there are at least q(q+1-i) skew lines
    for q in (3, 5, 7):
        pl = canonical_plane(q)
        rng = np.random.default_rng(q + 100)
        for i in range(1, q + 1):
            pts = set(int(v) for v in rng.choice(pl.n, size=i, replace=False))
            assert len(skew_lines(pl, pts)) >= q * (q + 1 - i)


def test_validate_axioms_pass_and_failures():
    assert validate_axioms(canonical_plane(4)).ok
    rows = [list(r) for r in canonical_plane(2).line_points.tolist()]
    short = [r[:] for r in rows]
    short[3] = short[3][:2]
    rep = validate_axioms(short, 2)
    assert not rep.ok and "line size" in rep.failures[0]
    twice = [r[:] for r in rows]
    twice[0] = [0, 2, 4]       # duplicate of line 6: two lines sharing 2+ points
    rep = validate_axioms(twice, 2)
    assert not rep.ok and ("unique meet" in rep.failures[0]
                           or "point degree" in rep.failures[0])
    wrong_count = rows[:-1]
    rep = validate_axioms(wrong_count, 2)
    assert not rep.ok and "line count" in rep.failures[0]


def test_plane_file_round_trip(tmp_path):
    for q in (2, 9):
        pl = canonical_plane(q)
        path = tmp_path / f"plane{q}.txt"
        save_plane(pl, path)
        loaded = load_plane(path)
        assert loaded == pl
        assert loaded.origin == "loaded-file"
        # byte-exact round trip of the file itself
        save_plane(loaded, tmp_path / "again.txt")
        assert (tmp_path / "again.txt").read_bytes() == path.read_bytes()


def test_plane_file_format_shape(tmp_path):
    pl = canonical_plane(2)
    path = tmp_path / "fano.txt"
    save_plane(pl, path)
    lines = path.read_text().split("\n")
    assert lines[0] == "PLANE v1"
    assert lines[1] == "q=2"
    assert len(lines) == 2 + 7 + 1 and lines[-1] == ""
    assert lines[2] == "4 5 6"


def test_load_plane_rejects_malformed(tmp_path):
    pl = canonical_plane(3)
    good = tmp_path / "p.txt"
    save_plane(pl, good)
    text = good.read_text()

    bad = tmp_path / "bad.txt"
    bad.write_text(text.replace("PLANE v1", "PLANE v2"))
    with pytest.raises(ValueError, match="header"):
        load_plane(bad)

    # q=3 header but a missing row
    bad.write_text("\n".join(text.split("\n")[:-2]) + "\n")
    with pytest.raises(ValueError, match="line count"):
        load_plane(bad)

    # out-of-range index (kept ascending so the range check is what fires)
    rows = [r.split(" ") for r in text.split("\n")[2:-1]]
    rows[0][-1] = "999"
    oor = "PLANE v1\nq=3\n" + "\n".join(" ".join(r) for r in rows) + "\n"
    bad.write_text(oor)
    with pytest.raises(ValueError, match="point index"):
        load_plane(bad)

    # break an incidence: swap one point to make a pair uncovered
    rows = [r.split(" ") for r in text.split("\n")[2:-1]]
    rows[0][0] = rows[1][0]
    mangle = "PLANE v1\nq=3\n" + "\n".join(" ".join(r) for r in rows) + "\n"
    bad.write_text(mangle)
    with pytest.raises(ValueError):
        load_plane(bad)


def test_loaded_plane_answers_queries(tmp_path):
    pl = canonical_plane(4)
    path = tmp_path / "p4.txt"
    save_plane(pl, path)
    loaded = load_plane(path)
    assert loaded.field is None
    rng = np.random.default_rng(17)
    for _ in range(50):
        p, r = (int(v) for v in rng.choice(loaded.n, size=2, replace=False))
        assert loaded.line_through(p, r) == pl.line_through(p, r)


def test_point_set_files(tmp_path):
    path = tmp_path / "pts.txt"
    save_point_set({5, 1, 3}, path)
    assert path.read_text() == "1\n3\n5\n"
    assert load_point_set(path) == {1, 3, 5}
    path.write_text("# witness\n1\n3  # inline note\n\n5\n")
    assert load_point_set(path) == {1, 3, 5}
    path.write_text("3\n1\n")
    with pytest.raises(ValueError, match="ascending"):
        load_point_set(path)
    path.write_text("3\nx\n")
    with pytest.raises(ValueError):
        load_point_set(path)


def test_build_pg2_needs_tables():
    f = field_for_order(2)
    assert build_pg2(f).q == 2
    class FakeField:
        q = 2
        _tables = None
    with pytest.raises(ValueError):
        build_pg2(FakeField())


def test_plane_equality_ignores_origin(tmp_path):
    pl = canonical_plane(2)
    path = tmp_path / "f.txt"
    save_plane(pl, path)
    assert load_plane(path) == pl
    assert pl != canonical_plane(3)


def test_constructor_validates_raw_rows():
    rows = canonical_plane(2).line_points.copy()
    rows[0, 0] = 1  # line 0 becomes {1,5,6}: pair (4,?) coverage breaks
    with pytest.raises(ValueError):
        ProjectivePlane(2, rows, origin="test", validate=True)
