import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nmusort import fixtures, io
from nmusort.analyzer import unroll
from nmusort.poset import (
    CylinderSpec,
    GridworkError,
    Poset,
    PosetError,
    build_cylinder_convex,
    build_explicit,
    build_grid,
    build_grid_convex,
    pair_count_off_lines,
    validate,
)

from conftest import CYL6, CYL7, SKEW_CELLS


def chains_by_id(p, chains):
    return sorted([p.ids[i] for i in ch] for ch in chains)


class TestGrid:
    def test_singleton(self):
        p = build_grid(1, 1)
        assert len(p) == 1
        assert len(p.rows) == len(p.columns) == 1
        assert p.transverse

    def test_shape_3x4(self):
        p = build_grid(3, 4)
        assert len(p) == 12
        assert sorted(len(r) for r in p.rows) == [4, 4, 4]
        assert sorted(len(c) for c in p.columns) == [3, 3, 3, 3]
        assert validate(p).ok

    def test_diamond_incomparable_pairs(self):
        p = build_grid(2, 2)
        ordered = [
            (x, y) for x, y in itertools.permutations(p.ids, 2)
            if not p.leq(x, y) and not p.leq(y, x)
        ]
        assert len(ordered) == 2
        assert {frozenset(pair) for pair in ordered} == {frozenset({"1,2", "2,1"})}

    def test_top_left_is_minimum(self):
        p = build_grid(3, 4)
        assert all(p.leq("1,1", x) for x in p.ids)
        assert all(p.leq(x, "3,4") for x in p.ids)
        assert p.row_of("2,3") == ("2,1", "2,2", "2,3", "2,4")
        assert p.column_of("2,3") == ("1,3", "2,3", "3,3")

    @pytest.mark.parametrize("r,c", [(0, 3), (2, 0), (-1, 1)])
    def test_rejects_bad_dimensions(self, r, c):
        with pytest.raises(PosetError):
            build_grid(r, c)

    @pytest.mark.parametrize("r,c", [(1, 1), (2, 2), (2, 3), (3, 3), (3, 5), (4, 2)])
    def test_off_line_pair_count(self, r, c):
        assert pair_count_off_lines(build_grid(r, c)) == r * (r - 1) // 2 * c * (c - 1) // 2 * 2

    def test_covers_are_unit_steps(self):
        p = build_grid(3, 3)
        for x, y in p.covers():
            (a, b), (c, d) = (tuple(map(int, v.split(","))) for v in (x, y))
            assert (c - a) + (d - b) == 1


@pytest.mark.parametrize("make", [
    lambda: build_grid(2, 3),
    lambda: build_grid(3, 3),
    lambda: build_grid_convex(SKEW_CELLS),
    lambda: build_cylinder_convex(*CYL6),
    lambda: build_cylinder_convex(*CYL7),
    lambda: fixtures.nontransverse_poset(),
])
def test_leq_is_a_partial_order(make):
    p = make()
    ids = p.ids
    for x in ids:
        assert p.leq(x, x)
    for x, y in itertools.product(ids, repeat=2):
        if x != y and p.leq(x, y):
            assert not p.leq(y, x)
    for x, y, z in itertools.product(ids, repeat=3):
        if p.leq(x, y) and p.leq(y, z):
            assert p.leq(x, z)


class TestGridConvex:
    def test_skew_shape(self, skew):
        assert len(skew) == 6
        assert skew.transverse
        assert chains_by_id(skew, skew.rows) == [["1,2", "1,3"], ["2,1", "2,2", "2,3"], ["3,1"]]

    def test_rejects_nonconvex(self):
        with pytest.raises(GridworkError) as err:
            build_grid_convex([(1, 1), (2, 2)])
        assert "convexity" in {v.kind for v in err.value.violations}


class TestCylinder:
    def test_spec_bounds(self):
        for k, n in [(0, 3), (3, 3), (4, 2)]:
            with pytest.raises(PosetError):
                CylinderSpec(k, n)

    @settings(max_examples=200)
    @given(st.integers(1, 5), st.integers(1, 5), st.integers(-20, 20), st.integers(-20, 20),
           st.integers(-5, 5))
    def test_canonical_is_constant_on_classes(self, k, extra, a, b, t):
        spec = CylinderSpec(k, k + extra)
        x = (a, b)
        c = spec.canonical(x)
        assert 0 <= c[0] < k
        assert spec.canonical(c) == c
        assert spec.canonical(spec.shift(x, t)) == c

    @settings(max_examples=200)
    @given(st.integers(1, 4), st.integers(1, 4), st.tuples(st.integers(-6, 6), st.integers(-6, 6)),
           st.tuples(st.integers(-6, 6), st.integers(-6, 6)))
    def test_leq_matches_bounded_shift_search(self, k, extra, x, y):
        spec = CylinderSpec(k, k + extra)
        brute = any(x[0] <= spec.shift(y, t)[0] and x[1] <= spec.shift(y, t)[1]
                    for t in range(-40, 41))
        assert spec.leq(x, y) == brute

    def test_chain_case(self):
        p = build_cylinder_convex(CylinderSpec(1, 3), [(0, 0), (0, 1)])
        assert len(p) == 2
        assert p.lt("0,0", "0,1")
        assert len(p.rows) == 1 or len(p.columns) == 1

    def test_nonconvex_chain_rejected(self):
        spec = CylinderSpec(2, 5)
        build_cylinder_convex(spec, [(0, 0), (0, 1), (0, 2)])
        with pytest.raises(GridworkError) as err:
            build_cylinder_convex(spec, [(0, 0), (0, 2)])
        assert "convexity" in {v.kind for v in err.value.violations}

    def test_members_are_canonicalized(self):
        spec, members = CYL6
        shifted = [spec.shift(x, t) for x, t in zip(members, [0, 1, -2, 3, 0, -1])]
        assert build_cylinder_convex(spec, shifted).ids == build_cylinder_convex(spec, members).ids

    def test_wrapped_chain_is_one_column(self, cyl6):
        # column through (1,0) continues across the identification to (0,3)
        assert ["1,0", "0,3"] in chains_by_id(cyl6, cyl6.columns)
        assert cyl6.lt("1,0", "0,3")
        assert cyl6.transverse

    @pytest.mark.parametrize("which", [CYL6, CYL7])
    def test_unrolled_covers_project_to_covers(self, which):
        p = build_cylinder_convex(*which)
        u = unroll(p, 5)
        cyl_covers = p.covers()
        for x, y in u.poset.covers():
            assert (u.transfer[x], u.transfer[y]) in cyl_covers
        # and every cylinder cover is seen from the central copy
        seen = {(u.transfer[x], u.transfer[y]) for x, y in u.poset.covers()
                if x in u.center or y in u.center}
        assert seen == cyl_covers


class TestExplicit:
    def test_nontransverse_fixture(self):
        p = fixtures.nontransverse_poset()
        assert not p.transverse
        assert validate(p).kinds() == {"transversality"}
        assert p.lt("b", "t") and not p.leq("l", "r1")

    def test_diamond_reencoded(self):
        p = build_explicit(
            ["bottom", "left", "right", "top"],
            [["bottom", "left"], ["bottom", "right"], ["left", "top"], ["right", "top"]],
            rows=[["bottom", "left"], ["right", "top"]],
            columns=[["bottom", "right"], ["left", "top"]])
        assert p.transverse
        assert validate(p).ok

    def test_missing_element_in_rows(self):
        with pytest.raises(GridworkError) as err:
            build_explicit(["a", "b", "c"], [["a", "b"], ["b", "c"]],
                           rows=[["a", "b"]], columns=[["a"], ["b"], ["c"]])
        assert "coverage" in {v.kind for v in err.value.violations}

    def test_cycle_rejected(self):
        with pytest.raises(PosetError, match="cycle"):
            build_explicit(["a", "b"], [["a", "b"], ["b", "a"]], [["a", "b"]], [["a"], ["b"]])

    def test_unsaturated_chain(self):
        with pytest.raises(GridworkError) as err:
            build_explicit(["a", "b", "c"], [["a", "b"], ["b", "c"]],
                           rows=[["a", "c"], ["b"]], columns=[["a", "b"], ["c"]])
        kinds = {v.kind for v in err.value.violations}
        assert "saturation" in kinds and "cover-missing" in kinds

    def test_overlapping_rows(self):
        with pytest.raises(GridworkError) as err:
            build_explicit(["a", "b"], [["a", "b"]], rows=[["a", "b"], ["b"]],
                           columns=[["a"], ["b"]])
        assert "disjointness" in {v.kind for v in err.value.violations}

    def test_implied_edges_are_reduced(self):
        p = build_explicit(["a", "b", "c"], [["a", "b"], ["b", "c"], ["a", "c"]],
                           rows=[["a", "b", "c"]], columns=[["a"], ["b"], ["c"]])
        assert p.covers() == {("a", "b"), ("b", "c")}
        assert p.lt("a", "c")

    def test_cover_outside_gridwork(self):
        with pytest.raises(GridworkError) as err:
            build_explicit(["a", "b"], [["a", "b"]], rows=[["a"], ["b"]], columns=[["a"], ["b"]])
        assert {v.kind for v in err.value.violations} == {"cover-missing"}


def test_validate_flags_row_skipping_a_cover():
    grid = build_grid(1, 3)
    broken = Poset(grid.ids, grid.above, rows=[[0, 2], [1]], columns=[[0], [1], [2]],
                   backing="explicit")
    kinds = validate(broken).kinds()
    assert "saturation" in kinds


def test_every_cover_in_a_row_or_column():
    for p in (build_grid(3, 3), fixtures.nontransverse_poset(), build_cylinder_convex(*CYL7)):
        row_steps = {s for ch in p.rows for s in zip(ch, ch[1:])}
        col_steps = {s for ch in p.columns for s in zip(ch, ch[1:])}
        for cover in p.cover_pairs:
            assert cover in row_steps or cover in col_steps
        if p.transverse:
            assert not row_steps & col_steps


@pytest.mark.parametrize("data", [
    {"kind": "grid", "r": 3, "c": 4},
    {"kind": "grid-convex", "cells": [list(x) for x in SKEW_CELLS]},
    {"kind": "cylinder", "k": 2, "n": 5, "members": [list(x) for x in CYL6[1]]},
    fixtures.NONTRANSVERSE,
])
def test_json_round_trip(data, tmp_path):
    p = io.poset_from_json(data)
    dumped = io.poset_to_json(p)
    path = tmp_path / "p.json"
    path.write_text(json.dumps(dumped))
    q = io.load_poset(path)
    assert io.poset_to_json(q) == dumped
    assert q.ids == p.ids and q.rows == p.rows and q.columns == p.columns
    assert q.above == p.above


def test_json_errors():
    with pytest.raises(PosetError):
        io.poset_from_json({"kind": "torus"})
    with pytest.raises(PosetError):
        io.poset_from_json({"kind": "grid", "r": 2})
