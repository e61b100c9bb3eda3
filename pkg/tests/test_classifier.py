"""Checks for the pencil classifier on hand-worked search cells."""

from __future__ import annotations

from collections import Counter

import pytest

from isopencil.classifier import (
    _branch_solutions,
    _canonical_solution,
    _stabilizer,
    classify,
    classify_cell,
    fit_families,
)
from isopencil.covers import genus, make_cover
from isopencil.errors import CapabilityError, InvalidInputError
from isopencil.groups import make_group
from isopencil.sandwich import invariants, make_sandwich


def rows_for(factors, genus_f, a, b, pg=(3, 8)):
    return fit_families(classify_cell(factors, genus_f, a, b, pg))


def forms5(row):
    keys = ("g_D", "K2", "t_z", "chi", "euler_e")
    return tuple((row.forms[k].slope, row.forms[k].intercept) for k in keys)


def mult_multiset(cover):
    return tuple(sorted(m for _, m in cover.branch))


def test_rejects_bad_inputs():
    with pytest.raises(InvalidInputError):
        classify_cell([2, 2], 2, 0, 0, (3,))
    with pytest.raises(InvalidInputError):
        classify_cell([2, 2], 2, 0, 0, (5, 3))
    with pytest.raises(InvalidInputError):
        classify_cell([2, 2], 2, 0, 0, (1, 4))
    with pytest.raises(InvalidInputError):
        classify_cell([2, 2], 2, 0, 0, ("3", 8))
    with pytest.raises(InvalidInputError):
        classify_cell([2, 2], 6, 0, 0, (3, 8))
    with pytest.raises(InvalidInputError):
        classify_cell([2, 2], 2, -1, 0, (3, 8))
    with pytest.raises(InvalidInputError):
        classify_cell([2, 2], 2, 0, True, (3, 8))
    with pytest.raises(InvalidInputError):
        classify(7)


def test_unreachable_cells_are_empty():
    # A positive-genus pair on both quotients, or b >= 2, spreads the canonical
    # system over several characters, and a > g(F) has no quotient map at all.
    assert classify_cell([2, 2], 2, 1, 1, (3, 5)) == []
    assert classify_cell([2, 2], 2, 0, 2, (3, 5)) == []
    assert classify_cell([2, 2], 2, 3, 0, (3, 5)) == []
    # Small cyclic cells are bounded: degree budgets cap every multiplicity.
    assert classify_cell([3], 2, 0, 0, (3, 8)) == []


def test_escaping_element_is_reported():
    group = make_group([2, 2])
    with pytest.raises(CapabilityError):
        _branch_solutions(group, [((1, 0), 1)])


def test_genus_two_base_zero_families():
    rows = rows_for([2, 2], 2, 0, 0)
    assert len(rows) == 3
    assert all(r.kind == "family" for r in rows)
    assert all(r.chi0 == (0, 1) for r in rows)
    assert all((r.pg_lo, r.pg_hi) == (3, 8) for r in rows)
    assert all(len(r.members) == 6 for r in rows)
    assert all((r.forms["p_g"].slope, r.forms["p_g"].intercept) == (1, 0) for r in rows)
    assert all((r.forms["q"].slope, r.forms["q"].intercept) == (0, 0) for r in rows)
    assert [forms5(r) for r in rows] == [
        ((2, 1), (4, 0), (8, 16), (1, 1), (8, 12)),
        ((2, 0), (4, -2), (8, 20), (1, 1), (8, 14)),
        ((2, -1), (4, -4), (8, 24), (1, 1), (8, 16)),
    ]
    assert [mult_multiset(r.members[0].cover_d) for r in rows] == [
        (2, 8),
        (1, 1, 7),
        (2, 6),
    ]


def test_genus_two_base_one_family():
    rows = rows_for([2, 2], 2, 0, 1)
    assert len(rows) == 1
    row = rows[0]
    assert row.kind == "family"
    assert (row.forms["q"].slope, row.forms["q"].intercept) == (0, 1)
    assert forms5(row) == ((2, 1), (4, 0), (8, 0), (1, 0), (8, 0))
    first = row.members[0]
    assert mult_multiset(first.cover_d) == (6,)
    assert first.cover_d.base_genus == 1
    assert len(first.cover_d.twist) == 2
    assert first.genus_d == 7
    assert first.report.q == 1


def test_genus_two_free_quotient_family():
    rows = rows_for([2], 2, 1, 0)
    assert len(rows) == 1
    row = rows[0]
    assert (row.forms["q"].slope, row.forms["q"].intercept) == (0, 1)
    assert forms5(row) == ((1, 0), (4, -4), (4, 4), (1, 0), (8, 4))
    first = row.members[0]
    assert mult_multiset(first.cover_d) == (8,)
    assert first.genus_d == 3


def test_genus_three_elliptic_quotient_families():
    rows = rows_for([2, 2], 3, 1, 0)
    assert len(rows) == 3
    assert all(r.kind == "family" for r in rows)
    assert all((r.forms["q"].slope, r.forms["q"].intercept) == (0, 1) for r in rows)
    assert [forms5(r) for r in rows] == [
        ((2, 1), (8, 0), (0, 0), (1, 0), (4, 0)),
        ((2, 0), (8, -4), (0, 8), (1, 0), (4, 4)),
        ((2, -1), (8, -8), (0, 16), (1, 0), (4, 8)),
    ]


def test_genus_three_base_one_families():
    for factors, g_d_form in (([2, 2], (2, 1)), ([2, 2, 2], (4, 1))):
        rows = rows_for(factors, 3, 0, 1)
        assert len(rows) == 1
        row = rows[0]
        assert (row.forms["q"].slope, row.forms["q"].intercept) == (0, 1)
        assert forms5(row) == (g_d_form, (8, 0), (0, 0), (1, 0), (4, 0))
        assert mult_multiset(row.members[0].cover_d) == (6,)


def test_genus_three_double_quotient_family():
    rows = rows_for([2], 3, 2, 0)
    assert len(rows) == 1
    row = rows[0]
    assert row.members[0].cover_f.branch == ()
    assert (row.forms["q"].slope, row.forms["q"].intercept) == (0, 2)
    assert forms5(row) == ((1, 0), (8, -8), (0, 0), (1, -1), (4, -4))


def test_genus_three_large_cyclic_base_one_family():
    rows = rows_for([2, 8], 3, 0, 1)
    assert len(rows) == 1
    row = rows[0]
    assert (row.forms["q"].slope, row.forms["q"].intercept) == (0, 1)
    assert forms5(row) == ((8, 1), (8, 0), (0, 0), (1, 0), (4, 0))
    first = row.members[0]
    assert mult_multiset(first.cover_d) == (6,)
    assert first.genus_d == 25


def test_genus_three_klein_base_zero_families():
    rows = rows_for([2, 2], 3, 0, 0)
    assert len(rows) == 3
    assert [forms5(r) for r in rows] == [
        ((2, 1), (8, 0), (0, 16), (1, 1), (4, 12)),
        ((2, 0), (8, -4), (0, 24), (1, 1), (4, 16)),
        ((2, -1), (8, -8), (0, 32), (1, 1), (4, 20)),
    ]
    assert [mult_multiset(r.members[0].cover_d) for r in rows] == [
        (2, 8),
        (1, 1, 7),
        (2, 6),
    ]


def test_genus_three_rank_three_cell():
    rows = rows_for([2, 2, 2], 3, 0, 0)
    assert len(rows) == 12
    assert all(r.kind == "family" for r in rows)
    assert len({r.members[0].cover_f for r in rows}) == 1
    counts = Counter(forms5(r) for r in rows)
    assert counts == {
        ((4, 5), (8, 8), (0, 0), (1, 1), (4, 4)): 1,
        ((4, 3), (8, 4), (0, 16), (1, 1), (4, 8)): 2,
        ((4, 1), (8, 0), (0, 32), (1, 1), (4, 12)): 4,
        ((4, -1), (8, -4), (0, 48), (1, 1), (4, 16)): 3,
        ((4, -3), (8, -8), (0, 64), (1, 1), (4, 20)): 2,
    }
    top = [r for r in rows if forms5(r)[0] == (4, 5)][0]
    first = top.members[0]
    assert first.p_g == 3
    assert first.genus_d == 17
    assert first.report.chi == 4
    assert first.report.euler_e == 16
    assert first.report.K2 == 32
    assert first.report.t_z == 0


def bounded_orders(row):
    # Multiplicities of capped elements stay fixed along a family while the
    # growing element's count changes, and element orders survive relabeling.
    group = row.members[0].cover_f.group
    first = dict(row.members[0].cover_d.branch)
    last = dict(row.members[-1].cover_d.branch)
    orders = []
    for e, m in last.items():
        if first.get(e) == m:
            orders.extend([group.element_order(e)] * m)
    return tuple(sorted(orders))


def test_genus_three_mixed_cyclic_cell():
    rows = rows_for([2, 8], 3, 0, 0)
    assert len(rows) == 22
    assert all(r.kind == "family" for r in rows)
    assert len({r.members[0].cover_f for r in rows}) == 1
    assert all(r.forms["g_D"].slope == 8 for r in rows)
    assert all((r.forms["chi"].slope, r.forms["chi"].intercept) == (1, 1) for r in rows)
    intercepts = sorted(r.forms["g_D"].intercept for r in rows)
    assert intercepts == [
        -5, -5, -3, -3, -1, -1, -1, -1, 1, 1, 1,
        3, 3, 3, 5, 5, 5, 5, 7, 9, 9, 13,
    ]
    by_shape = {}
    for r in rows:
        by_shape.setdefault(bounded_orders(r), []).append(r.forms["g_D"].intercept)
    assert {k: sorted(v) for k, v in by_shape.items()} == {
        (8, 8): [-5, -1, -1, 3],
        (4, 8, 8): [-3, 1, 1, 5, 5, 9],
        (2, 8, 8): [-5, -1, -1, 3, 3, 7],
        (8, 8, 8, 8): [-3, 1, 5, 5, 9, 13],
    }


def test_classify_merges_cells_and_is_deterministic():
    rows1 = classify(3, groups=[[2, 2]], pg_range=(3, 5), workers=1)
    rows2 = classify(3, groups=[[2, 2]], pg_range=(3, 5), workers=2)
    rows3 = classify(3, groups=[[2, 2]], pg_range=(3, 5), workers=1)
    assert rows1 == rows2
    assert rows1 == rows3
    assert [(r.quotient_genus_a, r.quotient_genus_b) for r in rows1] == [
        (0, 0), (0, 0), (0, 0), (0, 1), (1, 0), (1, 0), (1, 0),
    ]


def test_short_ranges_fall_back_to_sporadic_rows():
    rows = rows_for([2, 2], 2, 0, 0, (3, 4))
    assert len(rows) == 6
    assert all(r.kind == "sporadic" for r in rows)
    assert all(r.pg_lo == r.pg_hi for r in rows)
    got = {(r.forms["p_g"].intercept, r.forms["K2"].intercept) for r in rows}
    assert got == {(3, 12), (3, 10), (3, 8), (4, 16), (4, 14), (4, 12)}


def test_search_is_complete_within_a_box():
    # Scan every branch vector with multiplicities up to 12 against the same
    # first curve and keep the sandwiches whose canonical image is a pencil;
    # the targeted search must find exactly the same set.
    sols = classify_cell([2, 2], 2, 0, 0, (3, 3))
    assert len(sols) == 3
    f_curves = {s.cover_f for s in sols}
    assert len(f_curves) == 1
    cover_f = f_curves.pop()
    group = make_group([2, 2])
    stab = _stabilizer(cover_f)
    expected = {(s.chi0, s.cover_d.branch) for s in sols}
    found = set()
    elems = sorted(e for e in group.elements() if e != group.identity)
    for d1 in range(13):
        for d2 in range(13):
            for d3 in range(13):
                branch = {e: d for e, d in zip(elems, (d1, d2, d3)) if d}
                if not branch:
                    continue
                try:
                    cover_d = make_cover(group, 0, branch)
                except InvalidInputError:
                    continue
                if genus(cover_d) < 2:
                    continue
                report = invariants(make_sandwich(cover_f, cover_d))
                if report.p_g != 3 or report.canonical_character is None:
                    continue
                found.add(
                    _canonical_solution(
                        stab, report.canonical_character, dict(cover_d.branch)
                    )
                )
    assert found == expected
