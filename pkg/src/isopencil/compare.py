"""Field-wise matching of computed rows against the embedded reference tables."""

from __future__ import annotations

from dataclasses import dataclass

from .atlas import atlas_table, canonical_profile
from .classifier import FamilyRow
from .errors import InvalidInputError
from .groups import make_group
from .linear import LinearForm
from .reference_tables import (
    atlas_reference,
    atlas_table_ids,
    family_reference,
    family_table_ids,
)

__all__ = [
    "Cell",
    "Discrepancy",
    "MatchedRow",
    "MissingRow",
    "ExtraRow",
    "ComparisonReport",
    "AtlasComparison",
    "compare_with_reference",
    "compare_atlas_with_reference",
]

Cell = tuple[tuple[int, ...], int, int, int]

COMPARED_FIELDS = ("p_g", "g_D", "K2", "t_z")


@dataclass(frozen=True)
class Discrepancy:
    """One field where a matched row disagrees with its reference row.

    The reference form is restated in the computed parameter, so equal slopes
    give an integer offset; a None delta marks a shape mismatch.
    """

    table: str
    index: int
    field: str
    reference: LinearForm
    computed: LinearForm
    delta: int | None


@dataclass(frozen=True)
class MatchedRow:
    """A reference row paired with a computed family, exact or not."""

    table: str
    index: int
    cell: Cell
    shift: int
    discrepancies: tuple[Discrepancy, ...]
    shared: bool = False

    @property
    def exact(self) -> bool:
        return not self.discrepancies


@dataclass(frozen=True)
class MissingRow:
    """A reference row inside the searched cells with no computed counterpart."""

    table: str
    index: int
    cell: Cell
    note: str


@dataclass(frozen=True)
class ExtraRow:
    """A computed family in a searched cell that matches no reference row."""

    cell: Cell
    kind: str
    forms: tuple[tuple[str, LinearForm], ...]
    pg_lo: int
    pg_hi: int
    count: int


@dataclass(frozen=True)
class ComparisonReport:
    """Everything one table comparison produced, in reference-row order."""

    table: str
    matched: tuple[MatchedRow, ...]
    missing: tuple[MissingRow, ...]
    extra: tuple[ExtraRow, ...]
    skipped: int = 0

    @property
    def discrepancies(self) -> tuple[Discrepancy, ...]:
        return tuple(d for row in self.matched for d in row.discrepancies)

    @property
    def exact(self) -> bool:
        return not (self.discrepancies or self.missing or self.extra)


@dataclass(frozen=True)
class _Group:
    """Computed rows sharing one cell and one printed set of column forms."""

    cell: Cell
    forms: dict[str, LinearForm]
    kind: str
    pg_lo: int
    pg_hi: int
    count: int


def _row_cell(row: FamilyRow) -> Cell:
    return (row.factors, row.quotient_genus_a, row.quotient_genus_b, row.genus_f)


def _ref_cell(ref) -> Cell:
    return (ref.factors, ref.quotient_genus_a, ref.quotient_genus_b, ref.genus_f)


def _form_groups(rows: list[FamilyRow]) -> list[_Group]:
    buckets: dict[tuple, _Group] = {}
    for row in rows:
        key = (_row_cell(row), row.kind, tuple(sorted(row.forms.items())))
        prior = buckets.get(key)
        if prior is None:
            buckets[key] = _Group(
                _row_cell(row), dict(row.forms), row.kind, row.pg_lo, row.pg_hi, 1
            )
        else:
            buckets[key] = _Group(
                prior.cell,
                prior.forms,
                prior.kind,
                min(prior.pg_lo, row.pg_lo),
                max(prior.pg_hi, row.pg_hi),
                prior.count + 1,
            )
    return [buckets[key] for key in sorted(buckets)]


def _anchor(group: _Group, ref) -> int | None:
    """Parameter offset aligning the reference g(D) column with the computed one."""
    ref_gd = ref.forms.get("g_D")
    eng_gd = group.forms.get("g_D")
    if ref_gd is None or eng_gd is None:
        return None
    if ref_gd.slope != eng_gd.slope:
        return None
    if ref_gd.slope == 0:
        return 0 if ref_gd.intercept == eng_gd.intercept else None
    gap = eng_gd.intercept - ref_gd.intercept
    if gap % ref_gd.slope:
        return None
    return gap // ref_gd.slope


def _field_records(table: str, ref, group: _Group, shift: int) -> tuple[Discrepancy, ...]:
    records = []
    for name in COMPARED_FIELDS:
        if name not in ref.forms or name not in group.forms:
            continue
        expected = ref.forms[name].shift(shift)
        got = group.forms[name]
        if got == expected:
            continue
        delta = got.intercept - expected.intercept if got.slope == expected.slope else None
        records.append(Discrepancy(table, ref.index, name, expected, got, delta))
    return tuple(records)


def _mismatch_weight(records: tuple[Discrepancy, ...]) -> tuple[int, int]:
    shape = sum(1 for d in records if d.delta is None)
    offset = sum(abs(d.delta) for d in records if d.delta is not None)
    return (shape, len(records) * 1000 + offset)


def _group_sort_key(group: _Group):
    return (group.cell, sorted(group.forms.items()))


def compare_with_reference(
    rows: list[FamilyRow], table_id: str, *, cells: set[Cell] | None = None
) -> ComparisonReport:
    """Match computed family rows against one reference table, field by field.

    Exact agreements stay silent; every divergence surfaces as a discrepancy,
    missing-row, or extra-row record. Reference rows outside the searched cells
    are skipped, not reported missing; by default the searched cells are read
    off the rows themselves, and callers that searched more ground than they
    found pass the full cell set explicitly.
    """
    if table_id not in family_table_ids():
        known = ", ".join(family_table_ids())
        raise InvalidInputError(f"unknown family table {table_id!r}; known ids: {known}")
    reference = family_reference(table_id)
    if cells is None:
        cells = {_row_cell(row) for row in rows}
    in_scope = [ref for ref in reference if _ref_cell(ref) in cells]
    skipped = len(reference) - len(in_scope)

    groups = _form_groups(rows)
    families = [g for g in groups if g.kind == "family"]
    consumed: set[int] = set()
    outcome: dict[int, MatchedRow] = {}

    def candidates(ref, pool):
        found = []
        for pos in pool:
            group = families[pos]
            if group.cell != _ref_cell(ref):
                continue
            shift = _anchor(group, ref)
            if shift is None:
                continue
            found.append((pos, shift, _field_records(table_id, ref, group, shift)))
        return found

    # Pass 1 takes only perfect matches, pass 2 settles the remaining rows on
    # the closest available family, pass 3 lets a reference row repeat an
    # already-taken family verbatim rather than report a spurious miss.
    remaining = list(range(len(families)))
    for exact_only in (True, False):
        for ref in in_scope:
            if ref.index in outcome:
                continue
            found = candidates(ref, remaining)
            if exact_only:
                found = [c for c in found if not c[2]]
            if not found:
                continue
            pos, shift, records = min(
                found,
                key=lambda c: (_mismatch_weight(c[2]), _group_sort_key(families[c[0]])),
            )
            outcome[ref.index] = MatchedRow(table_id, ref.index, _ref_cell(ref), shift, records)
            remaining.remove(pos)
            consumed.add(pos)
    for ref in in_scope:
        if ref.index in outcome:
            continue
        found = [c for c in candidates(ref, sorted(consumed)) if not c[2]]
        if not found:
            continue
        pos, shift, records = min(
            found,
            key=lambda c: (_mismatch_weight(c[2]), _group_sort_key(families[c[0]])),
        )
        outcome[ref.index] = MatchedRow(
            table_id, ref.index, _ref_cell(ref), shift, records, shared=True
        )

    matched = tuple(outcome[ref.index] for ref in in_scope if ref.index in outcome)
    missing = tuple(
        MissingRow(table_id, ref.index, _ref_cell(ref), _miss_note(ref, families))
        for ref in in_scope
        if ref.index not in outcome
    )
    extra = tuple(
        ExtraRow(g.cell, g.kind, tuple(sorted(g.forms.items())), g.pg_lo, g.pg_hi, g.count)
        for i, g in enumerate(families)
        if i not in consumed
    ) + tuple(
        ExtraRow(g.cell, g.kind, tuple(sorted(g.forms.items())), g.pg_lo, g.pg_hi, g.count)
        for g in groups
        if g.kind != "family"
    )
    return ComparisonReport(table_id, matched, missing, tuple(extra), skipped)


def _miss_note(ref, families: list[_Group]) -> str:
    gd = ref.forms.get("g_D")
    same_cell = [g for g in families if g.cell == _ref_cell(ref)]
    if not same_cell:
        return "no computed family in this cell"
    if gd is not None:
        slopes = sorted({g.forms["g_D"].slope for g in same_cell})
        if gd.slope not in slopes:
            return f"no computed family grows g(D) at rate {gd.slope}"
        residues = sorted(
            {g.forms["g_D"].intercept % gd.slope for g in same_cell if g.forms["g_D"].slope == gd.slope}
        )
        want = gd.intercept % gd.slope
        if want not in residues:
            others = ", ".join(str(r) for r in residues)
            return (
                f"g(D) intercept sits at {want} mod {gd.slope}; "
                f"computed families only reach {others}"
            )
    return "no computed family aligns with this row's g(D) column"


@dataclass(frozen=True)
class AtlasComparison:
    """Action-table comparison: matched and missing reference rows, extras kept."""

    table: str
    genus: int
    matched: tuple[int, ...]
    missing: tuple[int, ...]
    extra_count: int

    @property
    def exact(self) -> bool:
        return not self.missing


def compare_atlas_with_reference(table_id: str, *, workers: int | None = None) -> AtlasComparison:
    """Check one action table against the full enumeration for its genus."""
    if table_id not in atlas_table_ids():
        known = ", ".join(atlas_table_ids())
        raise InvalidInputError(f"unknown atlas table {table_id!r}; known ids: {known}")
    genus, reference = atlas_reference(table_id)
    rows = atlas_table(genus, workers=workers)
    have = {(row.quotient_genus, row.group.factors, row.profile) for row in rows}
    matched = []
    missing = []
    for pos, ref in enumerate(reference, start=1):
        key = (
            ref.quotient_genus,
            ref.factors,
            canonical_profile(make_group(ref.factors), ref.profile),
        )
        (matched if key in have else missing).append(pos)
    extra = sum(1 for row in rows if not row.in_reference)
    return AtlasComparison(table_id, genus, tuple(matched), tuple(missing), extra)
