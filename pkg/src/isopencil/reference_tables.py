"""Published classification tables, embedded as package data."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .errors import InvalidInputError
from .linear import LinearForm

__all__ = [
    "AtlasReferenceRow",
    "FamilyReferenceRow",
    "atlas_reference",
    "atlas_table_ids",
    "family_reference",
    "family_table_ids",
    "table_ids",
]

_DATA: dict | None = None


def _data() -> dict:
    global _DATA
    if _DATA is None:
        text = resources.files("isopencil.data").joinpath("tables.json").read_text()
        _DATA = json.loads(text)
    return _DATA


@dataclass(frozen=True)
class AtlasReferenceRow:
    quotient_genus: int
    factors: tuple[int, ...]
    profile: tuple[tuple[tuple[int, ...], int], ...]
    source: str


@dataclass(frozen=True)
class FamilyReferenceRow:
    table: str
    index: int
    factors: tuple[int, ...]
    quotient_genus_a: int
    quotient_genus_b: int
    genus_f: int
    forms: dict[str, LinearForm]
    source: str


def atlas_table_ids() -> list[str]:
    return sorted(_data()["atlas"])


def family_table_ids() -> list[str]:
    return sorted(_data()["families"])


def table_ids() -> list[str]:
    return atlas_table_ids() + family_table_ids()


def atlas_reference(table_id: str) -> tuple[int, list[AtlasReferenceRow]]:
    """The curve-action table with this id: (fiber genus, rows)."""
    try:
        raw = _data()["atlas"][table_id]
    except KeyError:
        raise InvalidInputError(f"unknown atlas table {table_id!r}") from None
    rows = [
        AtlasReferenceRow(
            quotient_genus=entry["a"],
            factors=tuple(entry["group"]),
            profile=tuple((tuple(chi), dim) for chi, dim in entry["profile"]),
            source=entry["source"],
        )
        for entry in raw["rows"]
    ]
    return raw["genus"], rows


def family_reference(table_id: str) -> list[FamilyReferenceRow]:
    """The surface-family table with this id, columns as linear forms in m."""
    try:
        raw = _data()["families"][table_id]
    except KeyError:
        raise InvalidInputError(f"unknown family table {table_id!r}") from None
    rows = []
    for index, entry in enumerate(raw["rows"], start=1):
        forms = {
            "p_g": LinearForm(*entry["p_g"]),
            "g_D": LinearForm(*entry["g_D"]),
            "K2": LinearForm(*entry["K2"]),
        }
        if "t" in entry:
            forms["t_z"] = LinearForm(*entry["t"])
        rows.append(
            FamilyReferenceRow(
                table=table_id,
                index=index,
                factors=tuple(entry["group"]),
                quotient_genus_a=entry["a"],
                quotient_genus_b=entry["b"],
                genus_f=entry["g_F"],
                forms=forms,
                source=entry["source"],
            )
        )
    return rows
