"""Atlas of faithful abelian actions on curves of small genus."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache
from itertools import product

from . import covers
from .covers import CoverData, enumerate_covers
from .errors import InvalidInputError
from .groups import Element, FiniteAbelianGroup, make_group
from .parallel import parallel_map, resolve_workers
from .reference_tables import atlas_reference

__all__ = [
    "ATLAS_TABLE_FOR_GENUS",
    "AtlasRow",
    "abelian_groups_up_to",
    "atlas_table",
    "canonical_profile",
    "enumerate_actions",
]

ATLAS_TABLE_FOR_GENUS = {2: "tabelladue", 3: "tabellauno"}

Profile = tuple[tuple[Element, int], ...]


@dataclass(frozen=True)
class AtlasRow:
    genus: int
    quotient_genus: int
    group: FiniteAbelianGroup
    profile: Profile
    witness: CoverData
    in_reference: bool | None = None


def _partitions(n: int):
    """Partitions of n in descending part order."""

    def rec(left: int, top: int):
        if left == 0:
            yield ()
            return
        for part in range(min(left, top), 0, -1):
            for rest in rec(left - part, part):
                yield (part,) + rest

    yield from rec(n, n)


def _factorize(n: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def abelian_groups_up_to(bound: int) -> list[FiniteAbelianGroup]:
    """One representative per isomorphism class of order 2..bound.

    Representatives use invariant factors: each factor divides the next.
    """
    if not isinstance(bound, int) or bound < 1:
        raise InvalidInputError(f"order bound must be an integer >= 1, got {bound!r}")
    found: list[tuple[int, ...]] = []
    for order in range(2, bound + 1):
        primes = _factorize(order)
        for combo in product(*(tuple(_partitions(e)) for _, e in primes)):
            length = max(len(part) for part in combo)
            descending = [
                math.prod(p ** part[j] for (p, _), part in zip(primes, combo) if j < len(part))
                for j in range(length)
            ]
            found.append(tuple(reversed(descending)))
    return [make_group(f) for f in sorted(found, key=lambda f: (math.prod(f), f))]


def canonical_profile(group: FiniteAbelianGroup, profile) -> Profile:
    """Smallest relabeling of a character-dimension table over group symmetry."""
    if isinstance(profile, dict):
        profile = profile.items()
    items = []
    for chi, dim in profile:
        if not isinstance(dim, int) or dim < 0:
            raise InvalidInputError(f"eigenspace dimension must be an integer >= 0, got {dim!r}")
        if dim:
            items.append((group.validate(chi), dim))
    best: Profile | None = None
    for alpha in group.automorphisms():
        form = tuple(sorted((alpha.apply_char(chi), dim) for chi, dim in items))
        if best is None or form < best:
            best = form
    assert best is not None
    return best


@lru_cache(maxsize=None)
def _actions_cell(genus: int, quotient_genus: int, factors: tuple[int, ...]) -> tuple[AtlasRow, ...]:
    group = make_group(factors)
    rows: dict[Profile, AtlasRow] = {}
    for cover in enumerate_covers(group, quotient_genus, genus=genus, up_to_aut=True):
        prof = canonical_profile(group, covers.eigen_profile(cover))
        if prof not in rows:
            rows[prof] = AtlasRow(genus, quotient_genus, group, prof, cover)
    return tuple(rows[key] for key in sorted(rows))


def _actions_cell_star(args: tuple[int, int, tuple[int, ...]]) -> tuple[AtlasRow, ...]:
    return _actions_cell(*args)


def enumerate_actions(genus: int, quotient_genus: int, *, workers: int | None = None) -> list[AtlasRow]:
    """All actions with the given curve genus and quotient genus, one row per class.

    Two actions land in the same row when a group symmetry carries one cover to
    the other; the row keeps the canonical eigenspace profile and one witness.
    """
    if not isinstance(genus, int) or not 2 <= genus <= 5:
        raise InvalidInputError(f"curve genus must be an integer in 2..5, got {genus!r}")
    if not isinstance(quotient_genus, int) or not 0 <= quotient_genus <= genus:
        raise InvalidInputError(
            f"quotient genus must be an integer in 0..{genus}, got {quotient_genus!r}"
        )
    cells = [(genus, quotient_genus, g.factors) for g in abelian_groups_up_to(4 * genus + 4)]
    merged = parallel_map(_actions_cell_star, cells, resolve_workers(workers))
    rows = [row for cell in merged for row in cell]
    rows.sort(key=lambda r: (r.group.order, r.group.factors, r.profile))
    return rows


def atlas_table(genus: int, *, workers: int | None = None) -> list[AtlasRow]:
    """Full atlas for one curve genus, rows flagged against the published table."""
    if genus not in ATLAS_TABLE_FOR_GENUS:
        supported = ", ".join(str(g) for g in sorted(ATLAS_TABLE_FOR_GENUS))
        raise InvalidInputError(f"no atlas table for genus {genus!r}; supported: {supported}")
    _, reference = atlas_reference(ATLAS_TABLE_FOR_GENUS[genus])
    listed = {
        (ref.quotient_genus, ref.factors, canonical_profile(make_group(ref.factors), ref.profile))
        for ref in reference
    }
    rows = []
    for a in range(genus, -1, -1):
        for row in enumerate_actions(genus, a, workers=workers):
            key = (row.quotient_genus, row.group.factors, row.profile)
            rows.append(replace(row, in_reference=key in listed))
    return rows
