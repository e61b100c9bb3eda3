"""Search for diagonal quotients whose canonical image is a pencil of curves."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .atlas import _actions_cell
from .covers import CoverData, eigen_profile, genus, make_cover
from .errors import (
    CapabilityError,
    InternalConsistencyError,
    InvalidInputError,
    InvalidMonodromyError,
)
from .groups import Element, FiniteAbelianGroup, make_group
from .linear import LinearForm
from .parallel import parallel_map, resolve_workers
from .sandwich import InvariantReport, invariants, make_sandwich

__all__ = [
    "SurfaceSolution",
    "FamilyRow",
    "classify_cell",
    "fit_families",
    "search_cells",
    "classify",
]

FIBER_GENUS_RANGE = (2, 5)


@dataclass(frozen=True)
class SurfaceSolution:
    """One pencil-bearing surface found at a specific section count."""

    p_g: int
    chi0: Element
    cover_f: CoverData
    cover_d: CoverData
    genus_d: int
    report: InvariantReport


@dataclass(frozen=True)
class FamilyRow:
    """A fitted linear family, or an isolated solution, in one search cell."""

    factors: tuple[int, ...]
    quotient_genus_a: int
    quotient_genus_b: int
    genus_f: int
    chi0: Element
    kind: str
    pg_lo: int
    pg_hi: int
    forms: dict[str, LinearForm]
    members: tuple[SurfaceSolution, ...]


def _validate_pg_range(pg_range) -> tuple[int, int]:
    try:
        lo, hi = pg_range
    except (TypeError, ValueError):
        raise InvalidInputError(f"section range must be a pair, got {pg_range!r}")
    if not all(isinstance(v, int) and not isinstance(v, bool) for v in (lo, hi)):
        raise InvalidInputError(f"section range needs integers, got {pg_range!r}")
    if lo < 2 or hi < lo:
        raise InvalidInputError(f"section range needs 2 <= lo <= hi, got {lo}..{hi}")
    return lo, hi


def _branch_solutions(
    group: FiniteAbelianGroup, requirements: list[tuple[Element, int]]
) -> list[dict[Element, int]]:
    """Branch multiplicity vectors with exact degrees on the given characters.

    Every nonzero element must pair nontrivially with some listed character,
    otherwise its multiplicity is unconstrained and the cell has no finite list.
    """
    scale = group.exponent
    elems = [e for e in group.elements() if e != group.identity]
    budgets = [deg * scale for _, deg in requirements]
    coefs = []
    for e in elems:
        cs = tuple(group.pair_num(chi, e) for chi, _ in requirements)
        if not any(cs):
            raise CapabilityError(
                f"element {e} escapes every degree constraint; the search is unbounded"
            )
        coefs.append(cs)

    out: list[dict[Element, int]] = []

    def rec(i: int, remaining: tuple[int, ...], acc: list[tuple[Element, int]]):
        if i == len(elems):
            if not any(remaining):
                out.append(dict(acc))
            return
        cs = coefs[i]
        cap = min(r // c for c, r in zip(cs, remaining) if c)
        for d in range(cap + 1):
            nxt = tuple(r - d * c for c, r in zip(cs, remaining))
            rec(i + 1, nxt, acc + [(elems[i], d)] if d else acc)

    rec(0, tuple(budgets), [])
    return out


def _complete_twist(group: FiniteAbelianGroup, base_genus: int, elems) -> tuple | None:
    """Lexicographically first twist making the data connected, if one exists."""
    if base_genus == 0:
        return () if group.generates(elems) else None
    pool = group.elements()
    fixed = list(elems)
    for t1 in pool:
        for t2 in pool:
            if group.generates(fixed + [t1, t2]):
                return (t1, t2)
    return None


def _twist_interchangeable(cover: CoverData) -> bool:
    """True when every generating twist over this branch data gives the same cover.

    Base moves act transitively on generating tuples exactly when the quotient
    by the branch subgroup is cyclic, which covers every case handled here.
    """
    group = cover.group
    omega = group.subgroup([e for e, _ in cover.branch])
    index = group.order // len(omega)
    for g in group.elements():
        k = 1
        acc = g
        while acc not in omega:
            acc = group.add(acc, g)
            k += 1
        if k == index:
            return True
    return False


def _stabilizer(cover: CoverData):
    group = cover.group
    loose_twist = not cover.twist or _twist_interchangeable(cover)
    kept = []
    for alpha in group.automorphisms():
        moved = tuple(sorted((alpha.apply(e), m) for e, m in cover.branch))
        if moved != cover.branch:
            continue
        if not loose_twist and tuple(alpha.apply(t) for t in cover.twist) != cover.twist:
            continue
        kept.append(alpha)
    return tuple(kept)


def _canonical_solution(stab, chi0: Element, branch: dict[Element, int]):
    """Smallest cover-symmetry image of the pair (character, branch data).

    Pulling the character back along alpha pairs with pushing the branch
    forward along the inverse, so both sides transform as one solution.
    """
    best = None
    for alpha in stab:
        inverse = {alpha.apply(g): g for g in alpha.group.elements()}
        key = (
            alpha.apply_char(chi0),
            tuple(sorted((inverse[e], m) for e, m in branch.items())),
        )
        if best is None or key < best:
            best = key
    return best


def classify_cell(
    factors, genus_f: int, quotient_genus_a: int, quotient_genus_b: int, pg_range
) -> list[SurfaceSolution]:
    """All pencil solutions in one (group, base genera, fiber genus) cell."""
    group = make_group(factors)
    lo, hi = _validate_pg_range(pg_range)
    if not isinstance(genus_f, int) or not FIBER_GENUS_RANGE[0] <= genus_f <= FIBER_GENUS_RANGE[1]:
        raise InvalidInputError(f"fiber genus must be in 2..5, got {genus_f!r}")
    for name, value in (("a", quotient_genus_a), ("b", quotient_genus_b)):
        if not isinstance(value, int) or isinstance(value, bool) or value < 0:
            raise InvalidInputError(f"quotient genus {name} must be an integer >= 0")
    b = quotient_genus_b
    # With b >= 2 every character keeps sections on the second curve, and with
    # a, b >= 1 the trivial character does; either way no single character can
    # carry the whole canonical space.
    if b >= 2 or (quotient_genus_a >= 1 and b >= 1):
        return []
    if quotient_genus_a > genus_f:
        return []

    identity = group.identity
    solutions = []
    for row in _actions_cell(genus_f, quotient_genus_a, group.factors):
        cover_f = row.witness
        profile_f = eigen_profile(cover_f)
        stab = _stabilizer(cover_f)
        seen = set()
        support = sorted(
            chi for chi, dim in profile_f.items() if dim and chi != identity
        )
        candidates = [chi for chi in support if profile_f[chi] == 1]
        for chi0 in candidates:
            constraints = [
                (group.neg(chi), 1 - b) for chi in support if chi != chi0
            ]
            target = group.neg(chi0)
            for p_g in range(lo, hi + 1):
                requirements = constraints + [(target, p_g + 1 - b)]
                for branch in _branch_solutions(group, requirements):
                    canon = _canonical_solution(stab, chi0, branch)
                    if canon in seen:
                        continue
                    seen.add(canon)
                    chi0_c, branch_c = canon
                    twist = _complete_twist(group, b, [e for e, _ in branch_c])
                    if twist is None:
                        continue
                    try:
                        cover_d = make_cover(group, b, dict(branch_c), twist)
                    except InvalidMonodromyError:
                        continue
                    g_d = genus(cover_d)
                    if g_d < 2:
                        continue
                    report = invariants(make_sandwich(cover_f, cover_d))
                    if report.canonical_character != chi0_c:
                        raise InternalConsistencyError(
                            f"solution for {chi0_c} reports pencil character "
                            f"{report.canonical_character}"
                        )
                    if report.p_g != p_g:
                        raise InternalConsistencyError(
                            f"solution built for p_g={p_g} reports p_g={report.p_g}"
                        )
                    solutions.append(
                        SurfaceSolution(p_g, chi0_c, cover_f, cover_d, g_d, report)
                    )
    return solutions


def _growth_step(group: FiniteAbelianGroup, target: Element, e: Element) -> int:
    coef = group.pair_num(target, e)
    return group.exponent // gcd(group.exponent, coef)


def _bucket_key(group: FiniteAbelianGroup, sol: SurfaceSolution):
    profile_f = eigen_profile(sol.cover_f)
    constraint_chars = [
        group.neg(chi)
        for chi, dim in sorted(profile_f.items())
        if dim and chi not in (group.identity, sol.chi0)
    ]
    target = group.neg(sol.chi0)
    branch = dict(sol.cover_d.branch)
    bounded = []
    residues = []
    for e in group.elements():
        if e == group.identity:
            continue
        if any(group.pair_num(chi, e) for chi in constraint_chars):
            if branch.get(e):
                bounded.append((e, branch[e]))
        else:
            residues.append((e, branch.get(e, 0) % _growth_step(group, target, e)))
    return (
        sol.cover_f.branch,
        sol.cover_f.twist,
        sol.chi0,
        tuple(bounded),
        tuple(residues),
    )


_FITTED_KEYS = ("g_D", "K2", "t_z", "chi", "euler_e")


def _series(sol: SurfaceSolution) -> dict[str, int]:
    return {
        "g_D": sol.genus_d,
        "K2": sol.report.K2,
        "t_z": sol.report.t_z,
        "chi": sol.report.chi,
        "euler_e": sol.report.euler_e,
    }


def fit_families(solutions: list[SurfaceSolution]) -> list[FamilyRow]:
    """Group solutions into linear-in-p_g families, leaving the rest sporadic."""
    buckets: dict[tuple, list[SurfaceSolution]] = {}
    for sol in solutions:
        key = _bucket_key(sol.cover_f.group, sol)
        buckets.setdefault(key, []).append(sol)

    rows = []
    for key in buckets:
        members = sorted(buckets[key], key=lambda s: s.p_g)
        runs: list[list[SurfaceSolution]] = []
        for sol in members:
            run = runs[-1] if runs else None
            if run and sol.p_g == run[-1].p_g + 1:
                if len(run) == 1:
                    run.append(sol)
                    continue
                steps = {
                    k: _series(run[1])[k] - _series(run[0])[k] for k in _FITTED_KEYS
                }
                cur = _series(sol)
                prev = _series(run[-1])
                if all(cur[k] - prev[k] == steps[k] for k in _FITTED_KEYS):
                    run.append(sol)
                    continue
            runs.append([sol])
        for run in runs:
            if len(run) >= 3:
                rows.append(_emit_row(run))
            else:
                rows.extend(_emit_row([sol]) for sol in run)

    rows.sort(
        key=lambda r: (
            r.factors,
            r.quotient_genus_a,
            r.quotient_genus_b,
            r.genus_f,
            (-r.forms["g_D"].slope, -r.forms["g_D"].intercept),
            r.chi0,
            r.pg_lo,
        )
    )
    return rows


def _emit_row(run: list[SurfaceSolution]) -> FamilyRow:
    first = run[0]
    group = first.cover_f.group
    a = first.cover_f.base_genus
    b = first.cover_d.base_genus
    if len(run) >= 3:
        kind = "family"
        forms = {"p_g": LinearForm(1, 0), "q": LinearForm(0, a + b)}
        for key in _FITTED_KEYS:
            slope = _series(run[1])[key] - _series(run[0])[key]
            forms[key] = LinearForm(slope, _series(first)[key] - slope * first.p_g)
    else:
        kind = "sporadic"
        forms = {"p_g": LinearForm(0, first.p_g), "q": LinearForm(0, a + b)}
        for key in _FITTED_KEYS:
            forms[key] = LinearForm(0, _series(first)[key])
    return FamilyRow(
        group.factors,
        a,
        b,
        genus(first.cover_f),
        first.chi0,
        kind,
        first.p_g,
        run[-1].p_g,
        forms,
        tuple(run),
    )


def _cell_rows(args) -> list[FamilyRow]:
    factors, genus_f, a, b, pg_range = args
    return fit_families(classify_cell(factors, genus_f, a, b, pg_range))


def search_cells(
    genus_f: int,
    groups="all",
    quotient_genus_a="any",
    quotient_genus_b="any",
) -> list[tuple[tuple[int, ...], int, int]]:
    """The (factors, a, b) combinations a classify call with these arguments visits."""
    if not isinstance(genus_f, int) or not FIBER_GENUS_RANGE[0] <= genus_f <= FIBER_GENUS_RANGE[1]:
        raise InvalidInputError(f"fiber genus must be in 2..5, got {genus_f!r}")
    if groups == "all":
        from .atlas import abelian_groups_up_to

        factor_list = [g.factors for g in abelian_groups_up_to(4 * genus_f + 4)]
    else:
        factor_list = [make_group(f).factors for f in groups]
    if quotient_genus_a == "any":
        a_list = list(range(genus_f + 1))
    else:
        a_list = [quotient_genus_a]
    if quotient_genus_b == "any":
        b_list = [0, 1]
    else:
        b_list = [quotient_genus_b]
    return [(factors, a, b) for factors in factor_list for a in a_list for b in b_list]


def classify(
    genus_f: int,
    groups="all",
    quotient_genus_a="any",
    quotient_genus_b="any",
    pg_range=(3, 8),
    *,
    workers: int | None = None,
) -> list[FamilyRow]:
    """Fitted families over every requested (group, quotient genera) cell."""
    lo, hi = _validate_pg_range(pg_range)
    triples = search_cells(genus_f, groups, quotient_genus_a, quotient_genus_b)
    cells = [(factors, genus_f, a, b, (lo, hi)) for factors, a, b in triples]
    merged = parallel_map(_cell_rows, cells, resolve_workers(workers))
    rows = [row for cell in merged for row in cell]
    rows.sort(
        key=lambda r: (
            r.factors,
            r.quotient_genus_a,
            r.quotient_genus_b,
            r.genus_f,
            (-r.forms["g_D"].slope, -r.forms["g_D"].intercept),
            r.chi0,
            r.pg_lo,
        )
    )
    return rows
