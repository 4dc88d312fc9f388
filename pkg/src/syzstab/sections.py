"""Exact dimensions of syzygy-section spaces and the low-rank verdicts.

A global section of the twisted syzygy sheaf of f_1, ..., f_n at twist m is a
tuple (a_1, ..., a_n) of forms with deg a_i = m - d_i and sum a_i f_i = 0, so
its dimension is the nullity of the evaluation map

    (+) R_{m - d_i}  ->  R_m,    (a_i) |-> sum a_i f_i,

computed here by fraction-free elimination over the integers.  A section at a
twist where the sheaf degree is already negative spans a destabilizing line
subsheaf; absence of sections below the slope bound certifies semistability
for sheaves of rank 2 and (with a degree hypothesis) rank 3.
"""

from __future__ import annotations

from math import lcm
from typing import Optional, Sequence, Union

from ._matrix import integer_rank
from .core import (
    Monomial,
    MonomialFamily,
    Polynomial,
    PolynomialFamily,
    PreconditionError,
    SectionWitness,
    StabilityVerdict,
    VerdictKind,
    is_primary,
    join,
)
from .monomial_stability import degree_vectors

FamilyLike = Union[MonomialFamily, PolynomialFamily, Sequence[Polynomial]]


def monomial_basis(N: int, m: int) -> list[Monomial]:
    """All monomials of degree m in N+1 variables; empty for m < 0."""
    if N < 0:
        raise PreconditionError("basis-variables", "need N >= 0")
    if m < 0:
        return []
    return [Monomial(v) for v in degree_vectors(N + 1, m)]


def _as_polynomials(family: FamilyLike) -> tuple[list[Polynomial], int]:
    if isinstance(family, MonomialFamily):
        return [Polynomial.from_monomial(m) for m in family.members], family.variables
    if isinstance(family, PolynomialFamily):
        return list(family.members), family.variables
    polys = list(family)
    if not polys:
        raise ValueError("empty family")
    nvars = polys[0].nvars
    for p in polys:
        if p.nvars != nvars:
            raise ValueError("mixed variable counts in family")
    return polys, nvars


def _integer_terms(poly: Polynomial) -> list[tuple[int, tuple[int, ...]]]:
    # Scaling one member by a constant rescales its syzygy component and
    # leaves the kernel dimension unchanged.
    denom = lcm(*(c.denominator for c, _ in poly.terms))
    return [(int(c * denom), m.exponents) for c, m in poly.terms]


def evaluation_matrix(family: FamilyLike, twist: int) -> list[list[int]]:
    """Integer matrix of (a_i) |-> sum a_i f_i at the given twist.

    Rows are indexed by the degree-``twist`` monomials, columns by the basis
    monomials of the component spaces R_{twist - d_i} in member order.  The
    syzygy section dimension is its nullity.
    """
    polys, nvars = _as_polynomials(family)
    if twist < 0:
        return []
    row_index = {v: i for i, v in enumerate(degree_vectors(nvars, twist))}
    columns: list[dict[int, int]] = []
    for poly in polys:
        terms = _integer_terms(poly)
        for b in degree_vectors(nvars, twist - poly.degree):
            col: dict[int, int] = {}
            for coeff, t in terms:
                prod = tuple(x + y for x, y in zip(b, t))
                row = row_index[prod]
                col[row] = col.get(row, 0) + coeff
            columns.append(col)
    rows = [[0] * len(columns) for _ in range(len(row_index))]
    for j, col in enumerate(columns):
        for i, value in col.items():
            rows[i][j] = value
    return rows


def syzygy_section_dim(family: FamilyLike, twist: int) -> int:
    """Dimension of the space of degree-``twist`` syzygies of the family."""
    rows = evaluation_matrix(family, twist)
    if not rows or not rows[0]:
        return 0
    return len(rows[0]) - integer_rank(rows)


def min_section_degree_monomial(family: MonomialFamily) -> int:
    """Smallest twist with a nonzero syzygy section, for monomial families.

    The syzygy module of a monomial ideal is generated by the pairwise
    relations (lcm/f_i) f_i - (lcm/f_j) f_j, so the minimum is the smallest
    pairwise lcm degree.
    """
    members = family.members
    best = None
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            d = join(members[i], members[j]).degree()
            if best is None or d < best:
                best = d
    assert best is not None
    return best


def _reject_common_monomial_factor(polys: list[Polynomial], criterion: str) -> None:
    """The slope-bound formulas assume no common factor; a shared monomial
    factor is detectable exactly (other shared factors are the caller's
    responsibility)."""
    common = None
    for poly in polys:
        own = poly.terms[0][1].exponents
        for _, mono in poly.terms[1:]:
            own = tuple(min(a, b) for a, b in zip(own, mono.exponents))
        common = own if common is None else tuple(min(a, b) for a, b in zip(common, own))
    if common is not None and sum(common) > 0:
        raise PreconditionError(
            criterion,
            "members share the monomial factor with exponents "
            f"{common}; divide it out first",
        )


def _scan_for_section(
    polys: list[Polynomial], exclusive_bound: int
) -> Optional[tuple[int, int]]:
    """First twist in [max(0, min degree), exclusive_bound) with a section.

    Twists below the smallest member degree have empty component spaces, so
    the scan starts there; negative twists are vacuous by homogeneity.
    """
    degs = [p.degree for p in polys]
    start = max(0, min(degs))
    for m in range(start, exclusive_bound):
        dim = syzygy_section_dim(polys, m)
        if dim > 0:
            return m, dim
    return None


def rank2_verdict(f1: Polynomial, f2: Polynomial, f3: Polynomial) -> StabilityVerdict:
    """Verdict for the rank-2 syzygy sheaf of three forms without common factor.

    A section at a twist m with 2m < d1+d2+d3 has positive slope relative to
    the sheaf and certifies Unstable; no section below that bound certifies
    Semistable.  The scan over integer twists covers the bound exactly, so
    the answer is always one of the two.
    """
    polys, nvars = _as_polynomials([f1, f2, f3])
    if nvars < 3:
        raise PreconditionError(
            "rank2-variables", "the rank-2 criterion needs at least 3 variables"
        )
    _reject_common_monomial_factor(polys, "rank2-common-factor")
    total = sum(p.degree for p in polys)
    hit = _scan_for_section(polys, (total + 1) // 2)
    if hit is not None:
        m, dim = hit
        witness = SectionWitness(m, dim, 2 * m - total)
        return StabilityVerdict(VerdictKind.UNSTABLE, witness, ("destabilizing-section",))
    return StabilityVerdict(
        VerdictKind.SEMISTABLE, None, ("no-sections-below-slope-bound",)
    )


def _monomial_backed_family(polys: list[Polynomial], nvars: int) -> Optional[MonomialFamily]:
    if any(len(p.terms) != 1 for p in polys):
        return None
    try:
        return MonomialFamily.from_exponents([p.terms[0][1].exponents for p in polys], nvars)
    except ValueError:
        return None


def rank3_verdict(
    f1: Polynomial, f2: Polynomial, f3: Polynomial, f4: Polynomial
) -> StabilityVerdict:
    """Verdict for the rank-3 syzygy sheaf of four primary forms in 3 variables.

    A section at a twist m with 3m < d1+...+d4 certifies Unstable.  When no
    such section exists and additionally 2*d4 <= d1+d2+d3 (largest degree
    d4), the dual sheaf has no destabilizing cosection either, certifying
    Semistable; without that inequality the scan alone is Inconclusive.

    The Semistable branch needs the members to generate a primary ideal
    (the dual-sequence argument needs an empty common zero locus).  That is
    verified exactly for monomial members; for general polynomials it is the
    caller's responsibility.
    """
    polys, nvars = _as_polynomials([f1, f2, f3, f4])
    if nvars != 3:
        raise PreconditionError(
            "rank3-variables", "the rank-3 criterion is stated for 3 variables"
        )
    _reject_common_monomial_factor(polys, "rank3-common-factor")
    degs = sorted(p.degree for p in polys)
    total = sum(degs)
    hit = _scan_for_section(polys, (total + 2) // 3)
    if hit is not None:
        m, dim = hit
        witness = SectionWitness(m, dim, 3 * m - total)
        return StabilityVerdict(VerdictKind.UNSTABLE, witness, ("destabilizing-section",))
    monomials = _monomial_backed_family(polys, nvars)
    if monomials is not None and not is_primary(monomials):
        return StabilityVerdict(
            VerdictKind.INCONCLUSIVE, None, ("not-primary",)
        )
    if 2 * degs[3] <= degs[0] + degs[1] + degs[2]:
        return StabilityVerdict(
            VerdictKind.SEMISTABLE,
            None,
            ("no-sections-below-slope-bound", "dual-degree-condition"),
        )
    return StabilityVerdict(
        VerdictKind.INCONCLUSIVE, None, ("dual-degree-condition-fails",)
    )
