"""Maximal subset slopes and semistability verdicts for monomial families.

For a family of monomials generating a primary ideal, the maximal slope of
the syzygy sheaf equals the maximum over subfamilies J with |J| >= 2 of

    (deg gcd(J) - sum of degrees over J) / (|J| - 1),

so (semi)stability is decided by comparing that maximum against the slope of
the full family.  Two engines compute the maximum:

* ``max_slope_brute_force`` walks all 2^n - n - 1 admissible subsets and is
  the reference oracle (bounded by a configurable ceiling, default 20);
* ``max_slope`` scans the meet-closure of the family instead.  For a closure
  element g and a subset size k, the value

      (deg g - sum of the k smallest degrees among multiples of g) / (k - 1)

  dominates every subset with gcd divisible by g and is itself attained by an
  actual subset, so the maximum over these candidates equals the maximum over
  all subsets.  The meet-closure is far smaller than 2^n in practice.

Witness tie-breaking is identical in both engines: among maximizing subsets,
the smallest size wins, then the lexicographically smallest index tuple.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .core import (
    Monomial,
    MonomialFamily,
    PreconditionError,
    StabilityVerdict,
    SubsetWitness,
    VerdictKind,
    is_primary,
)

DEFAULT_ORACLE_CEILING = 20

Vec = tuple[int, ...]


@dataclass(frozen=True)
class MaxSlopeResult:
    """Maximal slope over all subfamilies and over proper subfamilies.

    ``max_proper_slope`` and ``proper_witness`` are None for two-member
    families, which have no proper subfamilies of size >= 2.
    """

    max_slope: Fraction
    witness: SubsetWitness
    max_proper_slope: Optional[Fraction]
    proper_witness: Optional[SubsetWitness]


def subset_slope(family: MonomialFamily, indices: Iterable[int], twist: int = 0) -> Fraction:
    """Slope of the twisted syzygy subsheaf of the indexed subfamily.

    The sheaf has rank r = |J| - 1 and degree r*m + deg gcd(J) - sum of the
    member degrees, where m is the twist.
    """
    return SubsetWitness.for_subset(family, indices, twist).slope


def family_slope(family: MonomialFamily, twist: int = 0) -> Fraction:
    """Slope of the twisted syzygy sheaf of the whole family."""
    return subset_slope(family, range(len(family)), twist)


def _vmeet(a: Vec, b: Vec) -> Vec:
    return tuple(x if x < y else y for x, y in zip(a, b))


def _divides(a: Vec, b: Vec) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _meet_closure(vectors: Sequence[Vec]) -> list[Vec]:
    """All gcds of subfamilies: the fixpoint of pairwise componentwise minima."""
    closure = set(vectors)
    frontier = list(closure)
    while frontier:
        fresh = []
        snapshot = list(closure)
        for g in frontier:
            for h in snapshot:
                m = _vmeet(g, h)
                if m not in closure:
                    closure.add(m)
                    fresh.append(m)
        frontier = fresh
    return sorted(closure)


@dataclass(frozen=True)
class _Extrema:
    max_slope: Fraction
    max_indices: tuple[int, ...]
    proper_slope: Optional[Fraction]
    proper_indices: Optional[tuple[int, ...]]


def _brute_extrema(vectors: Sequence[Vec], degrees: Sequence[int]) -> _Extrema:
    n = len(vectors)
    best: Optional[tuple[Fraction, tuple[int, ...]]] = None
    proper: Optional[tuple[Fraction, tuple[int, ...]]] = None
    for k in range(2, n + 1):
        for combo in itertools.combinations(range(n), k):
            g = vectors[combo[0]]
            total = 0
            for i in combo:
                g = _vmeet(g, vectors[i])
                total += degrees[i]
            val = Fraction(sum(g) - total, k - 1)
            if best is None or val > best[0]:
                best = (val, combo)
            if k < n and (proper is None or val > proper[0]):
                proper = (val, combo)
    assert best is not None
    if proper is None:
        return _Extrema(best[0], best[1], None, None)
    return _Extrema(best[0], best[1], proper[0], proper[1])


def _candidate_extrema(
    vectors: Sequence[Vec], degrees: Sequence[int]
) -> tuple[Fraction, int, Optional[Fraction], Optional[int]]:
    """Best slope values and the minimal achieving subset sizes.

    Returns (max value, min size achieving it, max proper value, min proper
    size); the proper pair is None when n = 2.
    """
    n = len(vectors)
    best_val: Optional[Fraction] = None
    best_k = 0
    prop_val: Optional[Fraction] = None
    prop_k = 0
    for g in _meet_closure(vectors):
        gdeg = sum(g)
        ds = sorted(degrees[i] for i in range(n) if _divides(g, vectors[i]))
        if len(ds) < 2:
            continue
        prefix = ds[0]
        for k in range(2, len(ds) + 1):
            prefix += ds[k - 1]
            val = Fraction(gdeg - prefix, k - 1)
            if best_val is None or val > best_val or (val == best_val and k < best_k):
                best_val, best_k = val, k
            if k < n and (
                prop_val is None or val > prop_val or (val == prop_val and k < prop_k)
            ):
                prop_val, prop_k = val, k
    assert best_val is not None
    return best_val, best_k, prop_val, (prop_k if prop_val is not None else None)


def _best_fixed_size(
    pmeet: Optional[Vec], items: Sequence[tuple[Vec, int]], q: int
) -> Optional[int]:
    """Max of deg(gcd(pmeet, Q)) - sum of degrees over Q, over |Q| = q subsets.

    ``items`` are (exponent vector, degree) pairs; ``pmeet`` is the gcd of an
    already-fixed prefix (None for an empty prefix).  Returns None when fewer
    than q items exist.  Same candidate argument as in the module docstring,
    restricted to one subset size.
    """
    if q == 0:
        return sum(pmeet) if pmeet is not None else None
    if len(items) < q:
        return None
    us = [e if pmeet is None else _vmeet(pmeet, e) for e, _ in items]
    degs = [d for _, d in items]
    best: Optional[int] = None
    for g in _meet_closure(us):
        sel = sorted(degs[i] for i in range(len(us)) if _divides(g, us[i]))
        if len(sel) < q:
            continue
        val = sum(g) - sum(sel[:q])
        if best is None or val > best:
            best = val
    return best


def _lex_min_subset(
    vectors: Sequence[Vec], degrees: Sequence[int], k: int, target: Fraction
) -> tuple[int, ...]:
    """Lexicographically smallest index set of size k with slope equal to target.

    ``target`` must be the maximal slope over subsets of size k (so feasibility
    of a prefix is equivalent to its best completion reaching the target).
    """
    n = len(vectors)
    if k == n:
        return tuple(range(n))
    chosen: list[int] = []
    pmeet: Optional[Vec] = None
    dsum = 0
    start = 0
    while len(chosen) < k:
        placed = False
        rem_after = k - len(chosen) - 1
        for i in range(start, n - rem_after):
            m2 = vectors[i] if pmeet is None else _vmeet(pmeet, vectors[i])
            s2 = dsum + degrees[i]
            if rem_after == 0:
                ok = Fraction(sum(m2) - s2, k - 1) == target
            else:
                tail = [(vectors[j], degrees[j]) for j in range(i + 1, n)]
                bestv = _best_fixed_size(m2, tail, rem_after)
                ok = bestv is not None and Fraction(bestv - s2, k - 1) == target
            if ok:
                chosen.append(i)
                pmeet, dsum, start = m2, s2, i + 1
                placed = True
                break
        if not placed:
            raise RuntimeError("no witness of the requested size reaches the target slope")
    return tuple(chosen)


def _pruned_extrema(vectors: Sequence[Vec], degrees: Sequence[int]) -> _Extrema:
    best_val, best_k, prop_val, prop_k = _candidate_extrema(vectors, degrees)
    max_idx = _lex_min_subset(vectors, degrees, best_k, best_val)
    if prop_val is None:
        return _Extrema(best_val, max_idx, None, None)
    prop_idx = _lex_min_subset(vectors, degrees, prop_k, prop_val)
    return _Extrema(best_val, max_idx, prop_val, prop_idx)


def _oracle_ceiling(explicit: Optional[int]) -> int:
    if explicit is not None:
        return explicit
    raw = os.environ.get("SYZSTAB_ORACLE_CEILING")
    if raw is None:
        return DEFAULT_ORACLE_CEILING
    try:
        return int(raw)
    except ValueError:
        raise PreconditionError(
            "oracle-ceiling", f"SYZSTAB_ORACLE_CEILING is not an integer: {raw!r}"
        )


def _result_from_extrema(family: MonomialFamily, ext: _Extrema) -> MaxSlopeResult:
    witness = SubsetWitness.for_subset(family, ext.max_indices)
    proper = (
        SubsetWitness.for_subset(family, ext.proper_indices)
        if ext.proper_indices is not None
        else None
    )
    return MaxSlopeResult(
        ext.max_slope, witness, ext.proper_slope, proper
    )


def max_slope_brute_force(
    family: MonomialFamily, ceiling: Optional[int] = None
) -> MaxSlopeResult:
    """Exhaustive maximal slope over all subfamilies of a primary family."""
    if not is_primary(family):
        raise PreconditionError(
            "primary-family", "the exhaustive slope formula needs a primary family"
        )
    limit = _oracle_ceiling(ceiling)
    if len(family) > limit:
        raise PreconditionError(
            "oracle-ceiling",
            f"family of size {len(family)} exceeds the brute-force ceiling {limit}",
        )
    ext = _brute_extrema(family.exponent_vectors(), family.degrees())
    return _result_from_extrema(family, ext)


def max_slope(family: MonomialFamily) -> MaxSlopeResult:
    """Maximal slope via the meet-closure scan; agrees with the oracle."""
    if not is_primary(family):
        raise PreconditionError(
            "primary-family", "the maximal slope formula needs a primary family"
        )
    ext = _pruned_extrema(family.exponent_vectors(), family.degrees())
    return _result_from_extrema(family, ext)


def _reduction_is_primary(family: MonomialFamily) -> bool:
    """Whether dividing out the family gcd leaves a primary family.

    Twisting by the common factor identifies the syzygy sheaf with that of
    the reduced family, so (semi)stability transfers; the subset criteria
    apply verbatim because all subset slopes shift by the same constant.
    """
    vectors = family.exponent_vectors()
    base = vectors[0]
    for v in vectors[1:]:
        base = _vmeet(base, v)
    if sum(base) == 0:
        return False
    reduced = [tuple(x - b for x, b in zip(v, base)) for v in vectors]
    for j in range(family.variables):
        if not any(
            v[j] > 0 and all(x == 0 for jj, x in enumerate(v) if jj != j) for v in reduced
        ):
            return False
    return True


def _classify(family: MonomialFamily, brute: bool) -> StabilityVerdict:
    n = len(family)
    if n == 2:
        return StabilityVerdict(VerdictKind.STABLE, None, ("rank-one",))
    vectors, degrees = family.exponent_vectors(), family.degrees()
    ext = _brute_extrema(vectors, degrees) if brute else _pruned_extrema(vectors, degrees)
    fam = family_slope(family)
    assert ext.proper_slope is not None and ext.proper_indices is not None
    witness = SubsetWitness.for_subset(family, ext.proper_indices)
    primary = is_primary(family)
    if primary or _reduction_is_primary(family):
        notes = ("subset-slope-criterion",)
        if not primary:
            notes = ("common-factor-reduction",) + notes
        if ext.proper_slope > fam:
            return StabilityVerdict(VerdictKind.UNSTABLE, witness, notes)
        if ext.proper_slope == fam:
            return StabilityVerdict(VerdictKind.SEMISTABLE_NOT_STABLE, witness, notes)
        return StabilityVerdict(VerdictKind.STABLE, None, notes)
    if ext.proper_slope > fam:
        return StabilityVerdict(
            VerdictKind.UNSTABLE, witness, ("subset-slope-necessity",)
        )
    return StabilityVerdict(VerdictKind.INCONCLUSIVE, None, ("not-primary",))


def verdict(family: MonomialFamily) -> StabilityVerdict:
    """Semistability verdict for a monomial family.

    Families that are primary (or become primary after dividing out a common
    factor) are fully classified: unstable when some proper subfamily has
    larger slope than the family, stable when all are strictly smaller, and
    semistable-but-not-stable on equality, with the extremal subfamily as
    witness.  Other families are declared Unstable when a subfamily violates
    the necessary slope condition, otherwise Inconclusive.
    """
    return _classify(family, brute=False)


def oracle_verdict(family: MonomialFamily, ceiling: Optional[int] = None) -> StabilityVerdict:
    """Same verdict computed with the exhaustive subset engine."""
    limit = _oracle_ceiling(ceiling)
    if len(family) > limit:
        raise PreconditionError(
            "oracle-ceiling",
            f"family of size {len(family)} exceeds the brute-force ceiling {limit}",
        )
    return _classify(family, brute=True)


def slope_summary(family: MonomialFamily, brute: bool = False) -> MaxSlopeResult:
    """Subset-slope extrema without the primality requirement.

    The subset slope formula describes actual subsheaves for any monomial
    family, so the maximum reported here is always a lower bound for the
    maximal slope, and it is exact whenever the family or its reduction is
    primary.
    """
    vectors, degrees = family.exponent_vectors(), family.degrees()
    ext = _brute_extrema(vectors, degrees) if brute else _pruned_extrema(vectors, degrees)
    return _result_from_extrema(family, ext)


def same_degree_profile(family: MonomialFamily) -> dict[Monomial, int]:
    """Multiplicity counts s_nu for every candidate divisor nu of degree < d.

    Candidates are the gcds of subfamilies; for any other divisor the gcd of
    its multiples gives an equal count at larger or equal degree, so checking
    gcds suffices for the equal-degree criterion.
    """
    degs = family.degrees()
    d = degs[0]
    if any(x != d for x in degs):
        raise PreconditionError(
            "constant-degree", "the equal-degree profile needs all degrees equal"
        )
    vectors = family.exponent_vectors()
    profile: dict[Monomial, int] = {}
    for g in _meet_closure(vectors):
        if sum(g) >= d:
            continue
        profile[Monomial(g)] = sum(1 for v in vectors if _divides(g, v))
    return profile


def same_degree_check(family: MonomialFamily) -> tuple[bool, Optional[Monomial]]:
    """Equal-degree semistability test: (s_nu - 1)/(d - e) <= (n - 1)/d.

    Checks every divisor degree e = |nu| < d via the subfamily-gcd profile and
    returns a violating nu of maximal degree on failure.  For primary families
    of constant degree this is equivalent to the verdict not being Unstable.
    """
    n = len(family)
    d = family.degrees()[0]
    profile = same_degree_profile(family)
    violations = [
        nu
        for nu, s in profile.items()
        if s >= 2 and (s - 1) * d > (n - 1) * (d - nu.degree())
    ]
    if not violations:
        return True, None
    violations.sort(key=lambda nu: (-nu.degree(), nu.exponents))
    return False, violations[0]


def powers_check(degrees: Sequence[int]) -> bool:
    """Semistability of pure-power families X_i^{d_i}: (N-1)*d_N <= d_0+...+d_{N-1}."""
    ds = list(degrees)
    if len(ds) < 2:
        raise PreconditionError("powers-length", "need at least two degrees")
    if any(x < 1 for x in ds):
        raise PreconditionError("powers-positive", "degrees must be positive")
    if ds != sorted(ds):
        raise PreconditionError("powers-sorted", "degrees must be sorted ascending")
    N = len(ds) - 1
    return (N - 1) * ds[-1] <= sum(ds[:-1])


def four_monomial_check(d1: int, d2: int, d3: int, a: Sequence[int] | Monomial) -> bool:
    """Semistability of {X^d1, Y^d2, Z^d3, X^a1*Y^a2*Z^a3} with a_j < d_j.

    Two numerical conditions: (i) 3*max of the four degrees is at most their
    sum; (ii) every two-member subfamily has degree sum minus gcd degree at
    least one third of the total.
    """
    exps = tuple(a.exponents) if isinstance(a, Monomial) else tuple(int(x) for x in a)
    if len(exps) != 3:
        raise PreconditionError("four-monomial-shape", "the mixed monomial needs 3 exponents")
    ds = (d1, d2, d3)
    if any(x < 1 for x in ds):
        raise PreconditionError("four-monomial-degrees", "pure-power degrees must be >= 1")
    if any(e < 0 for e in exps):
        raise PreconditionError("four-monomial-exponents", "exponents must be >= 0")
    if not all(e < dd for e, dd in zip(exps, ds)):
        raise PreconditionError(
            "four-monomial-exponents", "need a_j < d_j for all three variables"
        )
    d4 = sum(exps)
    if d4 < 1:
        raise PreconditionError("four-monomial-exponents", "the mixed monomial must be nonconstant")
    total = d1 + d2 + d3 + d4
    if 3 * max(d1, d2, d3, d4) > total:
        return False
    a1, a2, a3 = exps
    pair_min = min(a1 + a2 + d3, a1 + d2 + a3, d1 + a2 + a3, d1 + d2, d1 + d3, d2 + d3)
    return 3 * pair_min >= total


def degree_vectors(nvars: int, d: int):
    """All exponent vectors of total degree d, in descending lexicographic order."""
    if d < 0:
        return
    if nvars == 1:
        yield (d,)
        return
    for e in range(d, -1, -1):
        for rest in degree_vectors(nvars - 1, d - e):
            yield (e,) + rest


def all_monomials_family(N: int, d: int) -> MonomialFamily:
    """The family of all monomials of degree d in N+1 variables."""
    if N < 1 or d < 1:
        raise PreconditionError("all-monomials-range", "need N >= 1 and d >= 1")
    return MonomialFamily.from_exponents(degree_vectors(N + 1, d), N + 1)
