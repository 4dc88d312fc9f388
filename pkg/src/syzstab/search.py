"""Backtracking search for n monomials of one degree with semistable syzygy bundle.

Candidates are enumerated in descending lexicographic order of exponent
vectors and n-subsets in lexicographic order of index tuples, so outcomes are
deterministic.  Partial families are pruned by a necessity check: for each
gcd nu of an already-chosen subfamily, the subfamily of its multiples has a
slope that can only grow as members are added, while the family slope can
only shrink, so a partial violation rules out every completion.  A completed
family is accepted exactly when the verdict engine certifies it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional

from .core import MonomialFamily, PreconditionError, VerdictKind, is_primary
from .monomial_stability import _divides, _meet_closure, _vmeet, degree_vectors, verdict

DEFAULT_BUDGET = 2_000_000


@dataclass(frozen=True)
class SearchSpec:
    """Parameters of one search: degree-d monomials in N+1 variables, pick n."""

    variables: int
    degree: int
    count: int
    budget: int = DEFAULT_BUDGET
    require: str = "semistable"
    primary_only: bool = False

    def __post_init__(self):
        if self.variables < 2 or self.degree < 1:
            raise PreconditionError("search-range", "need >= 2 variables and degree >= 1")
        if self.require not in ("semistable", "stable"):
            raise PreconditionError("search-require", "require must be semistable or stable")
        available = comb(self.variables - 1 + self.degree, self.variables - 1)
        if not 2 <= self.count <= available:
            raise PreconditionError(
                "search-count",
                f"count must be between 2 and {available} for this degree",
            )


class SearchStatus:
    FOUND = "Found"
    EXHAUSTED = "Exhausted"
    BUDGET_EXCEEDED = "BudgetExceeded"


@dataclass(frozen=True)
class SearchResult:
    status: str
    family: Optional[MonomialFamily]
    nodes: int


class _BudgetExceeded(Exception):
    pass


def _partial_violates(chosen: list[tuple[int, ...]], d: int, n: int) -> bool:
    """Necessity prune: some chosen subfamily already beats the best possible
    family slope of any completion.

    The subfamily of multiples of a gcd nu has slope (e - s*d)/(s - 1), which
    is nondecreasing in s; the final family slope is at most
    (deg gcd(partial) - n*d)/(n - 1) because the overall gcd only shrinks.
    """
    if len(chosen) < 2:
        return False
    closure = _meet_closure(chosen)
    base = chosen[0]
    for v in chosen[1:]:
        base = _vmeet(base, v)
    cap = Fraction(sum(base) - n * d, n - 1)
    for g in closure:
        s = sum(1 for v in chosen if _divides(g, v))
        if s >= 2 and Fraction(sum(g) - s * d, s - 1) > cap:
            return True
    return False


def find_semistable_family(spec: SearchSpec, prune: bool = True) -> SearchResult:
    """First acceptable family in lexicographic order, or Exhausted/BudgetExceeded.

    Acceptable means the verdict is Stable or SemistableNotStable (Stable only
    when ``require`` is "stable"), so every returned family carries a sound
    certificate.  ``prune=False`` disables the necessity prune and is only
    useful to cross-check that pruning skips no acceptable family.
    """
    monos = list(degree_vectors(spec.variables, spec.degree))
    total = len(monos)
    n = spec.count
    accepted = (
        (VerdictKind.STABLE,)
        if spec.require == "stable"
        else (VerdictKind.STABLE, VerdictKind.SEMISTABLE_NOT_STABLE)
    )
    pure_power_idx = {
        i for i, v in enumerate(monos) if sum(1 for e in v if e > 0) == 1
    }
    nodes = 0
    found: Optional[MonomialFamily] = None

    def visit(chosen_idx: list[int], chosen: list[tuple[int, ...]], start: int) -> bool:
        nonlocal nodes, found
        nodes += 1
        if nodes > spec.budget:
            raise _BudgetExceeded
        if len(chosen) == n:
            family = MonomialFamily.from_exponents(chosen, spec.variables)
            if spec.primary_only and not is_primary(family):
                return False
            v = verdict(family)
            if v.kind in accepted:
                found = family
                return True
            return False
        slots = n - len(chosen)
        if spec.primary_only:
            missing = [i for i in pure_power_idx if i not in chosen_idx]
            if any(i < start for i in missing) or len(missing) > slots:
                return False
        for i in range(start, total - slots + 1):
            chosen_idx.append(i)
            chosen.append(monos[i])
            if not (prune and _partial_violates(chosen, spec.degree, n)):
                if visit(chosen_idx, chosen, i + 1):
                    return True
            chosen_idx.pop()
            chosen.pop()
        return False

    try:
        if visit([], [], 0):
            return SearchResult(SearchStatus.FOUND, found, nodes)
        return SearchResult(SearchStatus.EXHAUSTED, None, nodes)
    except _BudgetExceeded:
        return SearchResult(SearchStatus.BUDGET_EXCEEDED, None, nodes)
