"""Matching Hilbert polynomials across two threefolds.

Two ample templates with disjoint parameters have the same Hilbert
polynomial when their cubes and c2-pairings agree.  The c2-pairings of the
built-in templates are constant, so matching reduces to one Diophantine
equation ``lhs(params1) = rhs(params2)``.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .chern import (
    ChernPair,
    HilbertPolynomial,
    hilbert_polynomial,
    is_integer_valued,
    same_hilbert_scheme,
)
from .errors import ArgumentError, ContractViolation, PreconditionError
from .exact import MultiPoly, PolyLike
from .forms import cube, cube_split, pair
from .models import ThreefoldModel, model_x_phi, model_x_t

CITATION = (
    "Equal (H^3, H.c2) gives equal Hilbert polynomials; both threefolds then lie in one "
    "Hilbert scheme, which is connected (Hartshorne), so they are joined by projective flat "
    "deformation. Ampleness of both templates is assumed for parameters beyond an "
    "unquantified constant, not verified."
)


def template_cubes(m1: ThreefoldModel | None = None, m2: ThreefoldModel | None = None):
    """Symbolic ``H1^3`` and the split of ``H2^3`` for the default templates."""
    m1 = m1 or model_x_phi()
    m2 = m2 or model_x_t()
    fixed, moving = m2.template().split()
    return cube(m1.cup, m1.template().expr), cube_split(m2.cup, fixed, moving)


def _reduce_by_content(diff: MultiPoly) -> MultiPoly:
    k = diff.content()
    if k == 0:
        return diff
    reduced = diff.exact_div(k)
    if reduced * k != diff:
        raise ContractViolation("content division was not exact")
    return reduced


def paper_equation() -> MultiPoly:
    """``6xyz - 2ab + 3b + 10``: H_phi^3 minus the unweighted four-piece H_T^3, over its content."""
    h_phi3, split = template_cubes()
    return _reduce_by_content(h_phi3 - split.paper_sum)


def standard_equation() -> MultiPoly:
    """``6xyz - 6ab + 9b + 10``: the same with the binomially weighted cube of H_T."""
    h_phi3, split = template_cubes()
    return _reduce_by_content(h_phi3 - split.standard_sum)


def modular_obstruction(poly: MultiPoly, primes: Sequence[int] = (2, 3, 5, 7)) -> int | None:
    """Smallest prime p in ``primes`` with no root of ``poly`` mod p, if any.

    Such a p proves ``poly = 0`` has no integer solutions at all.
    """
    names = poly.variables
    for p in primes:
        if len(names) and p ** len(names) > 10**6:
            continue
        if not any(
            poly.evaluate(dict(zip(names, point))) % p == 0
            for point in itertools.product(range(p), repeat=len(names))
        ):
            return p
    return None


@dataclass(frozen=True)
class FamilyWitness:
    substitutions: Mapping[str, PolyLike]
    equation: MultiPoly
    free_variable: str = "C"


PAPER_FAMILY = {
    "x": "12*C^2 - 6",
    "y": "2*C",
    "z": "2*C",
    "a": "6*C^2 + 1",
    "b": "24*C^2 - 10",
}


def paper_family() -> FamilyWitness:
    return FamilyWitness(PAPER_FAMILY, paper_equation())


@dataclass(frozen=True)
class FamilyCheck:
    holds: bool
    composed: MultiPoly
    exceeds_bound: Mapping[str, bool] = field(default_factory=dict)


def _exceeds_free_variable(s: MultiPoly, var: str, points: int) -> bool:
    """``s(C) > C`` for every integer ``C >= 1``.

    Sound test: after the shift ``C -> C + 1`` the gap ``s(C) - C`` must have
    non-negative coefficients and a positive constant term; the integer
    points ``1..points`` are checked on top as a sanity cross-check.
    """
    gap = s - MultiPoly.variable(var)
    if set(gap.variables) - {var}:
        return False
    shifted = gap.substitute({var: MultiPoly.variable(var) + 1})
    sound = shifted.coefficient() > 0 and all(c >= 0 for _, c in shifted.items())
    return sound and all(gap.evaluate({var: c}) > 0 for c in range(1, points + 1))


def verify_family(w: FamilyWitness, points: int = 20) -> FamilyCheck:
    """Compose the family into its equation and test for the zero polynomial."""
    subs = {k: MultiPoly.coerce(v) for k, v in w.substitutions.items()}
    missing = [v for v in w.equation.variables if v not in subs]
    if missing:
        raise ArgumentError(f"unbound parameters {missing}")
    composed = w.equation.substitute(subs)
    exceeds = {k: _exceeds_free_variable(s, w.free_variable, points) for k, s in sorted(subs.items())}
    return FamilyCheck(composed.is_zero(), composed, exceeds)


@dataclass(frozen=True)
class MatchProblem:
    """Find integer parameters in ``(lower_bound, box[p]]`` with ``lhs == rhs``.

    ``fixed`` pins parameters to given values before the search.  ``order``
    fixes the tuple order of reported solutions; by default the parameters of
    ``lhs`` followed by those of ``rhs``, each alphabetically.
    """

    lhs: MultiPoly
    rhs: MultiPoly
    lower_bound: int = 0
    box: Mapping[str, int] = field(default_factory=dict)
    fixed: Mapping[str, int] = field(default_factory=dict)
    shared_c2: tuple[int, int] | None = None
    order: tuple[str, ...] | None = None

    def __post_init__(self):
        overlap = set(self.lhs.variables) & set(self.rhs.variables)
        if overlap:
            raise PreconditionError(f"lhs and rhs share parameters {sorted(overlap)}")
        free = [p for p in self.lhs.variables + self.rhs.variables if p not in self.fixed]
        missing = [p for p in free if p not in self.box]
        if missing:
            raise PreconditionError(f"no upper bound for parameters {missing}")
        if self.order is None:
            object.__setattr__(self, "order", tuple(self.lhs.variables + self.rhs.variables))
        elif sorted(self.order) != sorted(self.lhs.variables + self.rhs.variables):
            raise PreconditionError(f"order {self.order} does not list exactly the parameters")

    @classmethod
    def uniform(cls, lhs, rhs, lower_bound: int, upper: int, **kw) -> "MatchProblem":
        lhs, rhs = MultiPoly.coerce(lhs), MultiPoly.coerce(rhs)
        params = lhs.variables + rhs.variables
        fixed = kw.get("fixed", {})
        return cls(lhs, rhs, lower_bound, {p: upper for p in params if p not in fixed}, **kw)

    def side_params(self, side: MultiPoly) -> tuple[str, ...]:
        return tuple(p for p in side.variables if p not in self.fixed)

    def range_of(self, p: str) -> range:
        return range(self.lower_bound + 1, self.box[p] + 1)


@dataclass(frozen=True)
class MatchSolution:
    assignment: Mapping[str, int]
    common_value: int

    def values(self, order: Sequence[str]) -> tuple[int, ...]:
        return tuple(self.assignment[p] for p in order)


def _side_table(poly: MultiPoly, problem: MatchProblem, params: tuple[str, ...], first=None):
    """``value -> [assignments]`` for one side over its sub-box."""
    ranges = [problem.range_of(p) for p in params]
    if first is not None:
        ranges[0] = first
    base = dict(problem.fixed)
    table: dict[int, list[dict[str, int]]] = {}
    for point in itertools.product(*ranges):
        env = {**base, **dict(zip(params, point))}
        table.setdefault(poly.evaluate(env), []).append(dict(zip(params, point)))
    return table


def enumerate_matches(problem: MatchProblem, workers: int = 1, chunks: int | None = None) -> list[MatchSolution]:
    """All solutions in the box, sorted lexicographically in ``problem.order``.

    The two sides share no parameters, so the right side is tabulated once
    by value and the left side's box is scanned in chunks (split on its
    first parameter) against that table.  The final sort makes the output
    independent of ``workers`` and ``chunks``.
    """
    if problem.shared_c2 is not None and problem.shared_c2[0] != problem.shared_c2[1]:
        return []
    lparams = problem.side_params(problem.lhs)
    rparams = problem.side_params(problem.rhs)
    if any(len(problem.range_of(p)) == 0 for p in lparams + rparams):
        return []
    rtable = _side_table(problem.rhs, problem, rparams)

    if lparams:
        first = problem.range_of(lparams[0])
        n = max(1, chunks or workers)
        step = -(-len(first) // n)
        parts = [first[i : i + step] for i in range(0, len(first), step)]
    else:
        parts = [None]

    def scan(part):
        found = []
        for value, lefts in _side_table(problem.lhs, problem, lparams, part).items():
            for left in lefts:
                for right in rtable.get(value, ()):
                    found.append(MatchSolution({**problem.fixed, **left, **right}, value))
        return found

    if workers > 1 and len(parts) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(scan, parts))
    else:
        results = [scan(p) for p in parts]
    solutions = [s for r in results for s in r]
    solutions.sort(key=lambda s: s.values(problem.order))
    return solutions


def paper_match_problem(
    lower_bound: int = 0,
    upper: int | Mapping[str, int] = 16,
    equation: str = "paper",
    fixed: Mapping[str, int] | None = None,
) -> MatchProblem:
    """H_phi^3 = H_T^3 with the chosen reading of H_T^3 (``paper`` or ``standard``)."""
    m1, m2 = model_x_phi(), model_x_t()
    h_phi3, split = template_cubes(m1, m2)
    if equation == "paper":
        rhs = split.paper_sum
    elif equation == "standard":
        rhs = split.standard_sum
    else:
        raise ArgumentError(f"unknown equation variant {equation!r}")
    c2 = (
        pair(m1.c2, m1.template().expr).constant_value,
        pair(m2.c2, m2.template().expr).constant_value,
    )
    fixed = dict(fixed or {})
    params = h_phi3.variables + rhs.variables
    box = upper if isinstance(upper, Mapping) else {p: upper for p in params if p not in fixed}
    return MatchProblem(h_phi3, rhs, lower_bound, dict(box), fixed, shared_c2=c2)


EXPANSIONS = ("paper", "standard")


def template_chern_pair(
    model: ThreefoldModel,
    assignment: Mapping[str, int] | None = None,
    template: str | None = None,
    expansion: str = "paper",
) -> ChernPair:
    """``(H^3, H.c2)`` of a template, with H^3 read through its fixed/parametric split.

    ``expansion="paper"`` sums the four pieces P^3, P^2.L, P.L^2, L^3 without
    binomial weights; ``"standard"`` is the true cube.  The two agree when
    the cross terms vanish (as for H_phi) and differ for H_T.
    """
    if expansion not in EXPANSIONS:
        raise ArgumentError(f"unknown expansion {expansion!r}")
    t = model.template(template)
    fixed, moving = t.split()
    split = cube_split(model.cup, fixed, moving)
    d3 = split.paper_sum if expansion == "paper" else split.standard_sum
    dc2 = pair(model.c2, t.expr)
    if assignment is not None:
        missing = [p for p in t.params if p not in assignment]
        if missing:
            raise ContractViolation(f"assignment leaves {missing} of {t.name} unbound")
        env = {p: assignment[p] for p in t.params}
        return ChernPair(d3.evaluate(env), dc2.evaluate(env))
    return ChernPair(d3, dc2)


@dataclass(frozen=True)
class ConnectivityCertificate:
    pairs: tuple[ChernPair, ChernPair]
    hilbert: HilbertPolynomial
    integer_valued: bool
    solution: MatchSolution | None
    expansion: str = "paper"
    note: str = CITATION


def certify_pairs(
    p1: ChernPair, p2: ChernPair, solution: MatchSolution | None = None, expansion: str = "paper"
) -> ConnectivityCertificate:
    if not same_hilbert_scheme(p1, p2):
        raise ContractViolation(f"Chern pairs differ: {p1} vs {p2}")
    hp = hilbert_polynomial(p1)
    ok = is_integer_valued(hp)
    if not ok:
        raise ContractViolation(f"Hilbert polynomial {hp} is not integer-valued")
    return ConnectivityCertificate((p1, p2), hp, ok, solution, expansion)


def build_certificate(
    s: MatchSolution,
    m1: ThreefoldModel,
    m2: ThreefoldModel,
    template1: str | None = None,
    template2: str | None = None,
    expansion: str = "paper",
) -> ConnectivityCertificate:
    """Certificate that the two templates at ``s`` share a Hilbert polynomial.

    H^3 is read with ``expansion`` (see :func:`template_chern_pair`), so a
    solution of the paper-reading equation certifies under that reading only.
    """
    p1 = template_chern_pair(m1, s.assignment, template1, expansion)
    p2 = template_chern_pair(m2, s.assignment, template2, expansion)
    return certify_pairs(p1, p2, s, expansion)
