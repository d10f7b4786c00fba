"""Reproduction suite: every computable intermediate of the connection argument.

Each check compares a computed value with its expected one and reports
PASS, FAIL, or INFO (informational, never fails the run).  Models can be
injected so the suite can be pointed at corrupted or reloaded data.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

import numpy as np

from .chern import (
    ChernPair,
    chern_pair_of_surface,
    hilbert_polynomial,
    is_integer_valued,
    rr_cubic_divisibility,
)
from .errors import Cy3Error
from .exact import MultiPoly, det_int, fermat_reduce, smith_normal_form
from .report import dumps
from .forms import Basis, DivisorExpr, TrilinearForm, cube, cube_split, cubic_divisibility_fermat, pair
from .matcher import (
    MatchProblem,
    MatchSolution,
    build_certificate,
    enumerate_matches,
    paper_family,
    paper_match_problem,
    template_chern_pair,
    verify_family,
)
from .modelfile import dumps_model, loads_model
from .models import (
    ABELIAN,
    F1,
    P2,
    RATIONAL_ELLIPTIC,
    RATIONAL_ELLIPTIC_3PT,
    ExceptionalCombo,
    ThreefoldModel,
    distinguish,
    generator_c2_table,
    model_x_phi,
    model_x_t,
    ns_e2_gram,
)

PASS, FAIL, INFO = "PASS", "FAIL", "INFO"


@dataclass(frozen=True)
class Check:
    criterion: int
    name: str
    expected: str
    computed: str
    status: str
    citation: str = ""

    def line(self) -> str:
        return f"[{self.criterion:>2}] {self.name} = {self.computed} {self.status} (expected {self.expected})"


def _check(criterion, name, expected, computed, citation="", info=False) -> Check:
    expected, computed = str(expected), str(computed)
    status = INFO if info else (PASS if expected == computed else FAIL)
    return Check(criterion, name, expected, computed, status, citation)


# -- independent oracles -----------------------------------------------------


def dense_cube(f: TrilinearForm, d: DivisorExpr) -> MultiPoly:
    """D^3 by the full n^3 sum over label triples (no symmetry shortcuts)."""
    total = MultiPoly()
    labels = f.basis.labels
    for l1, l2, l3 in itertools.product(labels, repeat=3):
        v = f(l1, l2, l3)
        if v:
            total = total + d.coeff(l1) * d.coeff(l2) * d.coeff(l3) * v
    return total


def cube_vanishes_everywhere(f: TrilinearForm, prime: int) -> bool:
    """Exhaustive: D^3 = 0 mod prime at every point of F_prime^n."""
    labels = f.basis.labels
    triples = list(itertools.product(range(len(labels)), repeat=3))
    values = [f(labels[i], labels[j], labels[k]) for i, j, k in triples]
    for point in itertools.product(range(prime), repeat=len(labels)):
        s = sum(v * point[i] * point[j] * point[k] for v, (i, j, k) in zip(values, triples) if v)
        if s % prime:
            return False
    return True


def grid_oracle(upper: int, lower: int = 0) -> list[tuple[int, ...]]:
    """(x, y, z, a, b) in (lower, upper]^5 with 54xyz - 243 = 18ab - 27b - 333, by full grid."""
    r = np.arange(lower + 1, upper + 1, dtype=np.int64)
    x, y, z, a, b = np.ix_(r, r, r, r, r)
    hits = np.argwhere(54 * x * y * z - 243 == 18 * a * b - 27 * b - 333)
    return [tuple(int(r[i]) for i in row) for row in hits]


def random_cubic_form(rng: random.Random, n: int, density: float = 0.4) -> TrilinearForm:
    basis = Basis(tuple(f"l{i}" for i in range(n)))
    entries = {}
    for t in itertools.combinations_with_replacement(basis.labels, 3):
        if rng.random() < density:
            entries[t] = rng.randint(-12, 12)
    return TrilinearForm(basis, entries)


def random_integer_valued_pair(rng: random.Random, span: int = 10**4) -> ChernPair:
    """Pair with integer chi(1) = p1 and chi(2) = p2; every such pair is integer-valued."""
    p1, p2 = rng.randint(-span, span), rng.randint(-span, span)
    d3 = p2 - 2 * p1
    return ChernPair(d3, 12 * p1 - 2 * d3)


# -- criteria ----------------------------------------------------------------


def _adjunction(models) -> list[Check]:
    cases = [
        (P2, (9, -6)),
        (F1, (8, -4)),
        (ABELIAN, (0, 0)),
        (RATIONAL_ELLIPTIC, (0, 12)),
        (RATIONAL_ELLIPTIC_3PT, (-3, 18)),
    ]
    return [
        _check(1, f"(D^3, D.c2) of {s.name}", ChernPair(*want), chern_pair_of_surface(s), "D.c2 = -K^2 + e")
        for s, want in cases
    ]


def _gram(models) -> list[Check]:
    g = ns_e2_gram()
    d = det_int(g)
    snf = smith_normal_form(g)
    transforms_ok = snf.left @ g @ snf.right == snf.diagonal
    return [
        _check(2, "det(NS(E^2) Gram matrix)", -3, d, "discriminant of this matrix is 3"),
        _check(2, "discriminant |det|", 3, abs(d), "discriminant of this matrix is 3"),
        _check(2, "SNF invariant factors", (1, 1, 1, 3), snf.factors),
        _check(2, "SNF transforms U*G*V = D", True, transforms_ok),
    ]


def _x_phi_template(models) -> list[Check]:
    m = models["x_phi"]
    h = m.template("H_phi").expr
    return [
        _check(3, "H_phi^3", "54*x*y*z - 243", cube(m.cup, h), "H_phi^3 = 54 xyz - 243"),
        _check(3, "H_phi.c2", 162, pair(m.c2, h), "H_phi . c_2(X_phi) = 162"),
    ]


def _x_t_template(models) -> list[Check]:
    m = models["x_t"]
    t = m.template("H_T")
    fixed, moving = t.split()
    s = cube_split(m.cup, fixed, moving)
    return [
        _check(4, "Q1 = P^3", -333, s.p3, "Q_1 = -333"),
        _check(4, "Q2 = P^2.L", "-27*b", s.p2l, "Q_2 = -27b"),
        _check(4, "Q3 = P.L^2", "18*a*b", s.pl2, "Q_3 = 18ab"),
        _check(4, "Q4 = L^3", 0, s.l3, "Q_4 = 0"),
        _check(4, "H_T^3 (Q1+Q2+Q3+Q4)", "18*a*b - 27*b - 333", s.paper_sum, "H_T^3 = 18ab - 27b - 333"),
        _check(4, "H_T.c2", 162, pair(m.c2, t.expr), "H_T . c_2(X_T) = 162"),
        _check(
            4,
            "H_T^3 (binomially weighted expansion)",
            s.paper_sum,
            f"{s.standard_sum}; differs from Q1+Q2+Q3+Q4 by {s.discrepancy}",
            info=True,
        ),
        _check(4, "weighted expansion == dense cube(H_T)", dense_cube(m.cup, t.expr), s.standard_sum),
    ]


def _equation(models) -> list[Check]:
    m1, m2 = models["x_phi"], models["x_t"]
    fixed, moving = m2.template("H_T").split()
    diff = cube(m1.cup, m1.template("H_phi").expr) - cube_split(m2.cup, fixed, moving).paper_sum
    k = diff.content()
    reduced = diff.exact_div(k) if k else diff
    return [
        _check(5, "H_phi^3 - H_T^3", "9*(6*x*y*z - 2*a*b + 3*b + 10)", f"{k}*({reduced})", "6 xyz = 2ab - 3b - 10"),
    ]


def _family(models) -> list[Check]:
    m1, m2 = models["x_phi"], models["x_t"]
    check = verify_family(paper_family())
    out = [
        _check(6, "family composed into 6xyz - 2ab + 3b + 10", 0, check.composed, "x = 12C^2 - 6, ..."),
        _check(6, "family parameters exceed C for all C >= 1", True, all(check.exceeds_bound.values())),
    ]
    fam = {k: MultiPoly.coerce(v) for k, v in paper_family().substitutions.items()}
    for c in range(1, 6):
        assign = {k: p.evaluate({"C": c}) for k, p in fam.items()}
        p1 = template_chern_pair(m1, assign, "H_phi")
        p2 = template_chern_pair(m2, assign, "H_T")
        out.append(_check(6, f"C={c}: (H_phi^3, H_phi.c2) vs (H_T^3, H_T.c2)", p1, p2))
        if c != 1:
            continue
        out.append(_check(6, "C=1: common H^3", 1053, p1.d3))
        out.append(_check(6, "C=1: common H.c2", 162, p1.dc2))
        try:
            cert = build_certificate(MatchSolution(assign, p1.d3), m1, m2)
            out.append(_check(6, "certificate P(1)", 189, cert.hilbert(1)))
            out.append(_check(6, "certificate P(2)", 1431, cert.hilbert(2)))
        except Cy3Error as exc:
            out.append(_check(6, "certificate", "issued", f"refused: {exc}"))
        weighted = template_chern_pair(m2, assign, "H_T", expansion="standard")
        out.append(_check(6, "C=1: weighted-expansion H_T^3", p1.d3, weighted.d3, info=True))
    return out


def _matcher(models) -> list[Check]:
    problem = paper_match_problem(0, 20)
    order = problem.order
    got1 = [s.values(order) for s in enumerate_matches(problem, workers=1)]
    got4 = [s.values(order) for s in enumerate_matches(problem, workers=4, chunks=7)]
    oracle = grid_oracle(20)
    return [
        _check(
            7,
            "matches in (0,20]^5 vs grid oracle",
            f"{len(oracle)} solutions, identical",
            f"{len(got1)} solutions, {'identical' if got1 == oracle else 'different'}",
        ),
        _check(7, "(1,1,1,2,16) among matches", True, (1, 1, 1, 2, 16) in got1),
        _check(7, "partitioning invariance (1 vs 4 workers)", True, got1 == got4),
    ]


def _negative(models) -> list[Check]:
    k, l = MultiPoly.variable("k"), MultiPoly.variable("l")
    sols = enumerate_matches(MatchProblem.uniform(9 * k**3, 5 * l**3, 0, 100))
    return [_check(8, "solutions of 9k^3 = 5l^3 with k,l in [1,100]", 0, len(sols), "9k^3 != 5l^3")]


def _distinguisher(models) -> list[Check]:
    m1, m2 = models["x_phi"], models["x_t"]
    rng = random.Random(31)
    combos = [ExceptionalCombo.random(rng) for _ in range(100)]
    table = generator_c2_table(m1, combos)
    rows = {r.family: r for r in table.rows}
    dist = distinguish(m1, m2)
    t_rows = [r for r in table.rows if r.family.startswith("T[")]
    return [
        _check(9, "D_ijl.c2", 18, rows["D_ijl"].value, "D_ijl . c_2(X) = 18"),
        _check(9, "E_ijk.c2", -6, rows["E_ijk"].value, "E_ijk . c_2(X) = -6"),
        _check(9, "T.c2 (|Lambda| = 3u, |Lambda'| = 3v)", "-6*u - 12*v", rows["T_{Lambda,Lambda'}"].value),
        _check(9, "100 random T classes: c2 = -2|L| - 4|L'| = 0 mod 6", True,
               len(t_rows) == 100 and all(r.divisible for r in t_rows)),
        _check(9, "X_phi c2 generators divisible by 6", True, table.all_divisible),
        _check(9, "X_T witness F", ChernPair(8, -4), m2.extra_classes.get("F"), "F^3 = 8, F.c2 = -4"),
        _check(9, "distinguish(X_phi, X_T)", "distinguished: F.c2 = -4 (mod 6 fails), F^3 = 8 (mod 3 fails)",
               dist.verdict),
    ]


def _rr(models) -> list[Check]:
    out = []
    for p, want in ((ChernPair(9, -6), "holds"), (ChernPair(-3, 18), "holds"), (ChernPair(8, -4), "not applicable")):
        v = rr_cubic_divisibility(p)
        got = "not applicable" if not v.applicable else ("holds" if v.holds else "fails")
        out.append(_check(10, f"RR implication on {p}", want, got))
    rng = random.Random(7)
    tested = bad = 0
    while tested < 10_000:
        p = random_integer_valued_pair(rng)
        if p.dc2 % 6:
            continue
        tested += 1
        if not (is_integer_valued(hilbert_polynomial(p)) and rr_cubic_divisibility(p).holds):
            bad += 1
    out.append(_check(10, "10^4 random integer-valued pairs with 6 | D.c2: 3 | D^3", 0, f"{bad}"))
    return out


def _fermat(models) -> list[Check]:
    rng = random.Random(11)
    disagreements = trials = 0
    for _ in range(200):
        n = rng.randint(1, 4)
        f = random_cubic_form(rng, n)
        for prime in (2, 3, 5):
            trials += 1
            if cubic_divisibility_fermat(f, prime) != cube_vanishes_everywhere(f, prime):
                disagreements += 1
    return [_check(11, f"Fermat test vs exhaustive evaluation ({trials} cases)", 0, disagreements)]


def _roundtrip(models) -> list[Check]:
    out = []
    reloaded = {k: loads_model(dumps_model(m)) for k, m in models.items()}
    for k, m in models.items():
        same = dumps_model(m) == dumps_model(reloaded[k])
        out.append(_check(12, f"export/import/export of {m.name} byte-identical", True, same))
    before = [c.computed for c in _x_phi_template(models) + _x_t_template(models)]
    after = [c.computed for c in _x_phi_template(reloaded) + _x_t_template(reloaded)]
    out.append(_check(12, "criteria 3-4 recomputed on reloaded models", before, after))
    first = dumps(suite_report(run_suite(models, include_determinism=False)))
    second = dumps(suite_report(run_suite(models, include_determinism=False)))
    out.append(_check(12, "two JSON reports byte-identical", True, first == second))
    return out


CRITERIA: list[Callable[[Mapping[str, ThreefoldModel]], list[Check]]] = [
    _adjunction,
    _gram,
    _x_phi_template,
    _x_t_template,
    _equation,
    _family,
    _matcher,
    _negative,
    _distinguisher,
    _rr,
    _fermat,
]


def default_models() -> dict[str, ThreefoldModel]:
    return {"x_phi": model_x_phi(), "x_t": model_x_t()}


def run_suite(models: Mapping[str, ThreefoldModel] | None = None, include_determinism: bool = True) -> list[Check]:
    models = dict(models or default_models())
    checks: list[Check] = []
    steps: Iterable = CRITERIA + ([_roundtrip] if include_determinism else [])
    for step in steps:
        try:
            checks.extend(step(models))
        except Exception as exc:  # a crash in one criterion is a FAIL, not an abort
            n = CRITERIA.index(step) + 1 if step in CRITERIA else 12
            checks.append(Check(n, step.__name__.strip("_"), "no error", f"{type(exc).__name__}: {exc}", FAIL))
    return checks


def suite_report(checks: list[Check]) -> dict:
    return {
        "checks": [
            {"criterion": str(c.criterion), "name": c.name, "expected": c.expected, "computed": c.computed, "status": c.status}
            for c in checks
        ],
        "failed": str(sum(c.status == FAIL for c in checks)),
        "passed": str(sum(c.status == PASS for c in checks)),
    }


def failed(checks: Iterable[Check]) -> bool:
    return any(c.status == FAIL for c in checks)
