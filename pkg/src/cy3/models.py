"""Curated intersection data for Beauville's rigid threefold and its flop.

X_phi is the blow-up of E^3/<zeta> at its 27 singular points (exceptional
planes E_ijk) with the pulled-back fibre classes L1, L2, L3.  X_T is the
birational model carrying the surfaces M_i, S_j and the abelian surfaces
A1, A2.  Intersection numbers are transcribed, not derived; every other
number is computed from them.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Sequence

from .chern import ChernPair, SurfaceInvariants, chern_pair_of_surface, rr_cubic_divisibility
from .errors import ValidationError
from .exact import IntMatrix, MultiPoly, fermat_reduce
from .forms import (
    Basis,
    DivisorExpr,
    LinearForm,
    TrilinearForm,
    cube,
    generic_cube,
    linear_divisibility,
    pair,
)

# surface catalog: (K^2, Euler number)
P2 = SurfaceInvariants("P2", 9, 3)
F1 = SurfaceInvariants("F1", 8, 4)
ABELIAN = SurfaceInvariants("abelian surface", 0, 0)
RATIONAL_ELLIPTIC = SurfaceInvariants("relatively minimal rational elliptic surface", 0, 12)
RATIONAL_ELLIPTIC_3PT = SurfaceInvariants("rational elliptic surface blown up at 3 points", -3, 15)

SURFACE_CATALOG = {s.name: s for s in (P2, F1, ABELIAN, RATIONAL_ELLIPTIC, RATIONAL_ELLIPTIC_3PT)}

INDEX_TRIPLES = tuple(itertools.product(range(3), repeat=3))

UNQUANTIFIED_AMPLENESS = "ample for all parameters > C, C sufficiently large (unquantified)"


def e_label(i: int, j: int, k: int) -> str:
    return f"E{i}{j}{k}"


@dataclass(frozen=True)
class AmpleTemplate:
    name: str
    expr: DivisorExpr
    params: tuple[str, ...]
    positivity: str = UNQUANTIFIED_AMPLENESS

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(self.params))
        if set(self.params) != set(self.expr.parameters) or len(set(self.params)) != len(self.params):
            raise ValidationError(
                f"template {self.name}: params {self.params} do not match "
                f"the variables {self.expr.parameters} of its coefficients"
            )

    def split(self) -> tuple[DivisorExpr, DivisorExpr]:
        """(parameter-free part, parametric part)."""
        fixed = {l: c for l, c in self.expr.coeffs.items() if c.is_constant()}
        moving = {l: c for l, c in self.expr.coeffs.items() if not c.is_constant()}
        basis = self.expr.basis
        return DivisorExpr(basis, fixed), DivisorExpr(basis, moving)

    def at(self, assignment: Mapping[str, int]) -> DivisorExpr:
        return self.expr.substitute({p: assignment[p] for p in self.params if p in assignment})


@dataclass(frozen=True)
class ThreefoldModel:
    name: str
    basis: Basis
    cup: TrilinearForm
    c2: LinearForm
    surfaces: Mapping[str, SurfaceInvariants] = field(default_factory=dict)
    templates: Mapping[str, AmpleTemplate] = field(default_factory=dict)
    extra_classes: Mapping[str, ChernPair] = field(default_factory=dict)

    def __post_init__(self):
        for obj in (self.cup, self.c2):
            if obj.basis != self.basis:
                raise ValidationError(f"model {self.name}: form defined on a different basis")
        for label, s in self.surfaces.items():
            if label not in self.basis:
                raise ValidationError(f"model {self.name}: surface entry for unknown label {label!r}")
            expected = chern_pair_of_surface(s)
            got = ChernPair(self.cup(label, label, label), self.c2(label))
            if got != expected:
                raise ValidationError(
                    f"model {self.name}: {label} has (D^3, D.c2) = {got} but its surface "
                    f"{s.name} (K^2={s.k_squared}, e={s.euler}) requires {expected}"
                )
        for t in self.templates.values():
            if t.expr.basis != self.basis:
                raise ValidationError(f"model {self.name}: template {t.name} on a different basis")

    def template(self, name: str | None = None) -> AmpleTemplate:
        if name is None:
            return next(iter(self.templates.values()))
        try:
            return self.templates[name]
        except KeyError:
            raise ValidationError(f"model {self.name} has no template {name!r}") from None

    def chern_pair(self, d: DivisorExpr) -> ChernPair:
        d3, dc2 = cube(self.cup, d), pair(self.c2, d)
        return ChernPair(
            d3.constant_value if d3.is_constant() else d3,
            dc2.constant_value if dc2.is_constant() else dc2,
        )

    def replace(self, **changes) -> "ThreefoldModel":
        return replace(self, **changes)


def model_x_phi() -> ThreefoldModel:
    e_labels = [e_label(*t) for t in INDEX_TRIPLES]
    basis = Basis(tuple(e_labels) + ("L1", "L2", "L3"))
    entries = {(e, e, e): 9 for e in e_labels}  # E_ijk^3 = K^2(P2)
    entries[("L1", "L2", "L3")] = 9
    cup = TrilinearForm(basis, entries)
    c2 = LinearForm(basis, {e: -6 for e in e_labels})
    surfaces = {e: P2 for e in e_labels}
    surfaces.update({l: ABELIAN for l in ("L1", "L2", "L3")})
    h_phi = DivisorExpr.parse(basis, " ".join(f"- {e}" for e in e_labels) + " + x*L1 + y*L2 + z*L3")
    return ThreefoldModel(
        name="X_phi",
        basis=basis,
        cup=cup,
        c2=c2,
        surfaces=surfaces,
        templates={"H_phi": AmpleTemplate("H_phi", h_phi, ("x", "y", "z"))},
        extra_classes={"D_ijl": chern_pair_of_surface(RATIONAL_ELLIPTIC_3PT)},
    )


def model_x_t() -> ThreefoldModel:
    ms = ("M0", "M1", "M2")
    ss = ("S0", "S1", "S2")
    basis = Basis(ms + ss + ("A1", "A2"))
    entries: dict[tuple[str, str, str], int] = {}
    for s in ss:
        entries[(s, s, s)] = -3
        entries[(s, "A1", "A2")] = 3  # S_j meets the fibre A1.A2 = 3 * fibre once
    for m in ms:
        entries[(m, m, "A2")] = -3  # M_i^2 . A2 = -f . A2
        for s in ss:
            entries[(m, m, s)] = -1
            entries[(m, s, s)] = -1
            entries[(m, s, "A2")] = 1
    cup = TrilinearForm(basis, entries)
    c2 = LinearForm(basis, {**{m: 12 for m in ms}, **{s: 18 for s in ss}})
    surfaces = {**{m: RATIONAL_ELLIPTIC for m in ms}, **{s: RATIONAL_ELLIPTIC_3PT for s in ss}}
    surfaces.update({"A1": ABELIAN, "A2": ABELIAN})
    h_t = DivisorExpr.parse(basis, "3*(M0 + M1 + M2) + S0 + S1 + S2 + a*A1 + b*A2")
    return ThreefoldModel(
        name="X_T",
        basis=basis,
        cup=cup,
        c2=c2,
        surfaces=surfaces,
        templates={"H_T": AmpleTemplate("H_T", h_t, ("a", "b"))},
        extra_classes={"F": chern_pair_of_surface(F1)},
    )


NS_E2_LABELS = ("{0}xE", "Ex{0}", "Delta", "Gamma")


def ns_e2_gram() -> IntMatrix:
    """Intersection matrix of {0}xE, Ex{0}, the diagonal and the graph of zeta on E^2."""
    return IntMatrix(
        [
            [0, 1, 1, 1],
            [1, 0, 1, 1],
            [1, 1, 0, 3],
            [1, 1, 3, 0],
        ]
    )


@dataclass(frozen=True)
class ExceptionalCombo:
    """Index sets for ``(1/3)(sum_lam E + 2 * sum_lam_prime E)``."""

    lam: frozenset
    lam_prime: frozenset

    def __init__(self, lam: Iterable[Sequence[int]] = (), lam_prime: Iterable[Sequence[int]] = ()):
        lam = frozenset(tuple(t) for t in lam)
        lam_prime = frozenset(tuple(t) for t in lam_prime)
        for t in lam | lam_prime:
            if t not in INDEX_TRIPLES:
                raise ValidationError(f"index triple {t} not in {{0,1,2}}^3")
        if lam & lam_prime:
            raise ValidationError("Lambda and Lambda' must be disjoint")
        for name, s in (("Lambda", lam), ("Lambda'", lam_prime)):
            if len(s) % 3:
                raise ValidationError(f"|{name}| = {len(s)} is not divisible by 3")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "lam_prime", lam_prime)

    @classmethod
    def random(cls, rng: random.Random) -> "ExceptionalCombo":
        pool = list(INDEX_TRIPLES)
        rng.shuffle(pool)
        n = 3 * rng.randint(0, 9)
        m = 3 * rng.randint(0, (27 - n) // 3)
        return cls(pool[:n], pool[n : n + m])


def t_class(c: ExceptionalCombo, basis: Basis | None = None) -> DivisorExpr:
    basis = basis or model_x_phi().basis
    coeffs = {e_label(*t): 1 for t in c.lam}
    coeffs.update({e_label(*t): 2 for t in c.lam_prime})
    return DivisorExpr(basis, coeffs, denominator=3)


@dataclass(frozen=True)
class GeneratorRow:
    family: str
    value: MultiPoly
    divisible: bool
    source: str


@dataclass(frozen=True)
class GeneratorTable:
    modulus: int
    rows: tuple[GeneratorRow, ...]

    @property
    def all_divisible(self) -> bool:
        return all(r.divisible for r in self.rows)


def generator_c2_table(
    model: ThreefoldModel | None = None,
    combos: Iterable[ExceptionalCombo] = (),
    modulus: int = 6,
) -> GeneratorTable:
    """c2-values of the three generator families D_ijl, E_ijk, T_{Lambda,Lambda'}.

    The T row is symbolic in ``u = |Lambda|/3`` and ``v = |Lambda'|/3``, so its
    divisibility covers every admissible combo at once; explicit ``combos``
    are evaluated on top of it.
    """
    model = model or model_x_phi()
    rows = []

    def row(family, value, source):
        value = MultiPoly.coerce(value)
        ok = value.content() % modulus == 0
        rows.append(GeneratorRow(family, value, ok, source))

    d = model.extra_classes.get("D_ijl", chern_pair_of_surface(RATIONAL_ELLIPTIC_3PT))
    row("D_ijl", d.dc2, "adjunction rule on (K^2, e) = (-3, 15)")
    e_values = {pair(model.c2, model.basis.element(e_label(*t))).constant_value for t in INDEX_TRIPLES}
    if len(e_values) != 1:
        raise ValidationError(f"E_ijk classes pair to several c2 values {sorted(e_values)}")
    (e_val,) = e_values
    row("E_ijk", e_val, "adjunction rule on P2")
    u, v = MultiPoly.variable("u"), MultiPoly.variable("v")
    # (1/3)(e*|Lambda| + 2e*|Lambda'|) with |Lambda| = 3u, |Lambda'| = 3v
    row("T_{Lambda,Lambda'}", e_val * (u + 2 * v), "(1/3)(|Lambda| + 2|Lambda'|) * E.c2")
    for c in combos:
        t = t_class(c, model.basis)
        row(f"T[{len(c.lam)},{len(c.lam_prime)}]", pair(model.c2, t), "explicit combo")
    return GeneratorTable(modulus, tuple(rows))


def fermat_witness(poly: MultiPoly, prime: int) -> dict[str, int] | None:
    """A point of F_prime^n where ``poly`` is nonzero, or None if it vanishes."""
    red = fermat_reduce(poly, prime)
    point: dict[str, int] = {}
    while not red.is_zero():
        names = red.variables
        if not names:
            return point
        name = names[0]
        for value in range(prime):
            rest = fermat_reduce(red.substitute({name: value}), prime)
            if not rest.is_zero():
                point[name] = value
                red = rest
                break
    return None


@dataclass(frozen=True)
class ModelInvariants:
    name: str
    c2_divisible_by_6: bool
    c2_values: tuple[tuple[str, int], ...]
    cube_divisible_by_3: bool
    cube_values: tuple[tuple[str, int], ...]
    cube_route: str

    @property
    def c2_failures(self):
        return tuple(w for w in self.c2_values if w[1] % 6)

    @property
    def cube_failures(self):
        return tuple(w for w in self.cube_values if w[1] % 3)

    @property
    def has_data(self) -> bool:
        return bool(self.c2_values or self.cube_values)


def model_invariants(model: ThreefoldModel) -> ModelInvariants:
    """Evidence for 6 | c2 and 3 | (cubic form) on the classes a model declares."""
    generators = {l: model.basis.element(l) for l in model.basis}
    report = linear_divisibility(model.c2, generators, 6)
    c2_values = report.witnesses + tuple((l, p.numeric()[1]) for l, p in model.extra_classes.items())
    cube_values = tuple((l, model.cup(l, l, l)) for l in model.basis) + tuple(
        (l, p.numeric()[0]) for l, p in model.extra_classes.items()
    )
    c2_ok = all(v % 6 == 0 for _, v in c2_values)
    if any(v % 3 for _, v in cube_values):
        return ModelInvariants(model.name, c2_ok, c2_values, False, cube_values, "explicit class")
    generic, names = generic_cube(model.cup)
    point = fermat_witness(generic, 3)
    if point is not None:
        combo = {model.basis.labels[int(n[1:])]: k for n, k in point.items() if k}
        label = " + ".join(f"{k}*{l}" for l, k in combo.items())
        d = DivisorExpr(model.basis, combo)
        cube_values += ((label, cube(model.cup, d).constant_value),)
        return ModelInvariants(model.name, c2_ok, c2_values, False, cube_values, "fermat witness")
    route = "fermat test on basis span"
    if c2_ok and all(
        rr_cubic_divisibility(p).holds for p in model.extra_classes.values() if p.satisfies_rr_congruence()
    ):
        route += " + Riemann-Roch implication"
    return ModelInvariants(model.name, c2_ok, c2_values, True, cube_values, route)


@dataclass(frozen=True)
class Distinction:
    distinguished: bool
    verdict: str
    invariants: tuple[ModelInvariants, ModelInvariants]
    witnesses: tuple[str, ...]


def distinguish(m1: ThreefoldModel, m2: ThreefoldModel) -> Distinction:
    """Compare the mod-6 c2 and mod-3 cubic-form invariants of two models.

    Both are topological invariants, so differing values prove the two
    threefolds are not homeomorphic.  Agreeing values prove nothing.
    """
    i1, i2 = model_invariants(m1), model_invariants(m2)
    differs = (
        i1.c2_divisible_by_6 != i2.c2_divisible_by_6 or i1.cube_divisible_by_3 != i2.cube_divisible_by_3
    )
    witnesses = []
    for inv in (i1, i2):
        witnesses += [f"{l}.c2 = {v} (mod 6 fails)" for l, v in inv.c2_failures]
        witnesses += [f"{l}^3 = {v} (mod 3 fails)" for l, v in inv.cube_failures]
    if differs:
        verdict = "distinguished: " + ", ".join(witnesses)
    elif not (i1.has_data or i2.has_data):
        verdict = "inconclusive: neither model declares any classes"
    else:
        verdict = "inconclusive: divisibility invariants agree"
    return Distinction(differs, verdict, (i1, i2), tuple(witnesses))
