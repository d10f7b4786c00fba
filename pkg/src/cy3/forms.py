"""Divisor-class algebra over a named basis.

A :class:`DivisorExpr` is a formal combination of basis labels with
polynomial coefficients (so templates such as ``-sum E + x*L1 + ...`` stay
symbolic).  Intersection data enters as a :class:`TrilinearForm` (the cup
product on triples of labels) and a :class:`LinearForm` (pairing with c2).
Absent entries in either form mean zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from math import lcm
from typing import Iterable, Mapping, Sequence, Union

from .errors import ArgumentError, BasisMismatchError, IntegralityError, ValidationError
from .exact import MultiPoly, PolyLike, fermat_reduce, is_prime, parse_poly

Scalar = Union[MultiPoly, int]


@dataclass(frozen=True)
class Basis:
    labels: tuple[str, ...]
    index: Mapping[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        labels = tuple(self.labels)
        if len(set(labels)) != len(labels):
            raise ValidationError("basis labels must be distinct")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "index", {l: i for i, l in enumerate(labels)})

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __contains__(self, label):
        return label in self.index

    def element(self, label: str) -> "DivisorExpr":
        return DivisorExpr(self, {label: 1})

    def zero(self) -> "DivisorExpr":
        return DivisorExpr(self, {})

    def sort_triple(self, triple: Sequence[str]) -> tuple[str, str, str]:
        if len(triple) != 3:
            raise ValidationError(f"expected a label triple, got {triple!r}")
        for l in triple:
            if l not in self.index:
                raise ValidationError(f"unknown basis label {l!r}")
        return tuple(sorted(triple, key=self.index.__getitem__))


def _check_basis(*objs):
    first = objs[0].basis
    for o in objs[1:]:
        if o.basis != first:
            raise BasisMismatchError("operands are defined on different bases")
    return first


class DivisorExpr:
    """``(1/denominator) * sum(coeff[label] * label)``, exact.

    ``denominator`` is normally 1; it tags classes like ``(1/3)(...)`` whose
    pairings must be checked for integrality before use.
    """

    __slots__ = ("basis", "coeffs", "denominator")

    def __init__(self, basis: Basis, coeffs: Mapping[str, PolyLike], denominator: int = 1):
        if denominator < 1:
            raise ArgumentError("denominator must be a positive integer")
        clean = {}
        for label, c in coeffs.items():
            if label not in basis:
                raise ValidationError(f"unknown basis label {label!r}")
            c = MultiPoly.coerce(c)
            if not c.is_zero():
                clean[label] = c
        self.basis = basis
        self.coeffs = {l: clean[l] for l in basis.labels if l in clean}
        self.denominator = denominator

    @classmethod
    def parse(cls, basis: Basis, text: str) -> "DivisorExpr":
        """Read ``"-E000 + x*L1 + 3*(M0 + M1)"``: a polynomial linear in the labels."""
        p = parse_poly(text)
        coeffs: dict[str, MultiPoly] = {}
        labels = set(basis.labels)
        for mono, c in p.items():
            hit = [(n, e) for n, e in mono if n in labels]
            if not hit:
                raise ValidationError(f"term without a basis label in divisor {text!r}")
            if len(hit) > 1 or hit[0][1] != 1:
                raise ValidationError(f"divisor {text!r} is not linear in basis labels")
            rest = tuple(t for t in mono if t[0] != hit[0][0])
            coeffs[hit[0][0]] = coeffs.get(hit[0][0], MultiPoly()) + MultiPoly({rest: c})
        return cls(basis, coeffs)

    def coeff(self, label: str) -> MultiPoly:
        return self.coeffs.get(label, MultiPoly())

    def _rescaled(self, denom: int) -> dict[str, MultiPoly]:
        k = denom // self.denominator
        return {l: c * k for l, c in self.coeffs.items()}

    def __add__(self, other: "DivisorExpr") -> "DivisorExpr":
        if not isinstance(other, DivisorExpr):
            return NotImplemented
        basis = _check_basis(self, other)
        d = lcm(self.denominator, other.denominator)
        out = self._rescaled(d)
        for l, c in other._rescaled(d).items():
            out[l] = out.get(l, MultiPoly()) + c
        return DivisorExpr(basis, out, d)

    def __neg__(self):
        return DivisorExpr(self.basis, {l: -c for l, c in self.coeffs.items()}, self.denominator)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar: Scalar) -> "DivisorExpr":
        if isinstance(scalar, DivisorExpr):
            return NotImplemented
        s = MultiPoly.coerce(scalar)
        return DivisorExpr(self.basis, {l: c * s for l, c in self.coeffs.items()}, self.denominator)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, DivisorExpr):
            return NotImplemented
        if self.basis != other.basis:
            return False
        d = lcm(self.denominator, other.denominator)
        return self._rescaled(d) == other._rescaled(d)

    def __hash__(self):
        return hash((self.basis.labels, frozenset(self.coeffs.items()), self.denominator))

    def substitute(self, bindings: Mapping[str, PolyLike]) -> "DivisorExpr":
        return DivisorExpr(
            self.basis, {l: c.substitute(bindings) for l, c in self.coeffs.items()}, self.denominator
        )

    @property
    def parameters(self) -> tuple[str, ...]:
        return tuple(sorted({v for c in self.coeffs.values() for v in c.variables}))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for l, c in self.coeffs.items():
            if c == 1:
                parts.append(l)
            elif c == -1:
                parts.append(f"-{l}")
            elif len(c.items()) == 1:
                parts.append(f"{c}*{l}")
            else:
                parts.append(f"({c})*{l}")
        body = " + ".join(parts).replace("+ -", "- ")
        return body if self.denominator == 1 else f"({body})/{self.denominator}"

    def __repr__(self):
        return f"DivisorExpr({str(self)!r})"


def _divide_exact(p: MultiPoly, denom: int, what: str) -> MultiPoly:
    if denom == 1:
        return p
    try:
        return p.exact_div(denom)
    except ArithmeticError:
        raise IntegralityError(f"{what} = ({p})/{denom} is not integral") from None


class TrilinearForm:
    """Symmetric integer-valued form on label triples (the cup product)."""

    __slots__ = ("basis", "entries")

    def __init__(self, basis: Basis, entries: Mapping[Sequence[str], int] | Iterable = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        store: dict[tuple[str, str, str], int] = {}
        for triple, value in items:
            key = basis.sort_triple(triple)
            value = int(value)
            if key in store and store[key] != value:
                raise ValidationError(f"contradictory values for {key}: {store[key]} and {value}")
            store[key] = value
        self.basis = basis
        order = basis.index
        self.entries = {
            k: store[k] for k in sorted(store, key=lambda t: tuple(order[l] for l in t)) if store[k]
        }

    def __call__(self, l1: str, l2: str, l3: str) -> int:
        return self.entries.get(self.basis.sort_triple((l1, l2, l3)), 0)

    def __eq__(self, other):
        if not isinstance(other, TrilinearForm):
            return NotImplemented
        return self.basis == other.basis and self.entries == other.entries


class LinearForm:
    __slots__ = ("basis", "entries")

    def __init__(self, basis: Basis, entries: Mapping[str, int]):
        for l in entries:
            if l not in basis:
                raise ValidationError(f"unknown basis label {l!r}")
        self.basis = basis
        self.entries = {l: int(entries[l]) for l in basis.labels if entries.get(l, 0)}

    def __call__(self, label: str) -> int:
        if label not in self.basis:
            raise ValidationError(f"unknown basis label {label!r}")
        return self.entries.get(label, 0)

    def __eq__(self, other):
        if not isinstance(other, LinearForm):
            return NotImplemented
        return self.basis == other.basis and self.entries == other.entries


def triple_product(f: TrilinearForm, d1: DivisorExpr, d2: DivisorExpr, d3: DivisorExpr) -> MultiPoly:
    """Trilinear extension of ``f`` to three divisor expressions."""
    _check_basis(f, d1, d2, d3)
    zero = MultiPoly()
    total = MultiPoly()
    for triple, value in f.entries.items():
        for l1, l2, l3 in set(permutations(triple)):
            c1 = d1.coeffs.get(l1, zero)
            if c1.is_zero():
                continue
            c2 = d2.coeffs.get(l2, zero)
            if c2.is_zero():
                continue
            c3 = d3.coeffs.get(l3, zero)
            if c3.is_zero():
                continue
            total = total + c1 * c2 * c3 * value
    return _divide_exact(total, d1.denominator * d2.denominator * d3.denominator, "triple product")


def cube(f: TrilinearForm, d: DivisorExpr) -> MultiPoly:
    return triple_product(f, d, d, d)


@dataclass(frozen=True)
class CubeSplit:
    """Pieces of ``(p + l)^3``.

    ``paper_sum`` adds the four raw products without binomial weights;
    ``standard_sum`` is the true cube ``P3 + 3*P2L + 3*PL2 + L3``.
    """

    p3: MultiPoly
    p2l: MultiPoly
    pl2: MultiPoly
    l3: MultiPoly
    paper_sum: MultiPoly
    standard_sum: MultiPoly

    @property
    def discrepancy(self) -> MultiPoly:
        return self.standard_sum - self.paper_sum


def cube_split(f: TrilinearForm, p: DivisorExpr, l: DivisorExpr) -> CubeSplit:
    p3 = triple_product(f, p, p, p)
    p2l = triple_product(f, p, p, l)
    pl2 = triple_product(f, p, l, l)
    l3 = triple_product(f, l, l, l)
    return CubeSplit(
        p3=p3,
        p2l=p2l,
        pl2=pl2,
        l3=l3,
        paper_sum=p3 + p2l + pl2 + l3,
        standard_sum=p3 + 3 * p2l + 3 * pl2 + l3,
    )


def pair(lf: LinearForm, d: DivisorExpr) -> MultiPoly:
    """``d . lf`` (e.g. ``H . c2``)."""
    _check_basis(lf, d)
    total = MultiPoly()
    for label, c in d.coeffs.items():
        v = lf.entries.get(label, 0)
        if v:
            total = total + c * v
    return _divide_exact(total, d.denominator, f"pairing with {d}")


@dataclass(frozen=True)
class DivisibilityReport:
    modulus: int
    divisible: bool
    witnesses: tuple[tuple[str, int], ...]

    @property
    def failures(self) -> tuple[tuple[str, int], ...]:
        return tuple(w for w in self.witnesses if w[1] % self.modulus)


def linear_divisibility(
    lf: LinearForm,
    generators: Mapping[str, DivisorExpr] | Iterable[tuple[str, DivisorExpr]],
    m: int,
) -> DivisibilityReport:
    """Check ``g . lf = 0 mod m`` on every generator.

    Divisibility on a generating set of a group containing the lattice
    implies divisibility on the lattice, since the form is additive.
    """
    if m == 0:
        raise ArgumentError("modulus must be nonzero")
    items = generators.items() if isinstance(generators, Mapping) else generators
    witnesses = []
    for name, g in items:
        try:
            value = pair(lf, g)
        except IntegralityError as exc:
            raise IntegralityError(f"generator {name}: {exc}") from None
        if not value.is_constant():
            raise IntegralityError(f"generator {name} pairs to non-constant {value}")
        witnesses.append((name, value.constant_value))
    return DivisibilityReport(
        modulus=m,
        divisible=all(v % m == 0 for _, v in witnesses),
        witnesses=tuple(witnesses),
    )


def generic_cube(f: TrilinearForm) -> tuple[MultiPoly, tuple[str, ...]]:
    """``f(D, D, D)`` for ``D = sum t_i * label_i`` with fresh variables ``t_i``."""
    names = tuple(f"t{i}" for i in range(len(f.basis)))
    d = DivisorExpr(f.basis, {l: MultiPoly.variable(n) for l, n in zip(f.basis.labels, names)})
    return cube(f, d), names


def cubic_divisibility_fermat(f: TrilinearForm, prime: int) -> bool:
    """True iff ``D^3 = 0 mod prime`` for every integer combination D of the basis.

    D^3 mod prime only depends on D mod prime, so this is the question of
    whether the generic cubic vanishes identically as a function on
    F_prime^n, which :func:`fermat_reduce` decides.
    """
    if not is_prime(prime):
        raise ArgumentError(f"modulus {prime} is not prime")
    poly, _ = generic_cube(f)
    return fermat_reduce(poly, prime).is_zero()
