"""Exact arithmetic: sparse integer polynomials and integer matrices.

Integers and rationals are Python's ``int`` and :class:`fractions.Fraction`;
this module adds what those lack: a canonical sparse multivariate polynomial
over the integers, a text syntax for it, and integer matrices with a
fraction-free determinant and a Smith normal form that returns its
unimodular transforms.
"""

from __future__ import annotations

import operator
import re
from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Iterable, Mapping, Union

from .errors import ArgumentError, DimensionError, ParseError

Monomial = tuple[tuple[str, int], ...]
PolyLike = Union["MultiPoly", int, str]

_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


def _as_int(value) -> int:
    if isinstance(value, bool):
        raise TypeError("booleans are not integers here")
    return operator.index(value)


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    exps = dict(m1)
    for name, e in m2:
        exps[name] = exps.get(name, 0) + e
    return tuple(sorted(exps.items()))


class MultiPoly:
    """Sparse polynomial with integer coefficients in named variables.

    The representation is canonical: zero coefficients are never stored,
    the variable universe is exactly the set of names that occur, and terms
    iterate in graded-lexicographic order.  Two polynomials are therefore
    equal iff their term maps are identical.

    >>> x, y = MultiPoly.variable("x"), MultiPoly.variable("y")
    >>> str((x + y) ** 2)
    'x^2 + 2*x*y + y^2'
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        clean: dict[Monomial, int] = {}
        for mono, coeff in (terms or {}).items():
            coeff = _as_int(coeff)
            if coeff == 0:
                continue
            mono = tuple(sorted((str(n), int(e)) for n, e in mono if e))
            for name, e in mono:
                if e < 0:
                    raise ArgumentError(f"negative exponent on {name}")
                if not _NAME.match(name):
                    raise ArgumentError(f"invalid variable name {name!r}")
            clean[mono] = clean.get(mono, 0) + coeff
        self._terms = {m: c for m, c in clean.items() if c}
        self._hash = None

    # construction -----------------------------------------------------

    @classmethod
    def constant(cls, c: int) -> "MultiPoly":
        return cls({(): c})

    @classmethod
    def variable(cls, name: str) -> "MultiPoly":
        return cls({((name, 1),): 1})

    @classmethod
    def parse(cls, text: str) -> "MultiPoly":
        return parse_poly(text)

    @classmethod
    def coerce(cls, value: PolyLike) -> "MultiPoly":
        if isinstance(value, MultiPoly):
            return value
        if isinstance(value, str):
            return parse_poly(value)
        return cls.constant(_as_int(value))

    # inspection -------------------------------------------------------

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(sorted({n for m in self._terms for n, _ in m}))

    def _exponent_vector(self, mono: Monomial, names: tuple[str, ...]) -> tuple[int, ...]:
        d = dict(mono)
        return tuple(d.get(n, 0) for n in names)

    def _sort_key(self, names):
        def key(item):
            vec = self._exponent_vector(item[0], names)
            return (-sum(vec), tuple(-e for e in vec))

        return key

    def items(self) -> list[tuple[Monomial, int]]:
        """Terms as ``(monomial, coefficient)`` pairs in graded-lex order."""
        return sorted(self._terms.items(), key=self._sort_key(self.variables))

    @property
    def terms(self) -> dict[tuple[int, ...], int]:
        """Exponent vector (over :attr:`variables`) to coefficient, graded-lex ordered."""
        names = self.variables
        return {self._exponent_vector(m, names): c for m, c in self.items()}

    def coefficient(self, monomial: Mapping[str, int] | None = None) -> int:
        mono = tuple(sorted((n, e) for n, e in (monomial or {}).items() if e))
        return self._terms.get(mono, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(m == () for m in self._terms)

    @property
    def constant_value(self) -> int:
        if not self.is_constant():
            raise ArgumentError(f"{self} is not constant")
        return self._terms.get((), 0)

    def total_degree(self) -> int:
        return max((sum(e for _, e in m) for m in self._terms), default=0)

    def degree_in(self, name: str) -> int:
        return max((dict(m).get(name, 0) for m in self._terms), default=0)

    def content(self) -> int:
        """Non-negative gcd of the coefficients (0 for the zero polynomial)."""
        return reduce(gcd, self._terms.values(), 0)

    def exact_div(self, k: int) -> "MultiPoly":
        k = _as_int(k)
        if k == 0:
            raise ZeroDivisionError("division of a polynomial by 0")
        out = {}
        for m, c in self._terms.items():
            q, r = divmod(c, k)
            if r:
                raise ArithmeticError(f"{self} is not divisible by {k}")
            out[m] = q
        return MultiPoly(out)

    # arithmetic -------------------------------------------------------

    def __add__(self, other):
        try:
            other = MultiPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return MultiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({m: -c for m, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            other = MultiPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return MultiPoly.coerce(other) - self

    def __mul__(self, other):
        try:
            other = MultiPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out: dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return MultiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        k = _as_int(k)
        if k < 0:
            raise ArgumentError("negative powers are not polynomials")
        result, base = MultiPoly.constant(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self._terms == other._terms
        if isinstance(other, int) and not isinstance(other, bool):
            return self._terms == MultiPoly.constant(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # composition ------------------------------------------------------

    def substitute(self, bindings: Mapping[str, PolyLike]) -> "MultiPoly":
        """Replace variables by polynomials; names not occurring are ignored."""
        subs = {n: MultiPoly.coerce(v) for n, v in bindings.items()}
        powers: dict[tuple[str, int], MultiPoly] = {}
        out = MultiPoly()
        for mono, coeff in self._terms.items():
            kept = []
            term = MultiPoly.constant(coeff)
            for name, e in mono:
                if name in subs:
                    if (name, e) not in powers:
                        powers[(name, e)] = subs[name] ** e
                    term = term * powers[(name, e)]
                else:
                    kept.append((name, e))
            out = out + term * MultiPoly({tuple(kept): 1})
        return out

    def evaluate(self, values: Mapping[str, int]) -> int:
        """Integer value at a full assignment of the variables."""
        total = 0
        for mono, coeff in self._terms.items():
            v = coeff
            for name, e in mono:
                try:
                    v *= values[name] ** e
                except KeyError:
                    raise ArgumentError(f"no value bound for variable {name!r}") from None
            total += v
        return total

    # text -------------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for i, (mono, coeff) in enumerate(self.items()):
            factors = [n if e == 1 else f"{n}^{e}" for n, e in mono]
            mag = abs(coeff)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if i == 0:
                parts.append(("-" if coeff < 0 else "") + body)
            else:
                parts.append((" - " if coeff < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"MultiPoly({str(self)!r})"


# -- text syntax -------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("int", num))
        elif name is not None:
            tokens.append(("name", name))
        elif op in "+-*^()":
            tokens.append(("op", op))
        else:
            raise ParseError(f"unexpected character {op!r} at offset {m.start(3)} in {text!r}")
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind or "token"
            raise ParseError(f"expected {want} at token {self.pos} in {self.text!r}")
        self.pos += 1
        return tok

    def parse(self) -> MultiPoly:
        if not self.tokens:
            raise ParseError("empty polynomial text")
        p = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input at token {self.pos} in {self.text!r}")
        return p

    def expr(self):
        p = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.peek() == ("op", "*"):
            self.take()
            p = p * self.unary()
        return p

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            return base ** int(self.take("int")[1])
        return base

    def atom(self):
        kind, value = self.peek()
        if kind == "int":
            self.take()
            return MultiPoly.constant(int(value))
        if kind == "name":
            self.take()
            return MultiPoly.variable(value)
        if (kind, value) == ("op", "("):
            self.take()
            p = self.expr()
            self.take("op", ")")
            return p
        raise ParseError(f"unexpected token {value!r} in {self.text!r}")


def parse_poly(text: str) -> MultiPoly:
    """Parse ``+ - * ^`` expressions over integer literals and identifiers.

    >>> str(parse_poly("(x + 1)^2 - 1"))
    'x^2 + 2*x'
    """
    return _Parser(text).parse()


# -- modular reduction -------------------------------------------------------


def is_prime(n: int) -> bool:
    n = _as_int(n)
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def fermat_reduce(p: MultiPoly, prime: int) -> MultiPoly:
    """Reduce ``p`` to its canonical representative as a function on F_prime^n.

    Coefficients land in ``0..prime-1`` and every exponent is folded with
    ``x^prime = x`` until it is below ``prime``.  The result is zero iff ``p``
    vanishes at every point of the affine space over the prime field.
    """
    if not is_prime(prime):
        raise ArgumentError(f"modulus {prime} is not prime")
    out: dict[Monomial, int] = {}
    for mono, coeff in p._terms.items():
        folded = tuple((n, e if e < prime else (e - 1) % (prime - 1) + 1) for n, e in mono)
        out[folded] = (out.get(folded, 0) + coeff) % prime
    return MultiPoly({m: c % prime for m, c in out.items()})


# -- integer matrices --------------------------------------------------------


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored as a tuple of row tuples."""

    entries: tuple[tuple[int, ...], ...]

    def __init__(self, rows: Iterable[Iterable[int]]):
        grid = tuple(tuple(_as_int(v) for v in row) for row in rows)
        if grid and len({len(r) for r in grid}) != 1:
            raise DimensionError("ragged rows")
        object.__setattr__(self, "entries", grid)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(zip(*self.entries)) if self.entries else self

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and self.entries == self.transpose().entries

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.entries))
        return IntMatrix([[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.entries])


def det_int(m: IntMatrix) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    if m.rows != m.cols:
        raise DimensionError(f"determinant of non-square {m.shape} matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.tolist()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SmithForm:
    """``left @ matrix @ right == diagonal`` with unimodular ``left``/``right``."""

    factors: tuple[int, ...]
    left: IntMatrix
    right: IntMatrix
    diagonal: IntMatrix


def smith_normal_form(m: IntMatrix) -> SmithForm:
    """Smith normal form with transforms.

    Diagonal entries are non-negative and each divides the next; zero
    factors (rank deficiency) come last.
    """
    r, c = m.shape
    a = m.tolist()
    u = IntMatrix.identity(r).tolist()
    v = IntMatrix.identity(c).tolist()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for mat in (a, v):
            for row in mat:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):
        for mat in (a, u):
            mat[dst] = [x + k * y for x, y in zip(mat[dst], mat[src])]

    def add_col(dst, src, k):
        for mat in (a, v):
            for row in mat:
                row[dst] += k * row[src]

    for t in range(min(r, c)):
        while True:
            nonzero = [(abs(a[i][j]), i, j) for i in range(t, r) for j in range(t, c) if a[i][j]]
            if not nonzero:
                break
            _, pi, pj = min(nonzero)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = a[t][t]
            clean = True
            for i in range(t + 1, r):
                q = a[i][t] // p
                if q:
                    add_row(i, t, -q)
                clean = clean and a[i][t] == 0
            for j in range(t + 1, c):
                q = a[t][j] // p
                if q:
                    add_col(j, t, -q)
                clean = clean and a[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, r) for j in range(t + 1, c) if a[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    diag = IntMatrix(a)
    return SmithForm(
        factors=tuple(a[i][i] for i in range(min(r, c))),
        left=IntMatrix(u),
        right=IntMatrix(v),
        diagonal=diag,
    )
