"""Chern-class arithmetic on Calabi-Yau threefolds.

For an ample H on a Calabi-Yau threefold, Kodaira vanishing plus
Riemann-Roch give ``chi(O(nH)) = (H^3/6) n^3 + (H.c2/12) n``, so the pair
``(H^3, H.c2)`` determines the Hilbert polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ArgumentError, PreconditionError
from .exact import MultiPoly

Value = Union[int, MultiPoly]


@dataclass(frozen=True)
class SurfaceInvariants:
    """``(K^2, e)`` of a smooth surface sitting as a divisor."""

    name: str
    k_squared: int
    euler: int


@dataclass(frozen=True)
class ChernPair:
    """``(D^3, D.c2)``; entries may be symbolic."""

    d3: Value
    dc2: Value

    def is_numeric(self) -> bool:
        return all(isinstance(v, int) or (isinstance(v, MultiPoly) and v.is_constant()) for v in (self.d3, self.dc2))

    def numeric(self) -> tuple[int, int]:
        if not self.is_numeric():
            raise PreconditionError(f"symbolic Chern pair {self}")
        return tuple(v if isinstance(v, int) else v.constant_value for v in (self.d3, self.dc2))

    def satisfies_rr_congruence(self) -> bool:
        """``2*d3 + dc2 = 0 mod 12``, equivalent to an integer-valued Hilbert polynomial."""
        d3, dc2 = self.numeric()
        return (2 * d3 + dc2) % 12 == 0

    def __str__(self):
        return f"({self.d3}, {self.dc2})"


def chern_pair_of_surface(s: SurfaceInvariants) -> ChernPair:
    """For a smooth divisor D: ``D^3 = K_D^2`` and ``D.c2 = e(D) - K_D^2``."""
    return ChernPair(s.k_squared, s.euler - s.k_squared)


@dataclass(frozen=True)
class HilbertPolynomial:
    source: ChernPair
    cubic: Fraction
    linear: Fraction

    @property
    def coefficients(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        """Coefficients of ``n^3, n^2, n, 1``."""
        return (self.cubic, Fraction(0), self.linear, Fraction(0))

    def __call__(self, n: int) -> Fraction:
        return self.cubic * n**3 + self.linear * n

    def __str__(self):
        def term(c, mono):
            return f"{c}*{mono}" if c.denominator == 1 else f"({c})*{mono}"

        parts = [term(c, m) for c, m in ((self.cubic, "n^3"), (self.linear, "n")) if c]
        return " + ".join(parts).replace("+ (-", "- (").replace("+ -", "- ") or "0"


def hilbert_polynomial(p: ChernPair) -> HilbertPolynomial:
    d3, dc2 = p.numeric()
    return HilbertPolynomial(p, Fraction(d3, 6), Fraction(dc2, 12))


def is_integer_valued(hp: HilbertPolynomial) -> bool:
    # An odd cubic with P(0) = 0 is integer-valued iff P(1), P(2), P(3) are
    # integers (Newton basis binom(n, k), k <= 3).
    return all(hp(n).denominator == 1 for n in (1, 2, 3))


def scale_divisor(p: ChernPair, k: int) -> ChernPair:
    """Invariants of ``k*H``."""
    if k <= 0:
        raise ArgumentError(f"scale factor must be positive, got {k}")
    return ChernPair(p.d3 * k**3, p.dc2 * k)


def same_hilbert_scheme(p1: ChernPair, p2: ChernPair) -> bool:
    return p1.numeric() == p2.numeric()


@dataclass(frozen=True)
class RRVerdict:
    applicable: bool
    holds: bool
    trace: tuple[str, ...]


def rr_cubic_divisibility(p: ChernPair) -> RRVerdict:
    """If ``6 | D.c2`` then integrality of chi forces ``3 | D^3``.

    Returns the modular chain that leads there; when ``D.c2`` is not a
    multiple of 6 the implication does not apply and nothing is claimed.
    """
    d3, dc2 = p.numeric()
    hp = hilbert_polynomial(p)
    if not is_integer_valued(hp):
        raise PreconditionError(f"Hilbert polynomial of {p} is not integer-valued")
    trace = [
        f"chi(O(D)) = ({d3})/6 + ({dc2})/12 = {hp(1)} is an integer",
        f"=> 2*D^3 + D.c2 = {2 * d3 + dc2} = 0 mod 12",
    ]
    if dc2 % 6:
        trace.append(f"D.c2 = {dc2} = {dc2 % 6} mod 6: implication not applicable")
        return RRVerdict(applicable=False, holds=False, trace=tuple(trace))
    half = dc2 // 2
    trace.append(f"D.c2 = {dc2} = 0 mod 6 => D^3 = -D.c2/2 = {-half % 6} mod 6")
    holds = d3 % 3 == 0
    trace.append(f"=> D^3 = {d3} = {d3 % 3} mod 3")
    return RRVerdict(applicable=True, holds=holds, trace=tuple(trace))
