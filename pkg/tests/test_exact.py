import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cy3.errors import ArgumentError, DimensionError, ParseError
from cy3.exact import (
    IntMatrix,
    MultiPoly,
    det_int,
    fermat_reduce,
    is_prime,
    parse_poly,
    smith_normal_form,
)

x, y, z = (MultiPoly.variable(n) for n in "xyz")
NAMES = ("a", "b", "c", "d")


@st.composite
def polys(draw, names=NAMES, max_terms=5, max_exp=4):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exps = tuple((n, draw(st.integers(0, max_exp))) for n in names)
        terms[exps] = draw(st.integers(-20, 20))
    return MultiPoly(terms)


def cofactor_det(rows):
    n = len(rows)
    if n == 0:
        return 1
    return sum(
        (-1) ** j * rows[0][j] * cofactor_det([r[:j] + r[j + 1 :] for r in rows[1:]]) for j in range(n)
    )


# -- polynomials --------------------------------------------------------------


def test_additive_inverse_is_zero():
    p = x + (-x)
    assert p.is_zero()
    assert str(p) == "0"
    assert p.variables == ()


def test_binomial_square():
    assert (x + y) * (x + y) == parse_poly("x^2 + 2*x*y + y^2")
    assert str((x + y) ** 2) == "x^2 + 2*x*y + y^2"


def test_graded_lex_printing():
    assert str(parse_poly("-243 + 54*z*y*x")) == "54*x*y*z - 243"
    assert str(parse_poly("b*a*18 - 333 - 27*b")) == "18*a*b - 27*b - 333"
    assert str(parse_poly("-x")) == "-x"


def test_terms_are_exponent_vectors_in_graded_lex_order():
    p = parse_poly("y^2 + x*y + x^2 + 1")
    assert p.variables == ("x", "y")
    assert list(p.terms) == [(2, 0), (1, 1), (0, 2), (0, 0)]


def test_family_substitution_solves_the_equation():
    eq = parse_poly("6*x*y*z - (2*a*b - 3*b - 10)")
    fam = {"x": "12*C^2 - 6", "y": "2*C", "z": "2*C", "a": "6*C^2 + 1", "b": "24*C^2 - 10"}
    assert eq.substitute(fam).is_zero()
    assert parse_poly("6*x*y*z").substitute(fam) == parse_poly("288*C^4 - 144*C^2")


def test_substitute_zero_and_numeric():
    assert (x * y).substitute({"x": 0}).is_zero()
    assert parse_poly("351*n^3 + 27*n").substitute({"n": 2}) == 2862
    assert x.substitute({"unused": 5}) == x


def test_evaluate_requires_all_variables():
    with pytest.raises(ArgumentError):
        (x * y).evaluate({"x": 1})


def test_huge_integers_are_exact():
    big = MultiPoly.constant(10**40)
    assert (big * big).constant_value == 10**80


def test_exact_div_and_content():
    p = parse_poly("54*x*y*z - 18*a*b + 27*b + 90")
    assert p.content() == 9
    assert str(p.exact_div(9)) == "6*x*y*z - 2*a*b + 3*b + 10"
    with pytest.raises(ArithmeticError):
        p.exact_div(27)


@pytest.mark.parametrize("text", ["x +", "2 ** 3", "(x", "x $ y", "", "x^y"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_poly(text)


def test_parse_whitespace_and_unary():
    assert parse_poly("  - ( x+1 ) ^ 2 ") == -(x + 1) ** 2
    assert parse_poly("x_1*Y2") == MultiPoly.variable("x_1") * MultiPoly.variable("Y2")


@given(polys(), polys())
def test_subtraction_undoes_addition(p, q):
    assert (p + q) - q == p


@given(polys(), polys(), polys())
@settings(max_examples=50)
def test_ring_axioms(p, q, r):
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r


@given(polys())
def test_print_parse_roundtrip(p):
    assert parse_poly(str(p)) == p


@given(polys(), st.dictionaries(st.sampled_from(NAMES), st.integers(-5, 5), min_size=4, max_size=4))
def test_substitute_then_evaluate_agrees(p, point):
    assert p.substitute(point).constant_value == p.evaluate(point)


# -- determinant and Smith form -----------------------------------------------


def test_det_examples():
    assert det_int(IntMatrix.identity(4)) == 1
    assert det_int(IntMatrix([[2, 0], [0, 3]])) == 6
    gram = IntMatrix([[0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 3], [1, 1, 3, 0]])
    assert det_int(gram) == -3


def test_det_rejects_non_square():
    with pytest.raises(DimensionError):
        det_int(IntMatrix([[1, 2, 3], [4, 5, 6]]))


def test_det_matches_cofactor_expansion():
    rng = random.Random(2024)
    for _ in range(1200):
        n = rng.randint(1, 4)
        rows = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        assert det_int(IntMatrix(rows)) == cofactor_det(rows)


def _check_smith(m):
    snf = smith_normal_form(m)
    assert snf.left @ m @ snf.right == snf.diagonal
    assert abs(det_int(snf.left)) == 1
    assert abs(det_int(snf.right)) == 1
    d = snf.diagonal
    for i in range(d.rows):
        for j in range(d.cols):
            if i != j:
                assert d[i, j] == 0
    f = snf.factors
    assert all(v >= 0 for v in f)
    for a, b in zip(f, f[1:]):
        assert (b == 0) or (a != 0 and b % a == 0)
    return snf


def test_smith_examples():
    assert _check_smith(IntMatrix.identity(3)).factors == (1, 1, 1)
    assert _check_smith(IntMatrix([[2, 4], [6, 8]])).factors == (2, 4)
    gram = IntMatrix([[0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 3], [1, 1, 3, 0]])
    assert _check_smith(gram).factors == (1, 1, 1, 3)


def test_smith_factor_product_is_abs_det():
    rng = random.Random(5)
    for _ in range(300):
        n = rng.randint(1, 4)
        m = IntMatrix([[rng.randint(-6, 6) for _ in range(n)] for _ in range(n)])
        snf = _check_smith(m)
        prod = 1
        for v in snf.factors:
            prod *= v
        assert prod == abs(det_int(m))


def test_smith_rectangular_and_zero():
    _check_smith(IntMatrix([[2, 4, 4], [-6, 6, 12]]))
    assert _check_smith(IntMatrix([[0, 0], [0, 0]])).factors == (0, 0)


# -- Fermat reduction -----------------------------------------------------------


def test_fermat_examples():
    assert fermat_reduce(parse_poly("3*x^2*y + 3*x*y^2"), 3).is_zero()
    assert fermat_reduce(parse_poly("8*x^3"), 3) == parse_poly("2*x")
    assert fermat_reduce(parse_poly("x^3 + y^3 + z^3"), 3) == parse_poly("x + y + z")


def test_fermat_rejects_composite():
    with pytest.raises(ArgumentError):
        fermat_reduce(x, 4)
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


@given(polys(names=("a", "b", "c"), max_exp=7), st.sampled_from([2, 3, 5]))
@settings(max_examples=150)
def test_fermat_zero_iff_vanishes_everywhere(p, prime):
    names = ("a", "b", "c")
    vanishes = all(
        p.evaluate(dict(zip(names, pt))) % prime == 0 for pt in itertools.product(range(prime), repeat=3)
    )
    assert fermat_reduce(p, prime).is_zero() == vanishes


def test_fermat_exhaustive_four_variables():
    rng = random.Random(3)
    for _ in range(60):
        terms = {}
        for _ in range(rng.randint(1, 4)):
            terms[tuple((n, rng.randint(0, 6)) for n in NAMES)] = rng.choice([1, 2, 3, 4, 6, 10, 15, 30])
        p = MultiPoly(terms)
        for prime in (2, 3, 5):
            vanishes = all(
                p.evaluate(dict(zip(NAMES, pt))) % prime == 0
                for pt in itertools.product(range(prime), repeat=4)
            )
            assert fermat_reduce(p, prime).is_zero() == vanishes
