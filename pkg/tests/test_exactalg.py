from fractions import Fraction
from math import factorial

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from orbigw import _kernels_py
from orbigw.exactalg import (
    CycField,
    CycRational,
    DivisibilityError,
    PuiseuxPoly,
    TruncSeries,
    _add_exponents,
    bernoulli_eval,
    bernoulli_number,
    cyclotomic_polynomial,
    divide_by_zplus_zeta,
    format_rational,
    rational,
    series_exp,
)

try:
    from orbigw import _ckernels
except ImportError:
    _ckernels = None

CONDUCTORS = (1, 2, 3, 4, 5, 6, 8, 12)

rationals = st.builds(mpq, st.integers(-200, 200), st.integers(1, 40))


@st.composite
def cyc_numbers(draw, n=None):
    n = draw(st.sampled_from(CONDUCTORS)) if n is None else n
    degree = CycField.get(n).degree
    return CycRational(n, draw(st.lists(rationals, min_size=degree, max_size=degree)))


@st.composite
def cyc_triples(draw):
    n = draw(st.sampled_from(CONDUCTORS))
    return tuple(draw(cyc_numbers(n)) for _ in range(3))


# -- rationals ------------------------------------------------------------------


def test_rational_accepts_strings_and_fractions():
    assert rational("3/6") == mpq(1, 2)
    assert rational(Fraction(-2, 8)) == mpq(-1, 4)
    assert rational(7) == 7
    assert format_rational(mpq(-3, 9)) == "-1/3"
    assert format_rational(mpq(4)) == "4"


def test_rational_rejects_floats():
    with pytest.raises(TypeError):
        rational(0.5)


@given(rationals)
def test_format_round_trip(q):
    assert rational(format_rational(q)) == q


# -- cyclotomic field ---------------------------------------------------------


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


@pytest.mark.parametrize("n", CONDUCTORS)
def test_roots_of_unity_have_order_n(n):
    z = CycRational.root_of_unity(n, 1)
    acc = CycRational.one(n)
    for k in range(1, n + 1):
        acc = acc * z
        assert (acc == 1) == (k == n)


@pytest.mark.parametrize("n", CONDUCTORS)
def test_sum_of_roots_of_unity(n):
    total = CycRational.zero(n)
    for k in range(n):
        total = total + CycRational.root_of_unity(n, k)
    assert total == (1 if n == 1 else 0)


@given(cyc_triples())
def test_field_ring_laws(xyz):
    x, y, z = xyz
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x - x == 0


@given(cyc_numbers(), rationals)
def test_rational_division_inverts_multiplication(x, q):
    if q:
        assert (x * q) / q == x


def test_division_by_a_cyclotomic_number_is_refused():
    with pytest.raises(TypeError):
        CycRational.one(3) / CycRational.root_of_unity(3, 1)


def test_rational_detection():
    z3 = CycRational.root_of_unity(3, 1)
    assert (z3 + z3 * z3).is_rational()  # zeta + zeta^2 = -1
    assert (z3 + z3 * z3).to_rational() == -1
    assert not z3.is_rational()


def test_conductor_mismatch_is_an_error():
    with pytest.raises(ValueError):
        CycRational.one(3) + CycRational.one(4)


@pytest.mark.skipif(_ckernels is None, reason="compiled core not built")
@given(st.sampled_from(CONDUCTORS).flatmap(lambda n: st.tuples(st.just(n), cyc_numbers(n), cyc_numbers(n))))
def test_compiled_cyc_mul_matches_python(args):
    n, x, y = args
    powers = CycField.get(n).sparse_powers
    assert _ckernels.cyc_mul(x.coords, y.coords, powers, n) == _kernels_py.cyc_mul(x.coords, y.coords, powers, n)


@st.composite
def poly_terms(draw):
    keys = draw(st.lists(st.tuples(*[st.integers(-4, 4).map(lambda k: mpq(k, 3))] * 2), max_size=6, unique=True))
    return {k: draw(rationals) for k in keys}


@pytest.mark.skipif(_ckernels is None, reason="compiled core not built")
@given(poly_terms(), poly_terms())
def test_compiled_poly_mul_matches_python(a, b):
    assert _ckernels.poly_mul(a, b, _add_exponents) == _kernels_py.poly_mul(a, b, _add_exponents)


# -- Puiseux polynomials ------------------------------------------------------


@st.composite
def puiseux(draw, n=3):
    keys = draw(st.lists(st.tuples(*[st.integers(-6, 6).map(lambda k: mpq(k, 3))] * 2), max_size=4, unique=True))
    return PuiseuxPoly(2, n, {k: draw(cyc_numbers(n)) for k in keys})


@given(puiseux(), puiseux(), puiseux())
def test_puiseux_ring_laws(p, q, s):
    assert (p * q) * s == p * (q * s)
    assert p * (q + s) == p * q + p * s
    assert p + q == q + p


@given(puiseux())
def test_puiseux_records_round_trip(p):
    assert PuiseuxPoly.from_records(p.to_records(), 2, 3) == p


def test_puiseux_records_are_sorted_strings():
    p = PuiseuxPoly(1, 1, {(mpq(1, 3),): mpq(2), (mpq(-2, 3),): mpq(-1, 5)})
    assert p.to_records() == [
        {"exponents": ["-2/3"], "coeff": ["-1/5"]},
        {"exponents": ["1/3"], "coeff": ["2"]},
    ]


def test_puiseux_monomial_arithmetic():
    w = PuiseuxPoly.variable(1, 1, 0, mpq(1, 3))
    assert w * w * w == PuiseuxPoly.variable(1, 1, 0, 1)
    assert (w * PuiseuxPoly.variable(1, 1, 0, mpq(-1, 3))).is_constant()


# -- Bernoulli ---------------------------------------------------------------


def test_bernoulli_numbers():
    assert [bernoulli_number(m) for m in range(7)] == [1, mpq(-1, 2), mpq(1, 6), 0, mpq(-1, 30), 0, mpq(1, 42)]


def test_bernoulli_polynomial_values():
    assert bernoulli_eval(2, mpq(1, 2)) == mpq(-1, 12)
    assert bernoulli_eval(1, 0) == mpq(-1, 2)
    assert bernoulli_eval(3, mpq(1, 3)) == mpq(1, 27)


@given(st.integers(0, 14), st.integers(1, 12).flatmap(lambda d: st.integers(0, d - 1).map(lambda k: mpq(k, d))))
def test_bernoulli_reflection(m, x):
    assert bernoulli_eval(m, 1 - x) == (-1) ** m * bernoulli_eval(m, x)


@given(st.integers(1, 12), rationals)
def test_bernoulli_difference(m, x):
    assert bernoulli_eval(m, x + 1) - bernoulli_eval(m, x) == m * x ** (m - 1)


# -- truncated series ----------------------------------------------------------


def test_series_exp_of_z():
    s = TruncSeries(("z",), 6, 1, 1, {1: 1})
    e = series_exp(s)
    for k in range(7):
        assert e[(k,)] == PuiseuxPoly.constant(1, 1, Fraction(1, factorial(k)))


def test_series_negation_substitution():
    s = TruncSeries(("z",), 4, 1, 1, {1: 2, 2: 3})
    t = s.substitute_negative()
    assert t[(1,)] == PuiseuxPoly.constant(1, 1, -2)
    assert t[(2,)] == PuiseuxPoly.constant(1, 1, 3)


def test_divide_by_zplus_zeta_round_trip():
    # (z + zeta)(1 + z zeta) = z + zeta + z^2 zeta + z zeta^2
    numer = TruncSeries(("z", "zeta"), 4, 1, 1, {(1, 0): 1, (0, 1): 1, (2, 1): 1, (1, 2): 1})
    q = divide_by_zplus_zeta(numer)
    assert q == TruncSeries(("z", "zeta"), 3, 1, 1, {(0, 0): 1, (1, 1): 1})


def test_indivisible_numerator_reports_residue():
    numer = TruncSeries(("z", "zeta"), 3, 1, 1, {(1, 0): 1})
    with pytest.raises(DivisibilityError) as info:
        divide_by_zplus_zeta(numer)
    assert info.value.key == (1, 0)
