"""Ring arithmetic, quantum combinatorics, and serialization."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qschur.laurent import (
    DivisionByZero,
    EvalAtZero,
    LaurentPoly,
    NotDivisible,
    gauss_binomial,
    parse_laurent,
    quantum_factorial,
    quantum_int,
)

V = LaurentPoly.v


def classical_binomial(n: int, k: int) -> int:
    """Integer Pascal-triangle oracle, independent of the ring code."""
    if k < 0 or k > n:
        return 0
    row = [1]
    for _ in range(n):
        row = [1] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [1]
    return row[k]


polys = st.dictionaries(
    st.integers(-6, 6), st.integers(-9, 9), max_size=5
).map(LaurentPoly)


# -- arithmetic --------------------------------------------------------------


def test_difference_of_squares():
    assert (V(1) + V(-1)) * (V(1) - V(-1)) == LaurentPoly({2: 1, -2: -1})


def test_additive_identity():
    x = LaurentPoly({3: 4, -1: -2})
    assert x + LaurentPoly.zero() == x


def test_product_expansion():
    lhs = (V(1) + V(-1)) * (V(2) + V(-2))
    assert lhs == LaurentPoly({3: 1, 1: 1, -1: 1, -3: 1})


def test_zero_coefficients_never_stored():
    x = LaurentPoly({1: 1}) + LaurentPoly({1: -1})
    assert x.is_zero and x._terms == {}
    assert LaurentPoly({0: 0, 2: 0}).is_zero


@given(polys, polys, polys)
def test_ring_axioms(x, y, z):
    assert x + y == y + x
    assert (x + y) + z == x + (y + z)
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + (-x) == LaurentPoly.zero()


# -- exact division ----------------------------------------------------------


def test_exact_div_quantum_ints():
    q = quantum_int(4).exact_div(quantum_int(2))
    assert q == V(2) + V(-2)
    assert q * quantum_int(2) == quantum_int(4)


def test_exact_div_by_one():
    x = LaurentPoly({5: 3, -2: 7})
    assert x.exact_div(LaurentPoly.one()) == x


def test_exact_div_failure():
    with pytest.raises(NotDivisible):
        quantum_int(3).exact_div(quantum_int(2))
    with pytest.raises(NotDivisible):
        V(1).exact_div(LaurentPoly.from_int(2))


def test_exact_div_by_zero():
    with pytest.raises(DivisionByZero):
        V(1).exact_div(LaurentPoly.zero())


@given(polys, polys.filter(lambda p: not p.is_zero))
def test_exact_div_inverts_multiplication(q, y):
    assert (q * y).exact_div(y) == q


# -- quantum integers, factorials, binomials ---------------------------------


def test_quantum_int_values():
    assert quantum_int(0).is_zero
    assert quantum_int(2) == V(1) + V(-1)
    assert quantum_int(-3) == -(V(2) + LaurentPoly.one() + V(-2))


@pytest.mark.parametrize("r", range(-10, 11))
def test_quantum_int_antisymmetry(r):
    assert quantum_int(-r) == -quantum_int(r)


def test_quantum_factorial_values():
    assert quantum_factorial(0) == LaurentPoly.one()
    assert quantum_factorial(2) == V(1) + V(-1)
    assert quantum_factorial(3) == LaurentPoly({3: 1, 1: 2, -1: 2, -3: 1})


def test_gauss_binomial_values():
    assert gauss_binomial(7, 0) == LaurentPoly.one()
    assert gauss_binomial(2, 3).is_zero
    assert gauss_binomial(4, 2) == LaurentPoly({4: 1, 2: 1, 0: 2, -2: 1, -4: 1})
    assert gauss_binomial(-1, 2) == LaurentPoly.one()
    assert gauss_binomial(3, -1).is_zero


def test_quantum_int_addition_rule():
    # [r+s] = v^-s [r] + v^r [s]
    for r in range(-10, 11):
        for s in range(-10, 11):
            assert quantum_int(r + s) == V(-s) * quantum_int(r) + V(r) * quantum_int(s)


def test_gauss_binomial_pascal_rule():
    # [r+1; s] = v^-s [r; s] + v^(r-s+1) [r; s-1]
    for r in range(-10, 11):
        for s in range(0, 11):
            lhs = gauss_binomial(r + 1, s)
            rhs = V(-s) * gauss_binomial(r, s) + V(r - s + 1) * gauss_binomial(r, s - 1)
            assert lhs == rhs, (r, s)


def test_gauss_binomial_classical_limit():
    for r in range(13):
        for s in range(r + 1):
            assert gauss_binomial(r, s).evaluate(1) == classical_binomial(r, s), (r, s)


def test_gauss_binomial_positive_and_symmetric():
    for r in range(13):
        for s in range(r + 1):
            b = gauss_binomial(r, s)
            assert b == b.bar()
            assert all(c > 0 for _, c in b.items())


# -- evaluation --------------------------------------------------------------


def test_evaluate():
    assert (V(1) + V(-1)).evaluate(1) == 2
    assert gauss_binomial(4, 2).evaluate(1) == 6
    assert LaurentPoly.zero().evaluate(Fraction(2, 3)) == 0
    assert (V(2) + LaurentPoly.from_int(3)).evaluate(Fraction(1, 2)) == Fraction(13, 4)


def test_evaluate_at_zero_rejected():
    with pytest.raises(EvalAtZero):
        V(1).evaluate(0)


@given(polys, polys)
def test_evaluate_is_a_ring_map(x, y):
    t = Fraction(3, 2)
    assert (x * y).evaluate(t) == x.evaluate(t) * y.evaluate(t)
    assert (x + y).evaluate(t) == x.evaluate(t) + y.evaluate(t)


# -- serialization -----------------------------------------------------------


def test_text_format():
    assert str(LaurentPoly.zero()) == "0"
    assert str(LaurentPoly({4: 1, 0: 2, -2: -1})) == "v^4 + 2 - v^-2"
    assert str(LaurentPoly({1: -3})) == "-3v"
    assert str(LaurentPoly({1: 1, 0: 1})) == "v + 1"


@given(polys)
def test_text_round_trip(x):
    assert parse_laurent(str(x)) == x


@given(polys)
def test_json_round_trip(x):
    data = x.to_json()
    assert data == sorted(data)
    assert LaurentPoly.from_json(data) == x


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_laurent("v^")
    with pytest.raises(ValueError):
        parse_laurent("1 1")
