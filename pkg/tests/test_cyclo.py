from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from weilinv.cyclo import (
    Cyclo,
    CycloOrderError,
    arith,
    as_rational,
    e_of,
    serialize,
    sqrt_int,
)


def test_e_of_identity_and_half_turn():
    assert e_of(0) == 1
    assert e_of(Fraction(1, 2)) == -1


def test_e_of_is_a_character():
    xs = [Fraction(a, b) for b in (1, 2, 3, 4, 5, 8, 12) for a in range(b)]
    for x in xs:
        for y in xs:
            assert e_of(x) * e_of(y) == e_of(x + y)


def test_cosine_of_eighth_turn_is_sqrt_two():
    val = e_of(Fraction(1, 8)) + e_of(Fraction(-1, 8))
    assert val == sqrt_int(2)
    assert abs(val.embed_complex() - 2 ** 0.5) < 1e-12


def test_sqrt_int_small_values():
    assert sqrt_int(1) == 1
    assert sqrt_int(4) == 2
    for n in range(1, 51):
        r = sqrt_int(n)
        assert r * r == n
        z = r.embed_complex()
        assert abs(z.imag) < 1e-9
        assert z.real > 0


def test_sqrt_int_rejects_non_positive():
    with pytest.raises(ValueError):
        sqrt_int(0)
    with pytest.raises(ValueError):
        sqrt_int(-2)


def test_sqrt_is_multiplicative():
    for a, b in [(2, 3), (2, 2), (3, 5), (6, 10), (7, 7)]:
        assert sqrt_int(a) * sqrt_int(b) == sqrt_int(a * b)


def test_arith_dispatch():
    assert arith(e_of(Fraction(1, 3)), e_of(Fraction(2, 3)), "mul") == 1
    assert arith(sqrt_int(2), sqrt_int(2), "mul") == 2
    fifth = sum((e_of(Fraction(k, 5)) for k in range(1, 5)), Cyclo.rational(0))
    assert arith(Cyclo.rational(1), fifth, "add").is_zero()
    with pytest.raises(ZeroDivisionError):
        arith(Cyclo.rational(1), Cyclo.rational(0), "div")


def test_as_rational():
    assert as_rational(e_of(Fraction(1, 2))) == -1
    assert as_rational(e_of(Fraction(1, 3))) is None
    assert as_rational(e_of(Fraction(1, 8)) * e_of(Fraction(-1, 8)) * 5) == 5


def test_serialization_shape():
    assert serialize(Cyclo.rational(0)) == "sum()"
    assert serialize(e_of(Fraction(1, 8))) == "1 * zeta8^1".join(("sum(", ")"))
    s = serialize(sqrt_int(2))
    assert s.startswith("sum(") and "zeta8" in s


small_rationals = st.fractions(min_value=-3, max_value=3, max_denominator=6)


@st.composite
def cyclos(draw):
    m = draw(st.sampled_from([1, 2, 3, 4, 5, 6, 8, 12]))
    support = draw(st.lists(st.tuples(st.integers(0, 23), small_rationals), max_size=4))
    return Cyclo(m, {e % m: c for e, c in support if c})


@given(cyclos(), cyclos(), cyclos())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(cyclos())
def test_inverse(a):
    if not a.is_zero():
        assert a * a.inverse() == 1


@given(cyclos())
def test_conjugation_is_an_involution(a):
    assert a.conjugate().conjugate() == a
    norm = a * a.conjugate()
    assert abs(norm.embed_complex().imag) < 1e-9


@given(cyclos())
def test_canonical_form_is_stable(a):
    # re-normalizing the stored coefficients must not change anything
    again = Cyclo(a.order, dict(a.coeffs))
    assert again.coeffs == a.coeffs
    lifted = a.to_order(a.order * 2)
    assert lifted == a


def test_order_bound_is_enforced():
    from weilinv.config import LIMITS

    old = LIMITS.max_cyclo_order
    LIMITS.max_cyclo_order = 10
    try:
        with pytest.raises(CycloOrderError):
            e_of(Fraction(1, 97)) * e_of(Fraction(1, 89))
    finally:
        LIMITS.max_cyclo_order = old
