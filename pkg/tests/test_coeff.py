"""Exact cyclotomic arithmetic against an independent reduction oracle."""

import random
from fractions import Fraction

import pytest

from suspensia import (
    CoefficientError,
    CyclotomicField,
    CyclotomicNumber,
    QQ,
    field_from_text,
    root_of_unity,
)

from helpers import cyclo_from_power_oracle, random_scalar, reduce_cyclotomic_oracle


def test_root_of_unity_power_p_is_one():
    assert root_of_unity(3, 3) == 1
    assert root_of_unity(5, 5) == 1


def test_roots_sum_to_zero():
    for p in (2, 3, 5, 7):
        total = sum(root_of_unity(p, i) for i in range(1, p + 1))
        assert total == 0


def test_product_of_roots_reduces_via_oracle():
    # z * z^2 = z^3 = 1 for p = 3; frozen via oracle reduction of z^3
    expected = CyclotomicNumber(3, reduce_cyclotomic_oracle(3, [0, 0, 0, 1]))
    assert root_of_unity(3, 1) * root_of_unity(3, 2) == expected
    assert expected == 1


def test_non_prime_order_rejected():
    with pytest.raises(CoefficientError):
        root_of_unity(4, 1)
    with pytest.raises(CoefficientError):
        root_of_unity(1, 1)
    with pytest.raises(CoefficientError):
        CyclotomicField(6)


def test_root_index_range():
    with pytest.raises(CoefficientError):
        root_of_unity(3, 0)
    with pytest.raises(CoefficientError):
        root_of_unity(3, 4)


def test_inverse_of_primitive_root():
    z = root_of_unity(3, 1)
    inv = z.inverse()
    # z^2 = -1 - z by the oracle
    assert inv == cyclo_from_power_oracle(3, 2)
    assert inv == CyclotomicNumber(3, [-1, -1])
    assert z * inv == 1


def test_identity_and_zero():
    z = root_of_unity(5, 2)
    one = CyclotomicNumber.from_rational(5, 1)
    assert z * one == z
    assert z + 0 == z
    assert not (z - z)
    with pytest.raises(CoefficientError):
        (z - z).inverse()


def test_mixed_orders_rejected():
    with pytest.raises(CoefficientError):
        root_of_unity(3, 1) + root_of_unity(5, 1)


def test_product_of_all_roots_is_elementary_symmetric_sign():
    # the product of all p-th roots of unity is (-1)^(p+1)
    for p in (2, 3, 5, 7):
        prod = CyclotomicNumber.from_rational(p, 1)
        for i in range(1, p + 1):
            prod = prod * root_of_unity(p, i)
        assert prod == (-1) ** (p + 1)


def test_power_sums_vanish():
    for p in (2, 3, 5, 7):
        for k in range(1, p):
            total = sum(root_of_unity(p, i) ** k for i in range(1, p + 1))
            assert total == 0, (p, k)


def test_elementary_symmetric_by_expanding_product():
    # expand prod (t - e_i) as dense lists over the cyclotomic field and
    # compare with t^p - 1
    for p in (2, 3, 5, 7):
        field = CyclotomicField(p)
        poly = [field.one]
        for i in range(1, p + 1):
            eps = root_of_unity(p, i)
            out = [field.zero] * (len(poly) + 1)
            for d, c in enumerate(poly):
                out[d + 1] = out[d + 1] + c
                out[d] = out[d] - eps * c
            poly = out
        expected = [field.zero] * (p + 1)
        expected[0] = field.coerce(-1)
        expected[p] = field.one
        assert poly == expected


def test_field_axioms_random():
    rng = random.Random(7)
    for p in (3, 5):
        field = CyclotomicField(p)
        for _ in range(100):
            a = random_scalar(rng, field)
            b = random_scalar(rng, field)
            c = random_scalar(rng, field)
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a + b == b + a
            assert a * b == b * a
            if a:
                assert a * a.inverse() == 1
                assert (a * b) / a == b


def test_power_with_negative_exponent():
    z = root_of_unity(5, 3)
    assert z ** -1 == z.inverse()
    assert z ** -2 == (z * z).inverse()
    assert z ** 0 == 1


def test_rational_detection_and_hash():
    r = CyclotomicNumber.from_rational(3, Fraction(2, 3))
    assert r.is_rational()
    assert r.rational_value() == Fraction(2, 3)
    assert hash(r) == hash(Fraction(2, 3))
    z = root_of_unity(3, 1)
    assert not z.is_rational()
    with pytest.raises(CoefficientError):
        z.rational_value()


def test_text_rendering():
    assert str(root_of_unity(3, 2)) == "-1 - z@3"
    assert str(root_of_unity(3, 1)) == "z@3"
    assert str(CyclotomicNumber.from_rational(5, 0)) == "0"
    assert str(CyclotomicNumber(5, [Fraction(1, 2), 0, 3, 0])) == "1/2 + 3*z@5^2"


def test_field_descriptors():
    assert field_from_text("Q") is QQ
    assert field_from_text("Q(z@7)") == CyclotomicField(7)
    with pytest.raises(CoefficientError):
        field_from_text("Q(z@8)")
    with pytest.raises(CoefficientError):
        field_from_text("R")
    assert QQ.coerce(3) == Fraction(3)
    with pytest.raises(CoefficientError):
        QQ.coerce(root_of_unity(3, 1))
    assert QQ.coerce(CyclotomicNumber.from_rational(3, 2)) == 2
