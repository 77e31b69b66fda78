import random
from fractions import Fraction

import pytest

from dmlab import Field, FieldMismatchError

QQ = Field.rationals()
F2 = Field.prime(2)
F7 = Field.prime(7)
F2T = Field.rational_functions(2)
F5T = Field.rational_functions(5)


def test_field_labels():
    assert QQ.label == "QQ"
    assert F7.label == "GF(7)"
    assert F2T.label == "GF(2)(t)"


def test_prime_validation():
    for bad in (0, 1, 4, 6, 9, 2**31, 2**31 + 11, -7):
        with pytest.raises(ValueError):
            Field.prime(bad)
    # Miller-Rabin base edge cases and a large prime below the cap
    for good in (2, 3, 61, 7919, 2147483647):
        assert Field.prime(good).characteristic == good
    with pytest.raises(ValueError):
        Field.rational_functions(10)


def test_generator_square():
    t = F2T.t()
    assert str(t * t) == "t^2"
    assert (t * t).payload == ((0, 0, 1), (1,))


def test_char_two_negation():
    one = F2T.one()
    t = F2T.t()
    assert one - t == one + t
    assert (one - t).payload == ((1, 1), (1,))


def test_rational_sum():
    a = QQ.from_fraction(Fraction(2, 3))
    b = QQ.from_fraction(Fraction(3, 4))
    assert (a + b).payload == Fraction(17, 12)
    assert str(a + b) == "17/12"


def test_prime_inverse_against_exhaustive_search():
    for a in range(1, 7):
        inv = F7.from_int(a).inverse()
        oracle = next(b for b in range(1, 7) if a * b % 7 == 1)
        assert inv.payload == oracle
    assert F7.from_int(3).inverse().payload == 5


def test_quotient_canonicalization():
    # (t^2 + t) / t reduces to t + 1
    v = F2T.from_coefficients((0, 1, 1), (0, 1))
    assert v.payload == ((1, 1), (1,))
    assert str(v) == "t + 1"
    inv = v.inverse()
    assert inv.payload == ((1,), (1, 1))
    assert str(inv) == "1/(t + 1)"
    assert (v * inv).is_one()


def test_denominator_made_monic():
    # (1) / (2t) over GF(5): monic denominator t, numerator rescaled
    v = F5T.from_coefficients((1,), (0, 2))
    num, den = v.payload
    assert den[-1] == 1
    assert den == (0, 1)
    assert num == (3,)  # 1/2 = 3 mod 5


def test_integer_embedding():
    assert F2.from_int(-1).payload == 1
    assert QQ.from_int(7).payload == Fraction(7)
    assert F7.from_int(10).payload == 3
    assert F5T.from_int(7).payload == ((2,), (1,))
    assert F5T.from_int(5).is_zero()


def test_division_by_zero():
    for field in (QQ, F7, F2T):
        with pytest.raises(ZeroDivisionError):
            field.zero().inverse()
        with pytest.raises(ZeroDivisionError):
            field.one() / field.zero()
    with pytest.raises(ZeroDivisionError):
        F2T.from_coefficients((1,), ())


def test_field_mismatch():
    with pytest.raises(FieldMismatchError):
        QQ.one() + F7.one()
    with pytest.raises(FieldMismatchError):
        F2T.one() * F5T.one()
    with pytest.raises(ValueError):
        QQ.t()
    with pytest.raises(ValueError):
        F7.from_fraction(Fraction(1, 2))


def test_value_strings():
    assert str(F2T.zero()) == "0"
    assert str(F2T.from_coefficients((0, 1, 1))) == "t^2 + t"
    assert str(F5T.from_coefficients((1, 1), (0, 1))) == "(t + 1)/t"
    assert str(QQ.from_fraction(Fraction(-2, 3))) == "-2/3"
    assert str(F7.from_int(4)) == "4"


def _random_value(rng, field):
    if field.kind.name == "RATIONALS":
        return field.from_fraction(
            Fraction(rng.randint(-30, 30), rng.randint(1, 12))
        )
    if field.kind.name == "PRIME":
        return field.from_int(rng.randrange(field.characteristic))
    p = field.characteristic
    num = [rng.randrange(p) for _ in range(rng.randint(1, 4))]
    den = [rng.randrange(p) for _ in range(rng.randint(1, 3))]
    den[-1] = rng.randrange(1, p)
    return field.from_coefficients(num, den)


def _rf_eval(value, s, p):
    # independent oracle: evaluate the payload quotient at t = s with ints
    num, den = value.payload
    nv = sum(c * pow(s, i, p) for i, c in enumerate(num)) % p
    dv = sum(c * pow(s, i, p) for i, c in enumerate(den)) % p
    if dv == 0:
        return None
    return nv * pow(dv, p - 2, p) % p


def test_field_axioms_random():
    rng = random.Random(0x5EED)
    for field in (QQ, F7, F2T, F5T):
        for _ in range(150):
            a = _random_value(rng, field)
            b = _random_value(rng, field)
            c = _random_value(rng, field)
            assert a + b == b + a
            assert (a + b) + c == a + (b + c)
            assert a * b == b * a
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a + field.zero() == a
            assert a * field.one() == a
            assert (a - a).is_zero()
            if not a.is_zero():
                assert (a * a.inverse()).is_one()


def test_rational_function_ops_against_evaluation_oracle():
    rng = random.Random(0xF00D)
    for field in (F5T, Field.rational_functions(13)):
        p = field.characteristic
        for _ in range(120):
            a = _random_value(rng, field)
            b = _random_value(rng, field)
            for s in range(p):
                av, bv = _rf_eval(a, s, p), _rf_eval(b, s, p)
                if av is None or bv is None:
                    continue
                sv = _rf_eval(a + b, s, p)
                pv = _rf_eval(a * b, s, p)
                if sv is not None:
                    assert sv == (av + bv) % p
                if pv is not None:
                    assert pv == av * bv % p


def test_canonical_payloads_random():
    rng = random.Random(0xCAFE)
    for _ in range(200):
        a = _random_value(rng, F5T)
        b = _random_value(rng, F5T)
        out = rng.choice([a + b, a * b, a - b])
        num, den = out.payload
        assert den and den[-1] == 1
        if not num:
            assert den == (1,)
        # canonical means re-normalizing is the identity
        assert F5T.from_coefficients(num, den) == out


def test_frobenius():
    rng = random.Random(0xBEEF)
    for field in (F2T, F5T):
        p = field.characteristic
        for _ in range(60):
            a = _random_value(rng, field)
            b = _random_value(rng, field)
            assert (a + b) ** p == a**p + b**p


def test_pow():
    rng = random.Random(0xA5A5)
    for field in (QQ, F7, F5T):
        for _ in range(40):
            a = _random_value(rng, field)
            assert (a**0).is_one()
            assert a**1 == a
            n, m = rng.randint(0, 6), rng.randint(0, 6)
            assert a ** (n + m) == a**n * a**m
            if not a.is_zero():
                assert a**-2 == (a.inverse()) ** 2


def test_hash_consistency():
    a = F5T.from_coefficients((0, 1, 1), (0, 1))
    b = F5T.from_coefficients((1, 1))
    assert a == b and hash(a) == hash(b)
    assert len({a, b}) == 1
