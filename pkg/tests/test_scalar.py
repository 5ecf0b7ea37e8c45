from fractions import Fraction

import pytest

from qweb.scalar import (
    ONE,
    Q,
    ZERO,
    DenominatorVanishes,
    LaurentPoly,
    RatFunc,
    ZSpec,
    evaluate_at,
    qbinom,
    qint,
    zbracket,
)

POINTS = [Fraction(2), Fraction(3, 2), Fraction(-5, 7)]


def poly(coeffs):
    return RatFunc.poly(LaurentPoly(coeffs))


def direct_qint(s, d, t):
    """[s]_d at q = t straight from the quotient."""
    return (t ** (d * s) - t ** (-d * s)) / (t**d - t ** (-d))


def direct_qbinom(s, k, d, t):
    num = Fraction(1)
    den = Fraction(1)
    for j in range(k):
        num *= direct_qint(s - j, d, t)
        den *= direct_qint(j + 1, d, t)
    return num / den


def test_qint_small_values():
    assert qint(0) == ZERO
    assert qint(2) == Q + Q.inverse()
    assert qint(-3) == -poly({2: 1, 0: 1, -2: 1})


@pytest.mark.parametrize("s", range(-6, 7))
@pytest.mark.parametrize("d", [1, 2, 3])
def test_qint_against_quotient(s, d):
    for t in POINTS:
        assert evaluate_at(qint(s, d), t) == direct_qint(s, d, t)


def test_qbinom_examples():
    assert qbinom(5, 0) == ONE
    assert qbinom(1, 2) == ZERO
    assert qbinom(4, 2) == poly({4: 1, 2: 1, 0: 2, -2: 1, -4: 1})


@pytest.mark.parametrize("s", range(-3, 7))
@pytest.mark.parametrize("k", range(0, 5))
def test_qbinom_against_quotient(s, k):
    for d in (1, 2):
        val = qbinom(s, k, d)
        assert val.is_poly()
        for t in POINTS:
            assert evaluate_at(val, t) == direct_qbinom(s, k, d, t)


def test_qbinom_pascal():
    for s in range(1, 7):
        for k in range(1, s):
            lhs = qbinom(s, k)
            rhs = Q ** (-k) * qbinom(s - 1, k) + Q ** (s - k) * qbinom(s - 1, k - 1)
            assert lhs == rhs


def test_zbracket_examples():
    assert zbracket(ZSpec.ext(3), 0) == poly({2: 1, 0: 1, -2: 1})
    assert zbracket(ZSpec.sym(3), -1) == qint(4)


@pytest.mark.parametrize("n", range(1, 9))
@pytest.mark.parametrize("s", range(-3, 4))
def test_zbracket_specializations(n, s):
    assert zbracket(ZSpec.ext(n), s) == qint(n + s)
    assert zbracket(ZSpec.sym(n), s) == qint(n - s)


@pytest.mark.parametrize("n", range(1, 9))
def test_zbracket_d2(n):
    val = zbracket(ZSpec.ext(n), 0, 2)
    if n % 2 == 0:
        assert val == qint(n // 2, 2)
    for t in POINTS:
        assert evaluate_at(val, t) == (t**n - t ** (-n)) / (t**2 - t ** (-2))


def test_evaluate_at():
    assert evaluate_at(qint(2), 2) == Fraction(5, 2)
    assert evaluate_at(qint(3), 1) == 3
    with pytest.raises(DenominatorVanishes):
        evaluate_at(ONE / (Q - Q.inverse()), 1)


def test_evaluate_mod_p_matches_rational():
    p = 10007
    f = qbinom(5, 2) / (Q + 3)
    for t in (2, 5, 11):
        exact = evaluate_at(f, t)
        assert evaluate_at(f, t, p) == exact.numerator * pow(exact.denominator, -1, p) % p


def test_canonical_form_is_unique():
    a = (Q**2 - Q**-2) / (Q - Q.inverse())
    assert a == Q + Q.inverse()
    assert a.is_poly()
    assert hash(a) == hash(Q + Q.inverse())


def test_bar_involution():
    assert qint(3).bar() == qint(3)
    assert Q.bar() == Q.inverse()
