"Tests for `app.services.modring` and the Residue model."

from math import gcd

import pytest
from hypothesis import given, strategies as st
from sympy import factorint, mod_inverse

from app.config import Caps
from app.errors import BadExponent, ModulusMismatch, NotInvertible, NotPrime, TooLarge
from app.models import Residue
from app.services.modring import (
    coprime_mask,
    extended_gcd,
    inverse,
    inverse_table,
    is_prime,
    make_modulus,
    prime_power_parts,
    reduce_rational,
)


def test_make_modulus() -> None:
    assert make_modulus(5, 1).modulus == 5
    assert make_modulus(3, 2).modulus == 9
    with pytest.raises(NotPrime):
        make_modulus(4, 1)
    with pytest.raises(NotPrime):
        make_modulus(2, 3)
    with pytest.raises(BadExponent):
        make_modulus(5, 0)


def test_make_modulus_cap() -> None:
    with pytest.raises(TooLarge):
        make_modulus(3, 5, Caps(modulus_cap=100))
    assert make_modulus(3, 4, Caps(modulus_cap=81)).modulus == 81
    # rejected before 1000003^1000 is ever built
    with pytest.raises(TooLarge):
        make_modulus(1000003, 1000)


def test_is_prime() -> None:
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert is_prime(2 ** 61 - 1)
    assert not is_prime(2 ** 61 + 1)


def test_inverse() -> None:
    assert inverse(4, 9) == Residue(value=7, modulus=9)
    assert inverse(1, 25).value == 1
    assert inverse(-1, 7).value == 6
    with pytest.raises(NotInvertible):
        inverse(3, 9)
    with pytest.raises(NotInvertible):
        inverse(0, 5)


def test_inverse_exhaustive() -> None:
    for m in range(2, 100):
        for a in range(1, m):
            if extended_gcd(a, m)[2] == 1:
                assert a * inverse(a, m).value % m == 1
            else:
                with pytest.raises(NotInvertible):
                    inverse(a, m)


@pytest.mark.slow
def test_inverse_exhaustive_to_ten_thousand() -> None:
    for m in range(2, 10 ** 4 + 1):
        for a in range(1, m):
            if gcd(a, m) == 1:
                assert a * inverse(a, m).value % m == 1
            else:
                with pytest.raises(NotInvertible):
                    inverse(a, m)


def test_residue_inverse_matches_modring() -> None:
    for m in (9, 25, 49, 121):
        for a in range(1, m):
            if gcd(a, m) == 1:
                assert Residue.of(a, m).inverse() == inverse(a, m)
            else:
                with pytest.raises(NotInvertible, match="not invertible"):
                    Residue.of(a, m).inverse()


@given(st.integers(min_value=-10 ** 30, max_value=10 ** 30), st.integers(min_value=1, max_value=10 ** 30))
def test_extended_gcd_bezout(a: int, b: int) -> None:
    x, y, g = extended_gcd(a, b)
    assert a * x + b * y == g
    assert g == gcd(a, b)


def test_reduce_rational() -> None:
    assert reduce_rational(7, 4, 5).value == 3
    assert reduce_rational(0, 7, 9).value == 0
    assert reduce_rational(-1, 3, 5).value == 3
    with pytest.raises(NotInvertible):
        reduce_rational(1, 6, 9)


@given(
    st.integers(min_value=-10 ** 20, max_value=10 ** 20),
    st.integers(min_value=1, max_value=10 ** 6),
    st.sampled_from([5, 7, 9, 25, 27, 49, 121, 2 ** 61 - 1]),
)
def test_reduce_rational_property(num: int, den: int, m: int) -> None:
    if extended_gcd(den, m)[2] != 1:
        return
    assert reduce_rational(num, den, m).value * den % m == num % m


MODULI = st.sampled_from([5, 7, 9, 25, 27, 49, 121, 3 ** 10, 2 ** 61 - 1])
NUMERATORS = st.integers(min_value=-10 ** 12, max_value=10 ** 12)


def _unit(m: int):
    return st.integers(min_value=1, max_value=10 ** 9).filter(lambda d: gcd(d, m) == 1)


@given(st.data(), MODULI, NUMERATORS, NUMERATORS)
def test_reduce_rational_respects_ring_operations(data, m: int, n1: int, n2: int) -> None:
    d1 = data.draw(_unit(m), "d1")
    d2 = data.draw(_unit(m), "d2")
    a, b = reduce_rational(n1, d1, m), reduce_rational(n2, d2, m)
    assert reduce_rational(n1 * d2 + n2 * d1, d1 * d2, m) == a + b
    assert reduce_rational(n1 * n2, d1 * d2, m) == a * b


@given(st.data(), MODULI, NUMERATORS)
def test_equal_fractions_share_a_residue(data, m: int, num: int) -> None:
    den = data.draw(_unit(m), "den")
    # any k coprime to m scales to the same fraction
    k = data.draw(_unit(m), "k")
    assert reduce_rational(num * k, den * k, m) == reduce_rational(num, den, m)
    assert reduce_rational(-num, -den, m) == reduce_rational(num, den, m)


def test_residue_arithmetic() -> None:
    a = Residue.of(7, 9)
    b = Residue.of(5, 9)
    assert (a + b).value == 3
    assert (a - b).value == 2
    assert (b - a).value == 7
    assert (a * b).value == 8
    assert (-a).value == 2
    assert (2 * a).value == 5
    assert (1 - a).value == 3
    assert a ** 2 == Residue.of(49, 9)
    assert (a ** -1 * a).value == 1
    assert int(a) == 7
    assert str(a) == "7 (mod 9)"


def test_residue_errors() -> None:
    with pytest.raises(ModulusMismatch):
        Residue.of(1, 9) + Residue.of(1, 5)
    with pytest.raises(NotInvertible):
        Residue.of(3, 9).inverse()
    with pytest.raises(ValueError):
        Residue(value=9, modulus=9)


def test_coprime_mask() -> None:
    mask = coprime_mask(10, 6)
    assert mask.tolist() == [False, True, False, False, False, True, False, True, False, False, False]
    assert coprime_mask(9, 3).sum() == 6


def test_inverse_table() -> None:
    table = inverse_table(20, 9, 3)
    assert len(table) == 21
    for i, value in enumerate(table):
        if i % 3 == 0:
            assert value == 0
        else:
            assert i * value % 9 == 1


def test_prime_power_parts() -> None:
    assert prime_power_parts(360) == [(2, 8), (3, 9), (5, 5)]
    assert prime_power_parts(49) == [(7, 49)]


@given(st.integers(min_value=1, max_value=10 ** 12), st.sampled_from([9, 25, 343, 3 ** 20, 2 ** 61 - 1]))
def test_inverse_matches_sympy(a: int, m: int) -> None:
    if extended_gcd(a, m)[2] != 1:
        return
    assert inverse(a, m).value == int(mod_inverse(a, m))


@given(st.integers(min_value=2, max_value=10 ** 9))
def test_prime_power_parts_multiply_back(n: int) -> None:
    parts = prime_power_parts(n)
    product = 1
    for q, power in parts:
        assert power % q == 0
        product *= power
    assert product == n
    assert [q for q, _ in parts] == sorted(factorint(n))
