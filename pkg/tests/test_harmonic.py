"Tests for `app.services.harmonic`."

from itertools import product

import pytest
from hypothesis import given, strategies as st
from sympy import primerange

from app.errors import NotPrime, VerificationError
from app.models import ResidueClassSumSpec
from app.services.bernoulli import lift_bernoulli
from app.services.harmonic import (
    alt_cubic_sum,
    class_sum,
    composition_floor,
    coprime_harmonic_sum,
    enumerate_signed_compositions,
    full_cubic_sum,
    half_cubic_sum,
    s_class_closed,
    s_class_direct,
    signed_composition_sum,
    signed_square_harmonic,
    telescope_difference,
)
from app.services.modring import make_modulus


@pytest.mark.parametrize("x, p, r, expected", [(1, 3, 1, 1), (2, 5, 1, 3), (1, 3, 2, 3)])
def test_s_class_direct(x: int, p: int, r: int, expected: int) -> None:
    assert s_class_direct(x, p, r).value == expected


@pytest.mark.parametrize("x, p, r, expected", [(1, 3, 2, 3), (1, 7, 1, 1), (4, 5, 2, 20)])
def test_s_class_closed(x: int, p: int, r: int, expected: int) -> None:
    assert s_class_closed(x, p, r).value == expected


def test_class_sums_agree() -> None:
    for p in primerange(3, 48):
        for r in range(1, 4):
            if p ** r > 10 ** 5:
                break
            for x in range(1, p):
                assert s_class_direct(x, p, r) == s_class_closed(x, p, r), (x, p, r)


def test_class_representative_range() -> None:
    with pytest.raises(ValueError):
        s_class_direct(0, 5, 1)
    with pytest.raises(ValueError):
        s_class_closed(5, 5, 2)
    with pytest.raises(NotPrime):
        s_class_direct(1, 9, 1)
    with pytest.raises(VerificationError, match="class representative 5"):
        s_class_closed(5, 5, 2)
    with pytest.raises(VerificationError, match="class representative 0"):
        telescope_difference(0, 7, 1)
    with pytest.raises(VerificationError):
        telescope_difference(3, 3, 2)


def test_class_sum_weights() -> None:
    mod = make_modulus(5, 1)
    # single term i = 2: 2^-2 = 4 mod 5, signed even index keeps its sign
    assert class_sum(ResidueClassSumSpec(x=2, modulus=mod, weight=2, signed=True)).value == 4
    # single term i = 3: -(3^-3) = -3 = 2 mod 5
    assert class_sum(ResidueClassSumSpec(x=3, modulus=mod, weight=3, signed=True)).value == 2


def test_telescope_vanishes() -> None:
    for p in (3, 5, 7, 11):
        for r in (1, 2):
            for x in range(1, p):
                assert telescope_difference(x, p, r).value == 0


def test_cubic_sums() -> None:
    assert half_cubic_sum(3).value == 1
    assert half_cubic_sum(5).value == 3
    assert half_cubic_sum(7).value == 1
    assert alt_cubic_sum(3).value == 1
    assert alt_cubic_sum(5).value == 2
    for p in primerange(3, 200):
        assert full_cubic_sum(p).value == 0


def test_cubic_sums_against_bernoulli() -> None:
    for p in primerange(3, 200):
        b = lift_bernoulli(p)
        assert half_cubic_sum(p).value == (-2 * b) % p
        # alternating sum is -B_{p-3} / 2
        assert (2 * alt_cubic_sum(p).value + b) % p == 0


def test_coprime_harmonic_sum() -> None:
    for p, r in [(3, 1), (5, 1), (3, 2), (7, 2), (5, 3)]:
        assert coprime_harmonic_sum(p, r).value == 0


def test_signed_square_harmonic() -> None:
    # p = 3: terms m = 1, 2 give -1 + 4^-1 = -1 + 1 = 0 mod 3
    assert signed_square_harmonic(3, 1).value == 0
    # p = 5: -1 + 4^-1 - 9^-1 + 16^-1 = -1 + 4 - 4 + 1 = 0 mod 5
    assert signed_square_harmonic(5, 1).value == 0


def test_signed_composition_sum() -> None:
    assert [signed_composition_sum(s) for s in range(6)] == [1, 1, 2, 2, 3, 3]
    with pytest.raises(ValueError):
        signed_composition_sum(-1)


@given(st.integers(min_value=0, max_value=30))
def test_composition_sum_matches_enumeration(s: int) -> None:
    by_triples = sum(
        (-1) ** x for x, y, z in product(range(s + 1), repeat=3) if x + y + z == s
    )
    assert enumerate_signed_compositions(s) == by_triples
    assert signed_composition_sum(s) == by_triples


def test_composition_floor() -> None:
    for m in range(2, 201):
        assert signed_composition_sum(m - 1) == composition_floor(m, 1)
        assert signed_composition_sum(m - 2) == composition_floor(m, 2)
    with pytest.raises(ValueError):
        composition_floor(5, 3)
