"Tests for `app.services.triplesum`: the brute-force oracle and the reduced evaluators."

from fractions import Fraction
from itertools import product
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from app.config import Caps
from app.errors import CapExceeded
from app.models import ReducedForm, SumSpec
from app.services.modring import make_modulus, reduce_rational
from app.services.triplesum import (
    VisitCounter,
    bijection_check,
    brute_force_sum,
    class_factored_diagonal,
    closed_form,
    diagonal_sum,
    estimated_visits,
    evaluate_reduced,
    pair_sum,
    reduced_double_sum,
    reflection_pair,
    square_sum,
    theorem2_decomposition,
    theorem_sum_spec,
)

SMALL_GRID = [(3, 1), (5, 1), (7, 1), (11, 1), (13, 1), (3, 2), (5, 2), (3, 3)]


def exact_oracle(total: int, parts: int, q: int, signed: bool, modulus: int) -> int:
    """Exact rational sum over every composition, reduced at the end."""
    value = Fraction(0)
    for head in product(range(1, total), repeat=parts - 1):
        last = total - sum(head)
        composition = head + (last,)
        if last < 1 or any(gcd(i, q) != 1 for i in composition):
            continue
        denominator = 1
        for i in composition:
            denominator *= i
        sign = -1 if signed and composition[0] % 2 else 1
        value += Fraction(sign, denominator)
    return reduce_rational(value.numerator, value.denominator, modulus).value


@pytest.mark.parametrize(
    "total, q, signed, modulus, expected",
    [
        (3, 3, True, 3, 2),
        (5, 5, True, 5, 3),
        (5, 5, False, 5, 3),
        (9, 3, True, 9, 6),
        (6, 6, True, 6, 0),
    ],
)
def test_brute_force_anchors(total: int, q: int, signed: bool, modulus: int, expected: int) -> None:
    spec = SumSpec(total=total, parts=3, coprime_to=q, signed=signed, modulus=modulus)
    assert brute_force_sum(spec).value == expected


def test_brute_force_more_parts() -> None:
    spec = SumSpec(total=5, parts=4, coprime_to=5, signed=True, modulus=5)
    assert brute_force_sum(spec).value == 4
    # 3 cannot be split into four positive parts
    spec = SumSpec(total=3, parts=4, coprime_to=3, signed=True, modulus=3)
    assert brute_force_sum(spec).value == 0


@settings(max_examples=40, deadline=None)
@given(
    st.integers(min_value=3, max_value=16),
    st.sampled_from([3, 4]),
    st.sampled_from([(3, 9), (5, 25), (7, 7), (5, 5)]),
    st.booleans(),
)
def test_brute_force_matches_exact_rationals(total: int, parts: int, prime_mod, signed: bool) -> None:
    q, modulus = prime_mod
    spec = SumSpec(total=total, parts=parts, coprime_to=q, signed=signed, modulus=modulus)
    assert brute_force_sum(spec).value == exact_oracle(total, parts, q, signed, modulus)


def test_visit_cap() -> None:
    spec = theorem_sum_spec(31, 2)
    assert estimated_visits(spec) > 10 ** 5
    with pytest.raises(CapExceeded):
        brute_force_sum(spec, Caps(visit_cap=10 ** 5))
    with pytest.raises(CapExceeded):
        diagonal_sum(31, 2, Caps(visit_cap=10 ** 5))


def test_visit_counter() -> None:
    counter = VisitCounter()
    brute_force_sum(theorem_sum_spec(5, 1), counter=counter)
    # i1 in 1..3, each visiting 5 - i1 - 1 pairs
    assert counter.visits == 3 + 2 + 1


@pytest.mark.parametrize("p, r, expected", [(3, 1, 2), (5, 1, 3), (3, 2, 6)])
def test_reduced_double_sum(p: int, r: int, expected: int) -> None:
    assert reduced_double_sum(p, r).value == expected


def test_diagonal_sum_anchor() -> None:
    assert diagonal_sum(3, 1).value == 1


@pytest.mark.parametrize("p, r", SMALL_GRID)
def test_reduced_evaluators_match_brute_force(p: int, r: int) -> None:
    brute = brute_force_sum(theorem_sum_spec(p, r))
    modulus = make_modulus(p, r)
    for kind in ("double-sum", "diagonal-sum", "closed-form"):
        assert evaluate_reduced(ReducedForm(kind=kind, modulus=modulus)) == brute, kind
    assert pair_sum(p, r) == brute


@pytest.mark.parametrize("p, r", SMALL_GRID)
def test_proof_identities(p: int, r: int) -> None:
    doubled = reduced_double_sum(p, r)
    diagonal = diagonal_sum(p, r)
    assert (doubled + diagonal).value == 0
    assert square_sum(p, r) == doubled
    assert class_factored_diagonal(p, r) == diagonal
    assert closed_form(p, r) == -diagonal
    triangular, reflected = reflection_pair(p, r)
    assert triangular == reflected


@pytest.mark.parametrize("p, r", [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2)])
def test_bijection(p: int, r: int) -> None:
    doubled, single = bijection_check(p, r)
    assert doubled == single


def test_bijection_anchor() -> None:
    doubled, single = bijection_check(3, 1)
    assert doubled.value == single.value == 2


@pytest.mark.parametrize("p, r, m", [(3, 1, 2), (3, 1, 5), (5, 1, 3), (3, 2, 4), (7, 1, 6)])
def test_decomposition_matches_brute_force(p: int, r: int, m: int) -> None:
    brute = brute_force_sum(theorem_sum_spec(p, r, m))
    assert theorem2_decomposition(p, r, m) == brute


def test_decomposition_rejects_bad_multiplier() -> None:
    with pytest.raises(ValueError):
        theorem2_decomposition(3, 1, 0)
