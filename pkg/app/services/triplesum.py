"""
Triple (and n-fold) alternating harmonic sums.

`brute_force_sum` is the oracle: it visits every ordered composition and
stays deliberately naive. The reduced evaluators below it follow the chain
of rewrites that turns the triple sum into a double sum over (j, m), then a
diagonal sum over residue classes, then a closed form in B_{p-3}.
"""
from dataclasses import dataclass
from math import comb
from typing import List, Optional, Tuple

from app.config import DEFAULT_CAPS, Caps
from app.errors import CapExceeded
from app.models import PrimePowerModulus, ReducedForm, Residue, SumSpec
from app.services.bernoulli import lift_bernoulli
from app.services.harmonic import composition_floor
from app.services.modring import inverse, inverse_table, make_modulus
import logging

logger = logging.getLogger(__name__)


@dataclass
class VisitCounter:
    """Number of terms visited by an evaluator."""
    visits: int = 0


def estimated_visits(spec: SumSpec) -> int:
    """Upper bound on the compositions brute_force_sum will visit."""
    if spec.total < spec.parts:
        return 0
    return comb(spec.total - 1, spec.parts - 1)


def _check_visits(estimate: int, caps: Caps, what: str) -> None:
    if estimate > caps.visit_cap:
        raise CapExceeded(f"{what} needs ~{estimate} visits, cap is {caps.visit_cap}")


def _filtered_inverses(spec: SumSpec) -> List[int]:
    table = inverse_table(spec.total, spec.modulus, spec.coprime_to)
    if spec.part_bound is not None:
        for i in range(max(spec.part_bound, 0), spec.total + 1):
            table[i] = 0
    return table


def brute_force_sum(
    spec: SumSpec,
    caps: Caps = DEFAULT_CAPS,
    counter: Optional[VisitCounter] = None,
) -> Residue:
    """
    Sum of (+-1)^{i_1} / (i_1 * ... * i_parts) over every ordered composition
    total = i_1 + ... + i_parts with each part coprime to spec.coprime_to.

    Args:
        spec: the sum to evaluate
        caps: visit cap is checked before enumeration starts
        counter: optional visit accounting

    Returns:
        Residue mod spec.modulus (0 for an empty sum)

    Raises:
        CapExceeded: enumeration would exceed the visit cap
    """
    counter = counter if counter is not None else VisitCounter()
    _check_visits(estimated_visits(spec), caps, f"{spec.parts}-fold sum over {spec.total}")

    if spec.total < spec.parts:
        return Residue.of(0, spec.modulus)

    inv = _filtered_inverses(spec)
    modulus = spec.modulus
    total = spec.total

    if spec.parts == 3:
        result = 0
        for i1 in range(1, total - 1):
            a = inv[i1]
            if not a:
                continue
            inner = 0
            for i2 in range(1, total - i1):
                inner += inv[i2] * inv[total - i1 - i2]
            counter.visits += total - i1 - 1
            term = a * inner
            result += -term if spec.signed and i1 % 2 else term
            result %= modulus
        return Residue.of(result, modulus)

    def tail(remaining: int, k: int) -> int:
        # sum of inv[i] products over compositions of `remaining` into k parts
        if k == 1:
            counter.visits += 1
            return inv[remaining]
        acc = 0
        for i in range(1, remaining - k + 2):
            if inv[i]:
                acc += inv[i] * tail(remaining - i, k - 1)
        return acc % modulus

    result = 0
    for i1 in range(1, total - spec.parts + 2):
        a = inv[i1]
        if not a:
            continue
        term = a * tail(total - i1, spec.parts - 1)
        result += -term if spec.signed and i1 % 2 else term
        if counter.visits > caps.visit_cap:
            raise CapExceeded(f"enumeration passed the visit cap {caps.visit_cap}")
    return Residue.of(result, modulus)


def theorem_sum_spec(p: int, r: int, m: int = 1, signed: bool = True) -> SumSpec:
    """SumSpec of the triple sum over i + j + k = m * p^r, parts prime to p, mod p^r."""
    modulus = p ** r
    return SumSpec(total=m * modulus, parts=3, coprime_to=p, signed=signed, modulus=modulus)


def _tables(p: int, r: int, caps: Caps) -> Tuple[PrimePowerModulus, List[int]]:
    m = make_modulus(p, r, caps)
    _check_visits((m.modulus - 1) ** 2, caps, f"double sum mod {m.modulus}")
    return m, inverse_table(m.modulus - 1, m, p)


def _signed(term: int, parity: int) -> int:
    return -term if parity % 2 else term


def triangular_sum(
    p: int,
    r: int,
    caps: Caps = DEFAULT_CAPS,
    counter: Optional[VisitCounter] = None,
) -> Residue:
    """sum of (-1)^m / (j m^2) over 1 <= j < m < p^r with j, m, m - j prime to p."""
    counter = counter if counter is not None else VisitCounter()
    mod, inv = _tables(p, r, caps)
    M = mod.modulus
    total = 0
    for m in range(2, M):
        if not inv[m]:
            continue
        inner = 0
        for j in range(1, m):
            if inv[m - j]:
                inner += inv[j]
        counter.visits += m - 1
        total += _signed(inner * inv[m] * inv[m], m)
    return Residue.of(total, M)


def reduced_double_sum(
    p: int,
    r: int,
    caps: Caps = DEFAULT_CAPS,
    counter: Optional[VisitCounter] = None,
) -> Residue:
    """2 * sum_{j < m} (-1)^m / (j m^2); congruent to the triple sum at p^r."""
    return 2 * triangular_sum(p, r, caps, counter)


def reflected_triangular_sum(
    p: int,
    r: int,
    caps: Caps = DEFAULT_CAPS,
    counter: Optional[VisitCounter] = None,
) -> Residue:
    """sum of (-1)^j / (m j^2) over the same (j, m) range as triangular_sum."""
    counter = counter if counter is not None else VisitCounter()
    mod, inv = _tables(p, r, caps)
    M = mod.modulus
    total = 0
    for m in range(2, M):
        if not inv[m]:
            continue
        inner = 0
        for j in range(1, m):
            if inv[m - j]:
                inner += _signed(inv[j] * inv[j], j)
        counter.visits += m - 1
        total += inner * inv[m]
    return Residue.of(total, M)


def reflection_pair(
    p: int,
    r: int,
    caps: Caps = DEFAULT_CAPS,
    counter: Optional[VisitCounter] = None,
) -> Tuple[Residue, Residue]:
    """The triangular sum and its image under (j, m) -> (p^r - m, p^r - j)."""
    return (
        triangular_sum(p, r, caps, counter),
        reflected_triangular_sum(p, r, caps, counter),
    )


def diagonal_sum(
    p: int,
    r: int,
    caps: Caps = DEFAULT_CAPS,
    counter: Optional[VisitCounter] = None,
) -> Residue:
    """sum of (-1)^m / (j m^2) over 1 <= j, m < p^r, j prime to p, j = m (mod p)."""
    counter = counter if counter is not None else VisitCounter()
    mod, inv = _tables(p, r, caps)
    M = mod.modulus
    total = 0
    for x in range(1, p):
        left = sum(inv[j] for j in range(x, M, p))
        right = 0
        for m in range(x, M, p):
            right += _signed(inv[m] * inv[m], m)
        counter.visits += 2 * len(range(x, M, p))
        total += left * right
    return Residue.of(total, M)


def square_sum(
    p: int,
    r: int,
    caps: Caps = DEFAULT_CAPS,
    counter: Optional[VisitCounter] = None,
) -> Residue:
    """sum of (-1)^m / (j m^2) over all 1 <= j, m < p^r with j, m, m - j prime to p."""
    counter = counter if counter is not None else VisitCounter()
    mod, inv = _tables(p, r, caps)
    M = mod.modulus
    total = 0
    for m in range(1, M):
        if not inv[m]:
            continue
        inner = 0
        for j in range(1, M):
            if (m - j) % p:
                inner += inv[j]
        counter.visits += M - 1
        total += _signed(inner * inv[m] * inv[m], m)
    return Residue.of(total, M)


def pair_sum(
    p: int,
    r: int,
    caps: Caps = DEFAULT_CAPS,
    counter: Optional[VisitCounter] = None,
) -> Residue:
    """sum of (-1)^{j+k} / (j k (j+k)) over j + k < p^r with j, k, j + k prime to p."""
    counter = counter if counter is not None else VisitCounter()
    mod, inv = _tables(p, r, caps)
    M = mod.modulus
    total = 0
    for s in range(2, M):
        if not inv[s]:
            continue
        inner = 0
        for j in range(1, s):
            inner += inv[j] * inv[s - j]
        counter.visits += s - 1
        total += _signed(inner * inv[s], s)
    return Residue.of(total, M)


def class_factored_diagonal(p: int, r: int, caps: Caps = DEFAULT_CAPS) -> Residue:
    """
    p^{r-1} * sum_{x=1}^{p-1} x^-1 * sum_{m = x (mod p), m < p^r} (-1)^m / m^2.

    The diagonal sum with each class harmonic sum replaced by its closed form.
    """
    mod, inv = _tables(p, r, caps)
    M = mod.modulus
    total = 0
    for x in range(1, p):
        inner = 0
        for m in range(x, M, p):
            inner += _signed(inv[m] * inv[m], m)
        total += inverse(x, M).value * inner
    return Residue.of(p ** (r - 1) * total, M)


def closed_form(p: int, r: int, caps: Caps = DEFAULT_CAPS) -> Residue:
    """p^{r-1} * 2^-1 * B_{p-3} mod p^r, with B_{p-3} from the half-range cubic sum."""
    mod = make_modulus(p, r, caps)
    b = lift_bernoulli(p, method="lemma-half-sum", caps=caps)
    return Residue.of(p ** (r - 1) * inverse(2, mod).value * b, mod.modulus)


def evaluate_reduced(
    form: ReducedForm,
    caps: Caps = DEFAULT_CAPS,
    counter: Optional[VisitCounter] = None,
) -> Residue:
    """Evaluate the triple sum at p^r through one of the reduced forms."""
    p, r = form.modulus.p, form.modulus.r
    if form.kind == "double-sum":
        return reduced_double_sum(p, r, caps, counter)
    if form.kind == "diagonal-sum":
        return -diagonal_sum(p, r, caps, counter)
    if form.kind == "closed-form":
        if counter is not None:
            counter.visits += (p - 1) // 2
        return closed_form(p, r, caps)
    raise ValueError(f"Unknown reduced form: {form.kind}")


def bijection_check(
    p: int,
    r: int,
    caps: Caps = DEFAULT_CAPS,
    counter: Optional[VisitCounter] = None,
) -> Tuple[Residue, Residue]:
    """
    (sum over i + j + k = 2p^r with every part < p^r, sum over i + j + k = p^r).

    Both signed with (-1)^i, parts prime to p, reduced mod p^r.
    """
    mod = make_modulus(p, r, caps)
    M = mod.modulus
    doubled = SumSpec(
        total=2 * M, parts=3, coprime_to=p, signed=True, modulus=M, part_bound=M
    )
    return (
        brute_force_sum(doubled, caps, counter),
        brute_force_sum(theorem_sum_spec(p, r), caps, counter),
    )


def theorem2_decomposition(
    p: int,
    r: int,
    m: int,
    caps: Caps = DEFAULT_CAPS,
    counter: Optional[VisitCounter] = None,
) -> Residue:
    """
    [(m+1)/2] * T_1 + [m/2] * T_2 mod p^r.

    T_1 is the triple sum at p^r and T_2 the bounded sum at 2p^r; this
    regroups the sum at m * p^r by the quotients of each part by p^r.
    """
    if m < 1:
        raise ValueError(f"multiplier must be >= 1, got {m}")
    doubled, single = bijection_check(p, r, caps, counter)
    return composition_floor(m, 1) * single + composition_floor(m, 2) * doubled
