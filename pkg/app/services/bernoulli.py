"""
Bernoulli numbers, exactly and modulo primes.

Convention: x/(e^x - 1) = sum B_n x^n / n!, so B_1 = -1/2 and B_2 = 1/6.
B_{p-3} mod p is available by two independent routes: reduction of the exact
rational, and the half-range cubic sum (-1/2) * sum_{x <= (p-1)/2} x^-3.
"""
from fractions import Fraction
from math import lcm
from threading import Lock
from typing import List

from sympy import divisors

from app.config import DEFAULT_CAPS, Caps
from app.errors import CapExceeded, NotPrime
from app.models import BernoulliMethod, BernoulliModP, ExactRational
from app.services.harmonic import half_cubic_sum
from app.services.modring import inverse, is_prime, reduce_rational
import logging

logger = logging.getLogger(__name__)

# B_0.. computed so far, the lcm of their denominators, and the Pascal row
# C(len(_memo), k) the next step extends
_memo: List[Fraction] = [Fraction(1)]
_common = 1
_row: List[int] = [1, 1]
_memo_lock = Lock()


def _fill(n: int) -> None:
    """Extend the memo to B_n; odd indices go through the recurrence too."""
    global _common, _row

    with _memo_lock:
        if len(_memo) > n:
            return
        row, common = _row, _common
        while len(_memo) <= n:
            idx = len(_memo)
            # row idx + 1 of Pascal's triangle
            row = [1] + [row[k - 1] + row[k] for k in range(1, len(row))] + [1]
            # sum_{k < idx} C(idx + 1, k) B_k over the common denominator
            total = 0
            for k, b in enumerate(_memo):
                if b:
                    total += row[k] * b.numerator * (common // b.denominator)
            value = Fraction(-total, common * (idx + 1))
            _memo.append(value)
            common = lcm(common, value.denominator)
        _row, _common = row, common
        logger.debug(f"Bernoulli memo filled up to B_{len(_memo) - 1}")


def bernoulli_table(n: int, caps: Caps = DEFAULT_CAPS) -> List[ExactRational]:
    """
    Exact B_0..B_n.

    Raises:
        CapExceeded: n above the configured Bernoulli cap
    """
    if n < 0:
        raise ValueError(f"index must be >= 0, got {n}")
    if n > caps.bernoulli_cap:
        raise CapExceeded(f"B_{n} requested, cap is {caps.bernoulli_cap}")
    _fill(n)
    return [ExactRational.from_fraction(value) for value in _memo[: n + 1]]


def bernoulli_exact(n: int, caps: Caps = DEFAULT_CAPS) -> ExactRational:
    """
    Exact B_n from sum_{k=0}^{n} C(n+1, k) B_k = 0, B_0 = 1.

    Raises:
        CapExceeded: n above the configured Bernoulli cap
    """
    if n < 0:
        raise ValueError(f"index must be >= 0, got {n}")
    if n > caps.bernoulli_cap:
        raise CapExceeded(f"B_{n} requested, cap is {caps.bernoulli_cap}")
    _fill(n)
    return ExactRational.from_fraction(_memo[n])


def bernoulli_pm3_mod_p(
    p: int,
    method: BernoulliMethod = "exact-reduction",
    caps: Caps = DEFAULT_CAPS,
) -> BernoulliModP:
    """
    B_{p-3} mod p.

    Args:
        p: odd prime
        method: "exact-reduction" reduces the exact rational (von Staudt-Clausen
            keeps its denominator prime to p), "lemma-half-sum" uses
            B_{p-3} = -(1/2) * sum_{x=1}^{(p-1)/2} x^-3 (mod p)
        caps: resource caps (exact-reduction needs p - 3 <= bernoulli_cap)

    Returns:
        BernoulliModP with the residue and the method tag
    """
    if p < 3 or not is_prime(p):
        raise NotPrime(f"{p} is not an odd prime")

    if method == "exact-reduction":
        value = bernoulli_exact(p - 3, caps)
        reduced = reduce_rational(value.numerator, value.denominator, p)
    elif method == "lemma-half-sum":
        reduced = -(inverse(2, p) * half_cubic_sum(p))
    else:
        raise ValueError(f"Unknown Bernoulli method: {method}")

    return BernoulliModP(p=p, value=reduced, method=method)


def lift_bernoulli(
    p: int,
    method: BernoulliMethod = "exact-reduction",
    caps: Caps = DEFAULT_CAPS,
) -> int:
    """
    Canonical integer lift in [0, p) of B_{p-3} mod p.

    Any lift gives the same p^{r-1} * b residue mod p^r, so this is all the
    right-hand sides of the prime power congruences need.
    """
    return bernoulli_pm3_mod_p(p, method, caps).value.value


def staudt_clausen_denominator(n: int) -> int:
    """Product of the primes q with (q - 1) | n, for even n >= 2."""
    if n < 2 or n % 2:
        raise ValueError(f"expected an even index >= 2, got {n}")
    product = 1
    for d in divisors(n):
        if is_prime(d + 1):
            product *= d + 1
    return product
