"""
Exact arithmetic in Z/m: modulus validation, inversion, rational reduction.

Everything here works on Python integers, so products never overflow no
matter how large the modulus is; the modulus cap only bounds running time.
"""
from typing import List, Tuple, Union

import numpy as np
from sympy import factorint, isprime

from app.config import DEFAULT_CAPS, Caps
from app.errors import BadExponent, NotInvertible, NotPrime, TooLarge
from app.models import PrimePowerModulus, Residue
import logging

logger = logging.getLogger(__name__)

ModulusLike = Union[int, PrimePowerModulus]


def _modulus_value(m: ModulusLike) -> int:
    if isinstance(m, PrimePowerModulus):
        return m.modulus
    return m


def is_prime(n: int) -> bool:
    """Deterministic primality test (BPSW, proven exact below 2^64)."""
    return bool(isprime(n))


def make_modulus(p: int, r: int, caps: Caps = DEFAULT_CAPS) -> PrimePowerModulus:
    """
    Validate (p, r) and build the prime power descriptor.

    Raises:
        NotPrime: p is composite or p < 3
        BadExponent: r < 1
        TooLarge: p^r exceeds the modulus cap
    """
    if p < 3 or not is_prime(p):
        raise NotPrime(f"{p} is not an odd prime")
    if r < 1:
        raise BadExponent(f"exponent must be >= 1, got {r}")
    # p^r >= 2^(r * (bits(p) - 1)); bail out before building huge integers
    if r * (p.bit_length() - 1) > caps.modulus_cap.bit_length():
        raise TooLarge(f"{p}^{r} exceeds modulus cap {caps.modulus_cap}")
    modulus = p ** r
    if modulus > caps.modulus_cap:
        raise TooLarge(f"{p}^{r} = {modulus} exceeds modulus cap {caps.modulus_cap}")
    return PrimePowerModulus(p=p, r=r, modulus=modulus)


def extended_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (x, y, g) with a*x + b*y = g = gcd(a, b)."""
    prev_x, x = 1, 0
    prev_y, y = 0, 1
    while b != 0:
        q = a // b
        a, b = b, a % b
        prev_x, x = x, prev_x - q * x
        prev_y, y = y, prev_y - q * y
    return prev_x, prev_y, a


def inverse(a: int, m: ModulusLike) -> Residue:
    """
    Inverse of a modulo m.

    Raises:
        NotInvertible: gcd(a, m) > 1
    """
    modulus = _modulus_value(m)
    x, _, g = extended_gcd(a % modulus, modulus)
    if g != 1:
        raise NotInvertible(f"{a} is not invertible mod {modulus} (gcd {g})")
    return Residue.of(x, modulus)


def reduce_rational(num: int, den: int, m: ModulusLike) -> Residue:
    """
    Residue of num/den in Z/m, i.e. num * den^-1.

    Raises:
        NotInvertible: gcd(den, m) > 1
    """
    modulus = _modulus_value(m)
    return Residue.of(num * inverse(den, modulus).value, modulus)


def coprime_mask(limit: int, q: int) -> np.ndarray:
    """Boolean mask of length limit + 1 with mask[i] set iff i >= 1 and gcd(i, q) = 1."""
    mask = np.gcd(np.arange(limit + 1, dtype=np.int64), q) == 1
    mask[0] = False
    return mask


def inverse_table(limit: int, m: ModulusLike, q: int) -> List[int]:
    """
    Inverses mod m of every 1 <= i <= limit coprime to q; 0 elsewhere.

    Entries repeat with period m, so only one period is inverted.
    """
    modulus = _modulus_value(m)
    mask = coprime_mask(limit, q)
    period = {}
    table = [0] * (limit + 1)
    for i in np.flatnonzero(mask).tolist():
        reduced = i % modulus
        if reduced not in period:
            period[reduced] = inverse(reduced, modulus).value
        table[i] = period[reduced]
    return table


def prime_power_parts(n: int) -> List[Tuple[int, int]]:
    """Maximal prime powers dividing n, as (q, q^e) sorted by q."""
    return [(q, q ** e) for q, e in sorted(factorint(n).items())]
