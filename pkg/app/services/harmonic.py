"""
Residue-class harmonic sums and the small sums the congruence proofs rest on.

All sums are accumulated term by term as residues (invert, then add), never
as exact rationals.
"""
from app.config import DEFAULT_CAPS, Caps
from app.errors import NotPrime, VerificationError
from app.models import PrimePowerModulus, ResidueClassSumSpec, Residue
from app.services.modring import inverse, is_prime, make_modulus
import logging

logger = logging.getLogger(__name__)


def _require_odd_prime(p: int) -> None:
    if p < 3 or not is_prime(p):
        raise NotPrime(f"{p} is not an odd prime")


def _require_class(x: int, m: PrimePowerModulus) -> None:
    if not 1 <= x <= m.p - 1:
        raise VerificationError(f"class representative {x} outside [1, {m.p - 1}]")


def _class_sum(
    x: int,
    p: int,
    limit: int,
    modulus: int,
    weight: int = 1,
    signed: bool = False,
) -> int:
    """sum of (+-1)^i / i^weight over 1 <= i < limit, i = x (mod p), reduced mod modulus."""
    total = 0
    for i in range(x, limit, p):
        term = pow(inverse(i, modulus).value, weight, modulus)
        total += -term if signed and i % 2 else term
    return total % modulus


def class_sum(spec: ResidueClassSumSpec) -> Residue:
    """Evaluate a residue-class sum described by a ResidueClassSumSpec."""
    m = spec.modulus
    value = _class_sum(spec.x, m.p, m.modulus, m.modulus, spec.weight, spec.signed)
    return Residue.of(value, m.modulus)


def s_class_direct(x: int, p: int, r: int, caps: Caps = DEFAULT_CAPS) -> Residue:
    """
    S(x, p^r) = sum of 1/i over 1 <= i <= p^r - 1 with i = x (mod p), summed directly.

    Args:
        x: class representative, 1 <= x <= p - 1
        p: odd prime
        r: exponent >= 1
        caps: resource caps

    Returns:
        Residue mod p^r
    """
    m = make_modulus(p, r, caps)
    return class_sum(ResidueClassSumSpec(x=x, modulus=m))


def s_class_closed(x: int, p: int, r: int, caps: Caps = DEFAULT_CAPS) -> Residue:
    """Closed form p^{r-1} * x^-1 mod p^r of S(x, p^r)."""
    m = make_modulus(p, r, caps)
    _require_class(x, m)
    return Residue.of(p ** (r - 1) * inverse(x, m).value, m.modulus)


def telescope_difference(x: int, p: int, r: int, caps: Caps = DEFAULT_CAPS) -> Residue:
    """
    S(x, p^{r+1}) - p * S(x, p^r), both summed directly, reduced mod p^{r+1}.

    Expected to vanish for every class x.
    """
    upper = make_modulus(p, r + 1, caps)
    _require_class(x, upper)
    big = _class_sum(x, p, upper.modulus, upper.modulus)
    small = _class_sum(x, p, p ** r, upper.modulus)
    return Residue.of(big - p * small, upper.modulus)


def half_cubic_sum(p: int) -> Residue:
    """sum_{x=1}^{(p-1)/2} x^-3 mod p."""
    _require_odd_prime(p)
    total = sum(pow(inverse(x, p).value, 3, p) for x in range(1, (p - 1) // 2 + 1))
    return Residue.of(total, p)


def full_cubic_sum(p: int) -> Residue:
    """sum_{x=1}^{p-1} x^-3 mod p."""
    _require_odd_prime(p)
    return Residue.of(_class_range_sum(p, weight=3, signed=False), p)


def alt_cubic_sum(p: int) -> Residue:
    """sum_{x=1}^{p-1} (-1)^x x^-3 mod p."""
    _require_odd_prime(p)
    return Residue.of(_class_range_sum(p, weight=3, signed=True), p)


def _class_range_sum(p: int, weight: int, signed: bool) -> int:
    total = 0
    for x in range(1, p):
        term = pow(inverse(x, p).value, weight, p)
        total += -term if signed and x % 2 else term
    return total


def coprime_harmonic_sum(p: int, r: int, caps: Caps = DEFAULT_CAPS) -> Residue:
    """sum of 1/j over 1 <= j < p^r with p not dividing j, mod p^r."""
    m = make_modulus(p, r, caps)
    total = sum(_class_sum(x, p, m.modulus, m.modulus) for x in range(1, p))
    return Residue.of(total, m.modulus)


def signed_square_harmonic(p: int, r: int, caps: Caps = DEFAULT_CAPS) -> Residue:
    """sum of (-1)^m / m^2 over 1 <= m < p^r with p not dividing m, mod p^r."""
    m = make_modulus(p, r, caps)
    total = sum(
        _class_sum(x, p, m.modulus, m.modulus, weight=2, signed=True)
        for x in range(1, p)
    )
    return Residue.of(total, m.modulus)


def signed_composition_sum(s: int) -> int:
    """
    sum of (-1)^x over ordered triples x + y + z = s of non-negative integers.

    Grouped by x: there are s - x + 1 pairs (y, z) for each x.
    """
    if s < 0:
        raise ValueError(f"total must be >= 0, got {s}")
    return sum((-1) ** x * (s - x + 1) for x in range(s + 1))


def enumerate_signed_compositions(s: int) -> int:
    """Same sum as signed_composition_sum, by visiting every triple."""
    if s < 0:
        raise ValueError(f"total must be >= 0, got {s}")
    total = 0
    for x in range(s + 1):
        for y in range(s - x + 1):
            # z = s - x - y is determined
            total += 1 if x % 2 == 0 else -1
    return total


def composition_floor(m: int, shift: int) -> int:
    """
    Floor closed forms for the signed composition counts.

    shift 1: [(m + 1) / 2], the value at s = m - 1
    shift 2: [m / 2], the value at s = m - 2
    """
    if shift == 1:
        return (m + 1) // 2
    if shift == 2:
        return m // 2
    raise ValueError(f"shift must be 1 or 2, got {shift}")
