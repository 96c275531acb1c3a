"""
Named congruence checks and open-question explorations.

Each check evaluates a left-hand side with an oracle or reduced evaluator, a
right-hand side from a closed form, and returns a CheckRecord. A mismatch is
a result (passed=False), never an exception; exceptions only signal caps or
internal errors.
"""
import time
from typing import Iterable, List, Optional, Sequence

from app.config import DEFAULT_CAPS, Caps
from app.errors import TooLarge, VerificationError
from app.models import CheckRecord, ReducedForm, Residue, SumSpec
from app.services import bernoulli, harmonic, triplesum
from app.services.modring import inverse, make_modulus, prime_power_parts
from app.services.triplesum import VisitCounter
import logging

logger = logging.getLogger(__name__)


def _elapsed_ms(started: float) -> float:
    return round((time.perf_counter() - started) * 1000.0, 3)


def _verdict(
    check: str,
    lhs: int,
    rhs: int,
    modulus: Optional[int],
    method: Sequence[str],
    started: float,
    counter: Optional[VisitCounter] = None,
    **params,
) -> CheckRecord:
    record = CheckRecord(
        check=check,
        lhs=lhs,
        rhs=rhs,
        modulus=modulus,
        method=tuple(method),
        passed=lhs == rhs,
        elapsed_ms=_elapsed_ms(started),
        visits=counter.visits if counter is not None else None,
        **params,
    )
    if not record.passed:
        logger.warning(f"{check} failed for {params}: lhs {lhs} != rhs {rhs} (mod {modulus})")
    return record


# ---------------------------------------------------------------------------
# Right-hand sides
# ---------------------------------------------------------------------------

def theorem_rhs(p: int, r: int, m: int = 1, caps: Caps = DEFAULT_CAPS) -> Residue:
    """m * p^{r-1} * 2^-1 * B_{p-3} mod p^r (n / (2p) * B_{p-3} with n = m * p^r)."""
    mod = make_modulus(p, r, caps)
    b = bernoulli.lift_bernoulli(p, caps=caps)
    return Residue.of(m * p ** (r - 1) * inverse(2, mod).value * b, mod.modulus)


def unsigned_rhs(p: int, r: int, caps: Caps = DEFAULT_CAPS) -> Residue:
    """-2 * p^{r-1} * B_{p-3} mod p^r."""
    mod = make_modulus(p, r, caps)
    b = bernoulli.lift_bernoulli(p, caps=caps)
    return Residue.of(-2 * p ** (r - 1) * b, mod.modulus)


# ---------------------------------------------------------------------------
# Theorems and regression baselines
# ---------------------------------------------------------------------------

def check_theorem1(
    p: int,
    r: int,
    use_reduced: bool = False,
    caps: Caps = DEFAULT_CAPS,
) -> CheckRecord:
    """
    Signed triple sum over i + j + k = p^r against p^{r-1} * B_{p-3} / 2.

    With use_reduced, the double-sum, diagonal-sum and closed-form
    evaluators are run as well and must agree with the brute force.
    """
    started = time.perf_counter()
    counter = VisitCounter()
    mod = make_modulus(p, r, caps)
    lhs = triplesum.brute_force_sum(triplesum.theorem_sum_spec(p, r), caps, counter)
    method = ["brute-force"]

    if use_reduced:
        for kind in ("double-sum", "diagonal-sum", "closed-form"):
            reduced = triplesum.evaluate_reduced(ReducedForm(kind=kind, modulus=mod), caps, counter)
            if reduced != lhs:
                raise VerificationError(
                    f"{kind} evaluator gives {reduced.value}, brute force gives {lhs.value} "
                    f"for p={p}, r={r}"
                )
            method.append(kind)

    rhs = theorem_rhs(p, r, caps=caps)
    return _verdict("theorem1", lhs.value, rhs.value, mod.modulus, method, started, counter, p=p, r=r)


def check_theorem2(p: int, r: int, m: int, caps: Caps = DEFAULT_CAPS) -> CheckRecord:
    """Signed triple sum over i + j + k = m * p^r against m * p^{r-1} * B_{p-3} / 2 mod p^r."""
    if m < 1:
        raise ValueError(f"multiplier must be >= 1, got {m}")
    started = time.perf_counter()
    counter = VisitCounter()
    mod = make_modulus(p, r, caps)
    lhs = triplesum.brute_force_sum(triplesum.theorem_sum_spec(p, r, m), caps, counter)
    rhs = theorem_rhs(p, r, m, caps)
    return _verdict(
        "theorem2", lhs.value, rhs.value, mod.modulus, ["brute-force"], started, counter,
        p=p, r=r, m=m, n=m * mod.modulus,
    )


def check_zhao(p: int, caps: Caps = DEFAULT_CAPS) -> CheckRecord:
    """Unsigned triple sum over i + j + k = p against -2 * B_{p-3} mod p."""
    started = time.perf_counter()
    counter = VisitCounter()
    mod = make_modulus(p, 1, caps)
    spec = triplesum.theorem_sum_spec(p, 1, signed=False)
    lhs = triplesum.brute_force_sum(spec, caps, counter)
    rhs = unsigned_rhs(p, 1, caps)
    return _verdict("zhao", lhs.value, rhs.value, mod.modulus, ["brute-force"], started, counter, p=p)


def check_wangcai(p: int, r: int, caps: Caps = DEFAULT_CAPS) -> CheckRecord:
    """Unsigned triple sum over i + j + k = p^r against -2 * p^{r-1} * B_{p-3} mod p^r."""
    started = time.perf_counter()
    counter = VisitCounter()
    mod = make_modulus(p, r, caps)
    spec = triplesum.theorem_sum_spec(p, r, signed=False)
    lhs = triplesum.brute_force_sum(spec, caps, counter)
    rhs = unsigned_rhs(p, r, caps)
    return _verdict(
        "wangcai", lhs.value, rhs.value, mod.modulus, ["brute-force"], started, counter, p=p, r=r
    )


# ---------------------------------------------------------------------------
# Cubic and class sums, Bernoulli properties, composition counts
# ---------------------------------------------------------------------------

def check_half_cubic(p: int, caps: Caps = DEFAULT_CAPS) -> CheckRecord:
    started = time.perf_counter()
    lhs = harmonic.half_cubic_sum(p)
    b = bernoulli.lift_bernoulli(p, caps=caps)
    rhs = Residue.of(-2 * b, p)
    return _verdict("lemma21", lhs.value, rhs.value, p, ["half-cubic", "exact-reduction"], started, p=p)


def check_alt_cubic(p: int, caps: Caps = DEFAULT_CAPS) -> CheckRecord:
    started = time.perf_counter()
    lhs = harmonic.alt_cubic_sum(p)
    b = bernoulli.lift_bernoulli(p, caps=caps)
    rhs = -(inverse(2, p) * b)
    return _verdict("alt-cubic", lhs.value, rhs.value, p, ["direct", "exact-reduction"], started, p=p)


def check_full_cubic(p: int, caps: Caps = DEFAULT_CAPS) -> CheckRecord:
    started = time.perf_counter()
    lhs = harmonic.full_cubic_sum(p)
    return _verdict("full-cubic", lhs.value, 0, p, ["direct"], started, p=p)


def check_bernoulli_cross(p: int, caps: Caps = DEFAULT_CAPS) -> CheckRecord:
    """B_{p-3} mod p by exact reduction against the half-range cubic sum."""
    started = time.perf_counter()
    exact = bernoulli.bernoulli_pm3_mod_p(p, "exact-reduction", caps)
    half = bernoulli.bernoulli_pm3_mod_p(p, "lemma-half-sum", caps)
    return _verdict(
        "bernoulli-cross", exact.value.value, half.value.value, p,
        ["exact-reduction", "lemma-half-sum"], started, p=p,
    )


def check_staudt_clausen(n: int, caps: Caps = DEFAULT_CAPS) -> CheckRecord:
    """Denominator of B_n against the product of primes q with (q - 1) | n."""
    started = time.perf_counter()
    lhs = bernoulli.bernoulli_exact(n, caps).denominator
    rhs = bernoulli.staudt_clausen_denominator(n)
    return _verdict("staudt-clausen", lhs, rhs, None, ["recurrence", "divisors"], started, k=n)


def check_odd_vanishing(n: int, caps: Caps = DEFAULT_CAPS) -> CheckRecord:
    started = time.perf_counter()
    lhs = bernoulli.bernoulli_exact(n, caps).numerator
    return _verdict("odd-vanishing", lhs, 0, None, ["recurrence"], started, k=n)


def check_class_sum(x: int, p: int, r: int, caps: Caps = DEFAULT_CAPS) -> CheckRecord:
    started = time.perf_counter()
    lhs = harmonic.s_class_direct(x, p, r, caps)
    rhs = harmonic.s_class_closed(x, p, r, caps)
    return _verdict(
        "lemma22", lhs.value, rhs.value, lhs.modulus, ["direct", "closed-form"], started,
        p=p, r=r, x=x,
    )


def check_telescope(x: int, p: int, r: int, caps: Caps = DEFAULT_CAPS) -> CheckRecord:
    """S(x, p^{r+1}) - p * S(x, p^r) = 0 mod p^{r+1}, both sums direct."""
    started = time.perf_counter()
    lhs = harmonic.telescope_difference(x, p, r, caps)
    return _verdict("telescope", lhs.value, 0, lhs.modulus, ["direct"], started, p=p, r=r, x=x)


def check_coprime_harmonic(p: int, r: int, caps: Caps = DEFAULT_CAPS) -> CheckRecord:
    started = time.perf_counter()
    lhs = harmonic.coprime_harmonic_sum(p, r, caps)
    return _verdict("coprime-harmonic", lhs.value, 0, lhs.modulus, ["direct"], started, p=p, r=r)


def check_composition(m: int, shift: int, caps: Caps = DEFAULT_CAPS) -> CheckRecord:
    """
    Signed composition count at s = m - shift against its floor closed form.

    The grouped-sum helper must agree with the enumeration; a disagreement
    is an internal error, not a verdict.
    """
    started = time.perf_counter()
    s = m - shift
    enumerated = harmonic.enumerate_signed_compositions(s)
    grouped = harmonic.signed_composition_sum(s)
    if grouped != enumerated:
        raise VerificationError(f"grouped sum {grouped} != enumeration {enumerated} at s={s}")
    rhs = harmonic.composition_floor(m, shift)
    return _verdict(
        "composition-count", enumerated, rhs, None, ["enumeration", "grouped-sum", "floor"],
        started, m=m, k=s,
    )


# ---------------------------------------------------------------------------
# Proof-step identities
# ---------------------------------------------------------------------------

def check_double_sum(p: int, r: int, caps: Caps = DEFAULT_CAPS) -> CheckRecord:
    """Triple sum at p^r against 2 * sum_{j < m} (-1)^m / (j m^2)."""
    started = time.perf_counter()
    counter = VisitCounter()
    lhs = triplesum.brute_force_sum(triplesum.theorem_sum_spec(p, r), caps, counter)
    rhs = triplesum.reduced_double_sum(p, r, caps, counter)
    return _verdict(
        "eq31", lhs.value, rhs.value, lhs.modulus, ["brute-force", "double-sum"], started, counter,
        p=p, r=r,
    )


def check_pair_sum(p: int, r: int, caps: Caps = DEFAULT_CAPS) -> CheckRecord:
    """sum over j + k < p^r of (-1)^{j+k} / (jk(j+k)) against the double sum."""
    started = time.perf_counter()
    counter = VisitCounter()
    lhs = triplesum.pair_sum(p, r, caps, counter)
    rhs = triplesum.reduced_double_sum(p, r, caps, counter)
    return _verdict(
        "pair-sum", lhs.value, rhs.value, lhs.modulus, ["pair-sum", "double-sum"], started, counter,
        p=p, r=r,
    )


def check_triangle_diagonal(p: int, r: int, caps: Caps = DEFAULT_CAPS) -> CheckRecord:
    """2 * (triangular sum) + (diagonal sum) = 0 mod p^r."""
    started = time.perf_counter()
    counter = VisitCounter()
    doubled = triplesum.reduced_double_sum(p, r, caps, counter)
    diagonal = triplesum.diagonal_sum(p, r, caps, counter)
    lhs = doubled + diagonal
    return _verdict(
        "eq32", lhs.value, 0, lhs.modulus, ["double-sum", "diagonal-sum"], started, counter,
        p=p, r=r,
    )


def check_square_split(p: int, r: int, caps: Caps = DEFAULT_CAPS) -> CheckRecord:
    """Full square sum over (j, m) against twice the triangular sum."""
    started = time.perf_counter()
    counter = VisitCounter()
    lhs = triplesum.square_sum(p, r, caps, counter)
    rhs = triplesum.reduced_double_sum(p, r, caps, counter)
    return _verdict(
        "square-split", lhs.value, rhs.value, lhs.modulus, ["square-sum", "double-sum"], started,
        counter, p=p, r=r,
    )


def check_factorization(p: int, r: int, caps: Caps = DEFAULT_CAPS) -> CheckRecord:
    """Square sum against (sum 1/j) * (sum (-1)^m / m^2) - diagonal sum."""
    started = time.perf_counter()
    counter = VisitCounter()
    lhs = triplesum.square_sum(p, r, caps, counter)
    product = harmonic.coprime_harmonic_sum(p, r, caps) * harmonic.signed_square_harmonic(p, r, caps)
    rhs = product - triplesum.diagonal_sum(p, r, caps, counter)
    return _verdict(
        "factorization", lhs.value, rhs.value, lhs.modulus,
        ["square-sum", "coprime-harmonic", "diagonal-sum"], started, counter, p=p, r=r,
    )


def check_diagonal_bernoulli(p: int, r: int, caps: Caps = DEFAULT_CAPS) -> CheckRecord:
    """Diagonal sum against -p^{r-1} * 2^-1 * B_{p-3} mod p^r."""
    started = time.perf_counter()
    counter = VisitCounter()
    lhs = triplesum.diagonal_sum(p, r, caps, counter)
    rhs = -theorem_rhs(p, r, caps=caps)
    return _verdict(
        "eq33", lhs.value, rhs.value, lhs.modulus, ["diagonal-sum", "exact-reduction"], started,
        counter, p=p, r=r,
    )


def check_class_factor(p: int, r: int, caps: Caps = DEFAULT_CAPS) -> CheckRecord:
    """Diagonal sum against its class-factored form (class sums by closed form)."""
    started = time.perf_counter()
    counter = VisitCounter()
    lhs = triplesum.diagonal_sum(p, r, caps, counter)
    rhs = triplesum.class_factored_diagonal(p, r, caps)
    return _verdict(
        "class-factor", lhs.value, rhs.value, lhs.modulus, ["diagonal-sum", "class-factored"],
        started, counter, p=p, r=r,
    )


def check_class_cubic(p: int, r: int, caps: Caps = DEFAULT_CAPS) -> CheckRecord:
    """Class-factored diagonal against p^{r-1} * sum (-1)^x / x^3 lifted from mod p."""
    started = time.perf_counter()
    mod = make_modulus(p, r, caps)
    lhs = triplesum.class_factored_diagonal(p, r, caps)
    rhs = Residue.of(p ** (r - 1) * harmonic.alt_cubic_sum(p).value, mod.modulus)
    return _verdict(
        "class-cubic", lhs.value, rhs.value, mod.modulus, ["class-factored", "alt-cubic"], started,
        p=p, r=r,
    )


def check_reflection(p: int, r: int, caps: Caps = DEFAULT_CAPS) -> CheckRecord:
    started = time.perf_counter()
    counter = VisitCounter()
    lhs, rhs = triplesum.reflection_pair(p, r, caps, counter)
    return _verdict(
        "reflection", lhs.value, rhs.value, lhs.modulus, ["triangular", "reflected"], started,
        counter, p=p, r=r,
    )


def check_bijection(p: int, r: int, caps: Caps = DEFAULT_CAPS) -> CheckRecord:
    started = time.perf_counter()
    counter = VisitCounter()
    lhs, rhs = triplesum.bijection_check(p, r, caps, counter)
    return _verdict(
        "bijection", lhs.value, rhs.value, lhs.modulus, ["brute-force-2n", "brute-force"], started,
        counter, p=p, r=r,
    )


def check_decomposition(p: int, r: int, m: int, caps: Caps = DEFAULT_CAPS) -> CheckRecord:
    """Triple sum at m * p^r against [(m+1)/2] * T_1 + [m/2] * T_2."""
    started = time.perf_counter()
    counter = VisitCounter()
    lhs = triplesum.brute_force_sum(triplesum.theorem_sum_spec(p, r, m), caps, counter)
    rhs = triplesum.theorem2_decomposition(p, r, m, caps, counter)
    return _verdict(
        "decomposition", lhs.value, rhs.value, lhs.modulus, ["brute-force", "decomposition"],
        started, counter, p=p, r=r, m=m, n=m * lhs.modulus,
    )


# ---------------------------------------------------------------------------
# Open questions: residues only, never a verdict
# ---------------------------------------------------------------------------

def explore_q1_point(n: int, caps: Caps = DEFAULT_CAPS) -> CheckRecord:
    """
    sum over i + j + k = n with i, j, k prime to n of (-1)^i / (ijk), mod n.

    The companion `factors` column holds the same value reduced mod each
    maximal prime power dividing n.
    """
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    if n > caps.modulus_cap:
        raise TooLarge(f"n = {n} exceeds modulus cap {caps.modulus_cap}")
    started = time.perf_counter()
    counter = VisitCounter()
    spec = SumSpec(total=n, parts=3, coprime_to=n, signed=True, modulus=n)
    lhs = triplesum.brute_force_sum(spec, caps, counter)
    factors = {power: lhs.value % power for _, power in prime_power_parts(n)}
    return CheckRecord(
        check="q1",
        n=n,
        lhs=lhs.value,
        modulus=n,
        method=("brute-force",),
        elapsed_ms=_elapsed_ms(started),
        visits=counter.visits,
        factors=factors,
    )


def explore_q1(n_range: Iterable[int], caps: Caps = DEFAULT_CAPS) -> List[CheckRecord]:
    return [explore_q1_point(n, caps) for n in n_range]


def explore_q2(parts: int, p: int, r: int, caps: Caps = DEFAULT_CAPS) -> CheckRecord:
    """parts-fold signed sum over i_1 + ... + i_parts = p^r, parts prime to p, mod p^r."""
    if parts < 4:
        raise ValueError(f"parts must be >= 4, got {parts}")
    started = time.perf_counter()
    counter = VisitCounter()
    mod = make_modulus(p, r, caps)
    spec = SumSpec(total=mod.modulus, parts=parts, coprime_to=p, signed=True, modulus=mod.modulus)
    lhs = triplesum.brute_force_sum(spec, caps, counter)
    return CheckRecord(
        check="q2",
        p=p,
        r=r,
        parts=parts,
        lhs=lhs.value,
        modulus=mod.modulus,
        method=("brute-force",),
        elapsed_ms=_elapsed_ms(started),
        visits=counter.visits,
    )


CHECKS = {
    "theorem1": check_theorem1,
    "theorem2": check_theorem2,
    "zhao": check_zhao,
    "wangcai": check_wangcai,
    "lemma21": check_half_cubic,
    "alt-cubic": check_alt_cubic,
    "full-cubic": check_full_cubic,
    "bernoulli-cross": check_bernoulli_cross,
    "staudt-clausen": check_staudt_clausen,
    "odd-vanishing": check_odd_vanishing,
    "lemma22": check_class_sum,
    "telescope": check_telescope,
    "coprime-harmonic": check_coprime_harmonic,
    "composition-count": check_composition,
    "eq31": check_double_sum,
    "pair-sum": check_pair_sum,
    "eq32": check_triangle_diagonal,
    "square-split": check_square_split,
    "factorization": check_factorization,
    "eq33": check_diagonal_bernoulli,
    "class-factor": check_class_factor,
    "class-cubic": check_class_cubic,
    "reflection": check_reflection,
    "bijection": check_bijection,
    "decomposition": check_decomposition,
    "q1": explore_q1_point,
    "q2": explore_q2,
}
