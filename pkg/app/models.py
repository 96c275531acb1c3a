"""
Pydantic domain models shared by the services, the CLI and the HTTP layer.

All models are frozen: values are immutable after construction, so they can
be handed to any number of workers without coordination.
"""
from fractions import Fraction
from math import gcd
from typing import Dict, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.errors import ModulusMismatch

BernoulliMethod = Literal["exact-reduction", "lemma-half-sum"]
ReducedKind = Literal["double-sum", "diagonal-sum", "closed-form"]


class PrimePowerModulus(BaseModel):
    """
    Validated prime power p^r with p >= 3.

    Build it through `app.services.modring.make_modulus`, which runs the
    primality test and the resource cap; this model only checks that the
    cached modulus matches.
    """
    model_config = ConfigDict(frozen=True)

    p: int = Field(ge=3)
    r: int = Field(ge=1)
    modulus: int

    @model_validator(mode="after")
    def _modulus_matches(self) -> "PrimePowerModulus":
        if self.modulus != self.p ** self.r:
            raise ValueError(f"modulus {self.modulus} != {self.p}^{self.r}")
        return self


class Residue(BaseModel):
    """Canonical representative of a class in Z/modulus, 0 <= value < modulus."""
    model_config = ConfigDict(frozen=True)

    value: int
    modulus: int = Field(gt=0)

    @model_validator(mode="after")
    def _canonical(self) -> "Residue":
        if not 0 <= self.value < self.modulus:
            raise ValueError(f"{self.value} is not reduced mod {self.modulus}")
        return self

    @classmethod
    def of(cls, value: int, modulus: int) -> "Residue":
        return cls(value=value % modulus, modulus=modulus)

    def _other_value(self, other):
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise ModulusMismatch(
                    f"Cannot combine residues mod {self.modulus} and mod {other.modulus}"
                )
            return other.value
        if isinstance(other, int):
            return other
        return None

    def __add__(self, other):
        value = self._other_value(other)
        if value is None:
            return NotImplemented
        return Residue.of(self.value + value, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        value = self._other_value(other)
        if value is None:
            return NotImplemented
        return Residue.of(self.value - value, self.modulus)

    def __rsub__(self, other):
        value = self._other_value(other)
        if value is None:
            return NotImplemented
        return Residue.of(value - self.value, self.modulus)

    def __mul__(self, other):
        value = self._other_value(other)
        if value is None:
            return NotImplemented
        return Residue.of(self.value * value, self.modulus)

    __rmul__ = __mul__

    def __neg__(self) -> "Residue":
        return Residue.of(-self.value, self.modulus)

    def inverse(self) -> "Residue":
        """
        Multiplicative inverse.

        Raises:
            NotInvertible: value shares a factor with the modulus
        """
        # imported here: modring builds on these models
        from app.services.modring import inverse

        return inverse(self.value, self.modulus)

    def __pow__(self, exponent: int) -> "Residue":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** -exponent
        return Residue.of(pow(self.value, exponent, self.modulus), self.modulus)

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return f"{self.value} (mod {self.modulus})"


class ExactRational(BaseModel):
    """Arbitrary-precision rational in lowest terms with positive denominator."""
    model_config = ConfigDict(frozen=True)

    numerator: int
    denominator: int = Field(1, gt=0)

    @model_validator(mode="after")
    def _lowest_terms(self) -> "ExactRational":
        if gcd(self.numerator, self.denominator) != 1 and self.numerator != 0:
            raise ValueError(f"{self.numerator}/{self.denominator} is not in lowest terms")
        if self.numerator == 0 and self.denominator != 1:
            raise ValueError("zero must be stored as 0/1")
        return self

    @classmethod
    def from_fraction(cls, value: Fraction) -> "ExactRational":
        return cls(numerator=value.numerator, denominator=value.denominator)

    def to_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __str__(self) -> str:
        if self.denominator == 1:
            return str(self.numerator)
        return f"{self.numerator}/{self.denominator}"


class BernoulliModP(BaseModel):
    """B_{p-3} reduced mod p, tagged with the method that produced it."""
    model_config = ConfigDict(frozen=True)

    p: int
    value: Residue
    method: BernoulliMethod


class ResidueClassSumSpec(BaseModel):
    """Sum of (+-1)^i / i^weight over 1 <= i < p^r with i = x (mod p)."""
    model_config = ConfigDict(frozen=True)

    x: int
    modulus: PrimePowerModulus
    weight: Literal[1, 2, 3] = 1
    signed: bool = False

    @model_validator(mode="after")
    def _class_in_range(self) -> "ResidueClassSumSpec":
        if not 1 <= self.x <= self.modulus.p - 1:
            raise ValueError(f"class representative {self.x} outside [1, {self.modulus.p - 1}]")
        return self


class SumSpec(BaseModel):
    """
    Harmonic-type sum over ordered compositions total = i_1 + ... + i_parts.

    Every part must be coprime to `coprime_to`; with `signed` each term
    carries (-1)^{i_1}. The result is reduced in Z/modulus.
    """
    model_config = ConfigDict(frozen=True)

    total: int = Field(ge=1)
    parts: int = Field(3, ge=3)
    coprime_to: int = Field(ge=1)
    signed: bool = True
    modulus: int = Field(gt=1)
    # exclusive upper bound on every part (None: unbounded)
    part_bound: Optional[int] = None


class ReducedForm(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: ReducedKind
    modulus: PrimePowerModulus


class CheckRecord(BaseModel):
    """
    One verification outcome.

    `passed` is present exactly when `rhs` is: exploration records carry the
    computed residue only. Records whose evaluation raised carry `error`
    instead of a verdict.
    """
    model_config = ConfigDict(frozen=True)

    check: str
    p: Optional[int] = None
    r: Optional[int] = None
    m: Optional[int] = None
    n: Optional[int] = None
    parts: Optional[int] = None
    x: Optional[int] = None
    k: Optional[int] = None
    lhs: Optional[int] = None
    rhs: Optional[int] = None
    modulus: Optional[int] = None
    method: Tuple[str, ...] = ()
    passed: Optional[bool] = None
    elapsed_ms: Optional[float] = None
    visits: Optional[int] = None
    error: Optional[str] = None
    factors: Optional[Dict[int, int]] = None

    @model_validator(mode="after")
    def _verdict_consistent(self) -> "CheckRecord":
        if self.error is not None:
            if self.passed is not None:
                raise ValueError("errored records carry no verdict")
            return self
        if self.rhs is None:
            if self.passed is not None:
                raise ValueError("exploration records carry no verdict")
        elif self.passed != (self.lhs == self.rhs):
            raise ValueError("verdict must equal lhs == rhs")
        return self

    @property
    def is_exploration(self) -> bool:
        return self.rhs is None and self.error is None

    @property
    def is_cap_exceeded(self) -> bool:
        return self.error == "CapExceeded"

    def sort_key(self) -> tuple:
        def slot(value):
            return (0, 0) if value is None else (1, value)

        return (
            self.check,
            slot(self.p),
            slot(self.r),
            slot(self.m),
            slot(self.n),
            slot(self.parts),
            slot(self.x),
            slot(self.k),
        )
