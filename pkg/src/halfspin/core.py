"""
Domain types and quantum-number validation.

All admissibility rules are integer facts, so half-integers are carried as
doubled integers (``HalfInteger.twice``) and never as floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import math


class SpinError(ValueError):
    """Base class for every typed error raised by this package."""

    code = "SpinError"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

    def __str__(self):
        return f"{self.code}: {self.message}"


class BadLambda(SpinError):
    code = "BadLambda"


class OddLambda(SpinError):
    code = "OddLambda"


class MagneticOutOfRange(SpinError):
    code = "MagneticOutOfRange"


class NotHalfInteger(SpinError):
    code = "NotHalfInteger"


class BadConstants(SpinError):
    code = "BadConstants"


@dataclass(frozen=True)
class Constants:
    """Physical scales. Everything defaults to 1 (dimensionless rho units).

    Parameters
    ----------
    hbar : float
        Action scale.
    gamma : float
        Structure constant ``sqrt(alpha / beta)``.
    omega : float
        Angular frequency, only used to convert the spectral gap to an energy.
    """

    hbar: float = 1.0
    gamma: float = 1.0
    omega: float = 1.0

    def __post_init__(self):
        for name in ("hbar", "gamma", "omega"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise BadConstants(f"{name} must be positive and finite, got {value!r}")

    @property
    def length_scale(self) -> float:
        """Physical length of one rho unit, ``(hbar / gamma) ** 0.5``."""
        return math.sqrt(self.hbar / self.gamma)


@dataclass(frozen=True, order=True)
class HalfInteger:
    """A multiple of 1/2 stored exactly as ``twice = 2 * value``."""

    twice: int

    def __post_init__(self):
        if not isinstance(self.twice, int) or isinstance(self.twice, bool):
            raise TypeError(f"twice must be an int, got {type(self.twice).__name__}")

    @classmethod
    def of(cls, value) -> "HalfInteger":
        """Coerce ``value`` (HalfInteger, int, Fraction or string like "3/2").

        Raises `NotHalfInteger` if the value is not a multiple of 1/2.
        """
        if isinstance(value, HalfInteger):
            return value
        if isinstance(value, float):
            raise TypeError("floats are not accepted; pass a Fraction, a string or use twice=")
        frac = Fraction(value)
        doubled = 2 * frac
        if doubled.denominator != 1:
            raise NotHalfInteger(f"{value} is not a multiple of 1/2")
        return cls(int(doubled))

    @property
    def is_half_integral(self) -> bool:
        """True for 1/2, 3/2, ... (odd ``twice``)."""
        return self.twice % 2 == 1

    def __abs__(self) -> "HalfInteger":
        return HalfInteger(abs(self.twice))

    def __neg__(self) -> "HalfInteger":
        return HalfInteger(-self.twice)

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def __float__(self):
        return self.twice / 2

    def __str__(self):
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"


@dataclass(frozen=True)
class QuantumNumbers:
    """An admissible (terminating) set of quantum numbers.

    Build these with `validate`; the constructor re-checks the invariants.
    """

    lam: int
    ell: HalfInteger
    m: HalfInteger
    big_n: int

    def __post_init__(self):
        if self.ell.twice != self.lam - 1:
            raise ValueError("ell must equal (lambda - 1)/2")
        if self.big_n != self.lam - 1 - abs(self.m.twice):
            raise ValueError("N must equal lambda - 1 - 2|m|")
        if self.big_n < 0 or self.big_n % 2:
            raise ValueError("N must be even and non-negative")
        if not self.m.is_half_integral:
            raise ValueError("m must be half-integral")

    @property
    def abs_m(self) -> HalfInteger:
        return abs(self.m)

    @property
    def s(self) -> int:
        """Leading power ``2|m|`` of the radial function at the origin."""
        return abs(self.m.twice)

    @property
    def ring_count(self) -> int:
        """Number of concentric density maxima, ``ell - |m| + 1``."""
        return (self.ell.twice - abs(self.m.twice)) // 2 + 1

    def __str__(self):
        return f"(lambda={self.lam}, ell={self.ell}, m={self.m}, N={self.big_n})"


def validate(lam: int, m, constants: Constants | None = None) -> QuantumNumbers:
    """Check ``(lambda, m)`` and derive ``ell`` and the cutoff ``N``.

    Parameters
    ----------
    lam : int
        Eigenvalue index, ``lambda >= 1``.
    m : HalfInteger, int, Fraction or str
        Magnetic number. Anything accepted by `HalfInteger.of`.
    constants : Constants, optional
        Accepted for interface symmetry; the admissibility rules are
        unit-free so it is not consulted.

    Returns
    -------
    QuantumNumbers

    Raises
    ------
    BadLambda, NotHalfInteger, OddLambda, MagneticOutOfRange
    """
    if isinstance(lam, bool) or not isinstance(lam, int) or lam < 1:
        raise BadLambda(f"lambda must be an integer >= 1, got {lam!r}")
    try:
        m = HalfInteger.of(m)
    except NotHalfInteger:
        raise NotHalfInteger(f"m={m} is not a half-integer") from None
    if not m.is_half_integral:
        raise NotHalfInteger(f"2m={m.twice} is even; m must be half-integral")
    if lam % 2:
        raise OddLambda(f"lambda={lam} is odd; the radial series does not terminate")
    if abs(m.twice) > lam - 1:
        raise MagneticOutOfRange(f"|m|={abs(m)} exceeds (lambda-1)/2={HalfInteger(lam - 1)}")
    return QuantumNumbers(lam=lam, ell=HalfInteger(lam - 1), m=m,
                          big_n=lam - 1 - abs(m.twice))


def iter_valid(lambda_max: int, signed: bool = False):
    """Yield every valid `QuantumNumbers` with ``lambda <= lambda_max``.

    Ordered by lambda, then ``|m|``; with ``signed=True`` both signs of m are
    produced (negative first).
    """
    for lam in range(2, lambda_max + 1, 2):
        for twice in range(1, lam, 2):
            if signed:
                yield validate(lam, HalfInteger(-twice))
            yield validate(lam, HalfInteger(twice))
