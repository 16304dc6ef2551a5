"""
Terminating power-series solution of the radial equation

    -(1/rho) d/drho (rho dR/drho) + (rho**2 - 2*lam + 4*m**2/rho**2) R = 0

and assembly of the full eigenfunction psi(r, theta).

The radial function is R(rho) = rho**s * exp(-rho**2/2) * sum_n a_n rho**n with
s = 2|m| and only even n.  Coefficients are produced in exact rational
arithmetic; conversion to float happens once, on evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import Constants, HalfInteger, QuantumNumbers, SpinError


class EvenLambda(SpinError):
    code = "EvenLambda"


def _step(lam: int, s: int, abs_m2: int, n: int) -> Fraction:
    """Ratio a_{n+2} / a_n of the two-step recursion."""
    numerator = 2 * ((1 + s + n) - lam)
    denominator = (n + s + 2) ** 2 - abs_m2 ** 2
    return Fraction(numerator, denominator)


@dataclass(frozen=True)
class RadialSeries:
    """Even-index coefficients ``a_0, a_2, ..., a_N`` with ``a_0 = 1``."""

    qn: QuantumNumbers
    s: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.qn.big_n // 2 + 1:
            raise ValueError("coeffs must hold N/2 + 1 entries")

    @property
    def float_coeffs(self) -> np.ndarray:
        return np.array([float(c) for c in self.coeffs])

    def next_coefficient(self) -> Fraction:
        """The recursion's a_{N+2}; zero for every terminating series."""
        qn = self.qn
        return _step(qn.lam, self.s, qn.s, qn.big_n) * self.coeffs[-1]

    def powers(self) -> list[int]:
        """Exponent of rho carried by each coefficient (``s + n``)."""
        return [self.s + 2 * j for j in range(len(self.coeffs))]


def recursion_coefficients(qn: QuantumNumbers) -> RadialSeries:
    """Generate the terminating coefficient list for valid quantum numbers."""
    s = qn.s
    coeffs = [Fraction(1)]
    for n in range(0, qn.big_n, 2):
        # (n+s+2)^2 - s^2 = (n+2)(n+2+2s) > 0 for n >= 0
        assert (n + 2) * (n + 2 + 2 * s) > 0
        coeffs.append(_step(qn.lam, s, s, n) * coeffs[-1])
    return RadialSeries(qn=qn, s=s, coeffs=tuple(coeffs))


def nonterminating_prefix(lam: int, m, count: int) -> list[Fraction]:
    """First ``count`` even-index coefficients for an odd (inadmissible) lambda.

    Used to demonstrate that the series never stops and that
    ``a_n / a_{n-2} -> 2/n``.
    """
    if lam % 2 == 0:
        raise EvenLambda(f"lambda={lam} is even; use recursion_coefficients")
    if count < 1:
        raise ValueError("count must be >= 1")
    s = abs(HalfInteger.of(m).twice)
    coeffs = [Fraction(1)]
    for n in range(0, 2 * (count - 1), 2):
        coeffs.append(_step(lam, s, s, n) * coeffs[-1])
    return coeffs


def _poly_in_x(coeffs, x):
    # Horner in x = rho**2
    acc = np.zeros_like(x)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def eval_radial(series: RadialSeries, rho):
    """Unnormalized R(rho); accepts scalars or arrays."""
    rho = np.asarray(rho, dtype=float)
    x = rho * rho
    out = rho ** series.s * np.exp(-0.5 * x) * _poly_in_x(series.float_coeffs, x)
    return out if out.ndim else float(out)


def radial_derivatives(series: RadialSeries, rho):
    """Return ``(R, R', R'')`` from the closed form of each term.

    For f_k = rho**k exp(-rho**2/2):
    f_k'  = (k rho**(k-1) - rho**(k+1)) e
    f_k'' = (k(k-1) rho**(k-2) - (2k+1) rho**k + rho**(k+2)) e
    """
    rho = np.asarray(rho, dtype=float)
    env = np.exp(-0.5 * rho * rho)
    r0 = np.zeros_like(rho)
    r1 = np.zeros_like(rho)
    r2 = np.zeros_like(rho)
    for a, k in zip(series.float_coeffs, series.powers()):
        r0 = r0 + a * rho ** k
        r1 = r1 + a * (k * rho ** (k - 1) - rho ** (k + 1))
        r2 = r2 + a * (k * (k - 1) * rho ** (k - 2) - (2 * k + 1) * rho ** k + rho ** (k + 2))
    return r0 * env, r1 * env, r2 * env


def radial_residual(series: RadialSeries, rho):
    """Residual of the radial equation and the size of its largest term.

    Returns
    -------
    residual, scale : float
        ``scale`` is the largest absolute term entering the residual, so
        ``residual / scale`` is a relative error.
    """
    rho = float(rho)
    lam = series.qn.lam
    s = series.qn.s
    r, dr, d2r = radial_derivatives(series, rho)
    terms = [-d2r, -dr / rho, rho ** 2 * r, -2 * lam * r, s * s / rho ** 2 * r]
    return float(sum(terms)), float(max(abs(t) for t in terms))


def laguerre_poly(k: int, alpha: float, x):
    """Generalized Laguerre L_k^(alpha)(x) by its three-term recurrence."""
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if k == 0:
        return prev
    cur = 1.0 + alpha - x
    for j in range(1, k):
        prev, cur = cur, ((2 * j + 1 + alpha - x) * cur - (j + alpha) * prev) / (j + 1)
    return cur


def laguerre_oracle(qn: QuantumNumbers, rho):
    """``rho**(2|m|) exp(-rho**2/2) L_{N/2}^{(2|m|)}(rho**2)``, independent of the recursion."""
    rho = np.asarray(rho, dtype=float)
    x = rho * rho
    out = rho ** qn.s * np.exp(-0.5 * x) * laguerre_poly(qn.big_n // 2, qn.s, x)
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class Eigenfunction:
    """Normalized psi(r, theta); ``norm_constant`` makes the integral of |psi|^2 r dr dtheta equal 1.

    Construct with `halfspin.numeric.normalized_eigenfunction`.
    """

    series: RadialSeries
    constants: Constants
    norm_constant: float

    def __post_init__(self):
        if not (np.isfinite(self.norm_constant) and self.norm_constant > 0):
            raise ValueError("norm_constant must be positive and finite")

    @property
    def qn(self) -> QuantumNumbers:
        return self.series.qn

    def rho(self, r):
        return np.asarray(r, dtype=float) / self.constants.length_scale

    def density(self, r):
        """|psi(r, theta)|^2 in physical units (theta-independent)."""
        return (self.norm_constant * eval_radial(self.series, self.rho(r))) ** 2


def eval_psi(eig: Eigenfunction, r, theta):
    """psi(r, theta) = C exp(2i m theta) R(rho(r)).

    The angular factor carries no 1/hbar so that S3 psi = hbar m psi for any hbar.
    """
    phase = np.exp(1j * eig.qn.m.twice * np.asarray(theta, dtype=float))
    out = eig.norm_constant * phase * eval_radial(eig.series, eig.rho(r))
    out = np.asarray(out)
    return out if out.ndim else complex(out)
