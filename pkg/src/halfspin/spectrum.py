"""
Enumeration of admissible quantum numbers (the lambda / ell / |m| / N table),
multiplicities, and the spectral lower bound.
"""

from __future__ import annotations

from dataclasses import dataclass
import json
import math
from importlib import resources
from typing import Callable, Optional, Union

from .core import Constants, HalfInteger, SpinError, validate

INFINITE = math.inf


class BadBound(SpinError):
    code = "BadBound"


class IntegerEll(SpinError):
    code = "IntegerEll"


@dataclass(frozen=True)
class SpectrumRow:
    """One printed row of the table.

    ``multiplicity`` is an int on the last row of an even-lambda block,
    ``INFINITE`` on every odd-lambda row and ``None`` (blank cell) otherwise.
    """

    lam: int
    ell: HalfInteger
    abs_m: HalfInteger
    big_n: int
    terminating: bool
    multiplicity: Optional[Union[int, float]]

    def to_json(self) -> dict:
        if self.multiplicity is None:
            mult = None
        elif self.multiplicity == INFINITE:
            mult = "inf"
        else:
            mult = int(self.multiplicity)
        return {
            "lambda": self.lam,
            "ell_times2": self.ell.twice,
            "absM_times2": self.abs_m.twice,
            "bigN": self.big_n,
            "multiplicity": mult,
        }


def enumerate_table(lambda_max: int) -> list[SpectrumRow]:
    """Rows for every lambda in ``2..lambda_max`` and every half-integral ``|m| <= (lambda-1)/2``."""
    if lambda_max < 2:
        raise BadBound(f"lambda_max must be >= 2, got {lambda_max}")
    rows = []
    for lam in range(2, lambda_max + 1):
        twos = list(range(1, lam, 2))
        for i, abs_m2 in enumerate(twos):
            terminating = lam % 2 == 0
            if terminating:
                validate(lam, HalfInteger(abs_m2))
                mult = multiplicity(HalfInteger(lam - 1)) if i == len(twos) - 1 else None
            else:
                mult = INFINITE
            rows.append(SpectrumRow(
                lam=lam,
                ell=HalfInteger(lam - 1),
                abs_m=HalfInteger(abs_m2),
                big_n=lam - 1 - abs_m2,
                terminating=terminating,
                multiplicity=mult,
            ))
    return rows


def multiplicity(ell) -> int:
    """Number of m values for a half-integral ``ell``: ``2*ell + 1``."""
    ell = HalfInteger.of(ell)
    if ell.twice <= 0 or not ell.is_half_integral:
        raise IntegerEll(f"ell={ell} is not a positive half-integer")
    return ell.twice + 1


def load_golden() -> list[dict]:
    """The bundled hand transcription of the published table."""
    text = resources.files("halfspin").joinpath("data/tableI.json").read_text("utf-8")
    return json.loads(text)["rows"]


def terminating_rule(lam: int, abs_m2: int) -> bool:
    """Default admissibility: half-integral m and a terminating series."""
    try:
        validate(lam, HalfInteger(abs_m2))
    except SpinError:
        return False
    return True


def relaxed_rule(lam: int, abs_m2: int) -> bool:
    """Test hook: drop half-integrality, keep only N = lam-1-2|m| even and >= 0."""
    big_n = lam - 1 - abs_m2
    return big_n >= 0 and big_n % 2 == 0


def lambda_min(rule: Callable[[int, int], bool] = terminating_rule, search_max: int = 64) -> int:
    """Smallest lambda admitting at least one state under ``rule``.

    The scan covers every lambda from 1 and every 2|m| in 0..lambda-1, so the
    answer follows from the admissibility rule and is not assumed.
    """
    for lam in range(1, search_max + 1):
        if any(rule(lam, abs_m2) for abs_m2 in range(0, lam)):
            return lam
    raise BadBound(f"no admissible lambda up to {search_max}")


def e_min(constants: Constants) -> float:
    """Minimum energy ``lambda_min * hbar * omega``."""
    return lambda_min() * constants.hbar * constants.omega
