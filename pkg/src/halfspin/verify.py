"""Pass/fail check set behind ``halfspin verify``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import matrix_oracle as mo
from .core import Constants, iter_valid
from .numeric import RadialGrid, compare_series_vs_fd
from .spectrum import enumerate_table

HERMITIAN_TOL = 1e-12
COMMUTATOR_TOL = 1e-12
SPECTRUM_RTOL = 1e-10
IDENTITY_TOL = 1e-10
EIGEN_RELATION_TOL = 1e-9
FD_TOL = 1e-3


@dataclass(frozen=True)
class Check:
    name: str
    gamma: Optional[float]
    value: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.value < self.tolerance)


def s0_spectrum_error(ops: mo.OperatorSet) -> float:
    """Relative deviation of interior S0 eigenvalues from hbar (n+1), degeneracy n+1."""
    hbar = ops.constants.hbar
    got = np.linalg.eigvalsh(ops.block(ops.S0)) / hbar
    want = np.sort(np.concatenate([np.full(n + 1, n + 1.0) for n in range(ops.nmax - 1)]))
    return float(np.max(np.abs(got - want) / want))


def table_content_mismatch(ops: mo.OperatorSet) -> int:
    """Symmetric-difference size between half-integral joint (lambda, 2m) pairs and the table."""
    pairs = mo.joint_spectrum(ops)
    lam_top = ops.nmax - 1
    got = {(round(p.lam), round(2 * p.m)) for p in pairs if round(2 * p.m) % 2}
    want = set()
    for row in enumerate_table(lam_top):
        if row.terminating:
            want.add((row.lam, row.abs_m.twice))
            want.add((row.lam, -row.abs_m.twice))
    return len(got ^ want)


def matrix_checks(nmax: int, constants: Constants) -> list[Check]:
    ops = mo.build(nmax, constants)
    g = constants.gamma
    hbar2 = constants.hbar ** 2
    out = [Check(f"hermitian_{name}", g, mo.hermiticity_error(mat), HERMITIAN_TOL)
           for name, mat in ops.matrices.items()]
    out.append(Check("commutator_S0_S3", g, mo.commutator_norm(ops, ops.S0, ops.S3), COMMUTATOR_TOL))
    out.append(Check("S0_spectrum", g, s0_spectrum_error(ops), SPECTRUM_RTOL))
    out.append(Check("S2_identity", g, mo.verify_identity(ops), IDENTITY_TOL * hbar2))
    pairs = mo.joint_spectrum(ops)
    rel = max(abs(p.s2 - (p.lam ** 2 - 1) / 4) for p in pairs)
    out.append(Check("S2_eigen_relation", g, rel, EIGEN_RELATION_TOL))
    out.append(Check("table_content", g, float(table_content_mismatch(ops)), 0.5))
    return out


def radial_checks(lambda_max: int = 10, grid: RadialGrid = RadialGrid()) -> list[Check]:
    return [Check(f"series_vs_fd_lam{qn.lam}_m2{qn.m.twice}", None,
                  compare_series_vs_fd(qn, grid), FD_TOL)
            for qn in iter_valid(lambda_max)]
