"""
Dense-matrix check of the operator algebra in a truncated two-mode
oscillator basis.

Basis states (n_x, n_y) with n_x + n_y <= nmax, sorted by total n and then by
n_x.  Position and momentum matrices come from the ladder operators of an
oscillator of frequency gamma (unit mass):

    x = sqrt(hbar / (2 gamma)) (a + a^+),   p = i sqrt(hbar gamma / 2) (a^+ - a)

so that S0 is diagonal with eigenvalues hbar (n + 1).  Products are formed in
the truncated space, which corrupts matrix elements touching the top two
shells; every check is therefore restricted to the interior block
n <= nmax - 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .core import Constants, SpinError


class CutoffTooSmall(SpinError):
    code = "CutoffTooSmall"


class DegeneracyResolutionFailed(SpinError):
    code = "DegeneracyResolutionFailed"


def number_basis(nmax: int) -> list[tuple[int, int]]:
    return [(nx, n - nx) for n in range(nmax + 1) for nx in range(n + 1)]


@dataclass(frozen=True, eq=False)
class OperatorSet:
    nmax: int
    constants: Constants
    basis: list
    X: np.ndarray = field(repr=False)
    Y: np.ndarray = field(repr=False)
    PX: np.ndarray = field(repr=False)
    PY: np.ndarray = field(repr=False)
    S0: np.ndarray = field(repr=False)
    S3: np.ndarray = field(repr=False)
    S2: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def matrices(self) -> dict:
        return {"X": self.X, "Y": self.Y, "PX": self.PX, "PY": self.PY,
                "S0": self.S0, "S3": self.S3, "S2": self.S2}

    def interior(self) -> np.ndarray:
        """Indices of basis states with n_x + n_y <= nmax - 2."""
        return np.array([i for i, (nx, ny) in enumerate(self.basis)
                         if nx + ny <= self.nmax - 2], dtype=int)

    def block(self, mat: np.ndarray) -> np.ndarray:
        idx = self.interior()
        return mat[np.ix_(idx, idx)]


def build(nmax: int, constants: Constants = Constants()) -> OperatorSet:
    """Matrices of x, y, p_x, p_y, S0, S3 and S^2 in the truncated basis.

    S0 = (1/2)[gamma (x^2 + y^2) + (p_x^2 + p_y^2) / gamma]
    S3 = (1/2)(x p_y - y p_x)
    S^2 = [(p_x^2 + p_y^2) + gamma^2 (x^2 + y^2)]^2 / (16 gamma^2), squared explicitly.
    """
    if nmax < 2:
        raise CutoffTooSmall(f"nmax must be >= 2, got {nmax}")
    hbar, gamma = constants.hbar, constants.gamma
    basis = number_basis(nmax)
    index = {state: i for i, state in enumerate(basis)}
    dim = len(basis)

    ax = np.zeros((dim, dim))
    ay = np.zeros((dim, dim))
    for (nx, ny), i in index.items():
        if nx > 0:
            ax[index[(nx - 1, ny)], i] = np.sqrt(nx)
        if ny > 0:
            ay[index[(nx, ny - 1)], i] = np.sqrt(ny)

    xs = np.sqrt(hbar / (2 * gamma))
    ps = np.sqrt(hbar * gamma / 2)
    X = (xs * (ax + ax.T)).astype(complex)
    Y = (xs * (ay + ay.T)).astype(complex)
    PX = 1j * ps * (ax.T - ax)
    PY = 1j * ps * (ay.T - ay)

    r2 = X @ X + Y @ Y
    p2 = PX @ PX + PY @ PY
    S0 = 0.5 * (gamma * r2 + p2 / gamma)
    S3 = 0.5 * (X @ PY - Y @ PX)
    bracket = p2 + gamma ** 2 * r2
    S2 = bracket @ bracket / (16 * gamma ** 2)
    return OperatorSet(nmax=nmax, constants=constants, basis=basis,
                       X=X, Y=Y, PX=PX, PY=PY, S0=S0, S3=S3, S2=S2)


def hermiticity_error(mat: np.ndarray) -> float:
    return float(np.max(np.abs(mat - mat.conj().T)))


def commutator_norm(ops: OperatorSet, a: np.ndarray, b: np.ndarray) -> float:
    """Max-norm of [a, b] on the interior block."""
    return float(np.max(np.abs(ops.block(a @ b - b @ a))))


def verify_identity(ops: OperatorSet, interior: bool = True) -> float:
    """Max-norm of ``S^2 - (S0^2/4 - hbar^2/4)``.

    With ``interior=False`` the whole truncated matrix is used, which picks up
    the top-shell truncation error as well.
    """
    hbar = ops.constants.hbar
    diff = ops.S2 - (0.25 * ops.S0 @ ops.S0 - 0.25 * hbar ** 2 * np.eye(ops.dim))
    if interior:
        diff = ops.block(diff)
    return float(np.max(np.abs(diff)))


@dataclass(frozen=True)
class JointEigenpair:
    """Joint eigenvalues in units of hbar: S0 = hbar*lam, S3 = hbar*m, S^2 = hbar^2*s2."""

    lam: float
    m: float
    s2: float
    vector: np.ndarray = field(repr=False, compare=False)


def joint_spectrum(ops: OperatorSet, tol: float = 1e-8) -> list[JointEigenpair]:
    """Diagonalize S0 and then S3 inside each degenerate S0 eigenspace.

    Returns pairs ordered by ascending lambda, then ascending m.  Raises
    `DegeneracyResolutionFailed` if a resulting vector is not a joint
    eigenvector of S0 and S3 to within ``tol``.
    """
    hbar = ops.constants.hbar
    s0 = ops.block(ops.S0)
    s3 = ops.block(ops.S3)
    s2 = ops.block(ops.S2)
    w0, v0 = scipy.linalg.eigh(s0)

    # split ascending eigenvalues into degenerate clusters
    breaks = np.flatnonzero(np.diff(w0) > 1e-6 * hbar) + 1
    pairs = []
    for cluster in np.split(np.arange(len(w0)), breaks):
        basis = v0[:, cluster]
        sub = basis.conj().T @ s3 @ basis
        w3, u3 = scipy.linalg.eigh(0.5 * (sub + sub.conj().T))
        vecs = basis @ u3
        lam = float(np.mean(w0[cluster])) / hbar
        for k in range(len(cluster)):
            v = vecs[:, k]
            res0 = np.linalg.norm(s0 @ v - hbar * lam * v)
            res3 = np.linalg.norm(s3 @ v - w3[k] * v)
            if res0 > tol * hbar or res3 > tol * hbar:
                raise DegeneracyResolutionFailed(
                    f"joint eigenvector residuals {res0:.3e}, {res3:.3e} exceed {tol:.1e}")
            s2_val = float(np.real(v.conj() @ s2 @ v)) / hbar ** 2
            pairs.append(JointEigenpair(lam=lam, m=float(w3[k]) / hbar, s2=s2_val, vector=v))
    pairs.sort(key=lambda p: (round(p.lam, 6), p.m))
    return pairs
