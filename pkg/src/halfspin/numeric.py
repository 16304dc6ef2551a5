"""
Numerical side of the radial problem: a finite-difference eigensolver that
never looks at the series, quadrature for normalization and moments, and
density/ring diagnostics.

Everything runs in dimensionless rho; physical lengths are rho times
``Constants.length_scale``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import csv
import io
import math

import numpy as np
from scipy import integrate, special
from scipy.linalg import eigh_tridiagonal

from .core import Constants, HalfInteger, QuantumNumbers, SpinError
from .series import (Eigenfunction, RadialSeries, eval_radial,
                     recursion_coefficients)


class GridTooCoarse(SpinError):
    code = "GridTooCoarse"


class GridTooShort(SpinError):
    code = "GridTooShort"


MIN_POINTS = 100
TAIL_RTOL = 1e-14


@dataclass(frozen=True)
class RadialGrid:
    """Uniform grid on [0, rho_max] with ``npoints`` intervals."""

    rho_max: float = 12.0
    npoints: int = 2000

    def __post_init__(self):
        if self.npoints < MIN_POINTS:
            raise GridTooCoarse(f"npoints must be >= {MIN_POINTS}, got {self.npoints}")
        if not self.rho_max > 0:
            raise GridTooShort(f"rho_max must be positive, got {self.rho_max}")

    @property
    def spacing(self) -> float:
        return self.rho_max / self.npoints

    @property
    def nodes(self) -> np.ndarray:
        """Interior nodes i*h, i = 1..npoints-1 (Dirichlet ends removed)."""
        return self.spacing * np.arange(1, self.npoints)

    @property
    def points(self) -> np.ndarray:
        """All grid points including both ends."""
        return self.spacing * np.arange(self.npoints + 1)

    def require_reach(self, lam: float):
        if self.rho_max < 2 * math.sqrt(lam):
            raise GridTooShort(f"rho_max={self.rho_max} < 2*sqrt({lam})")


def fd_eigensolve(abs_m, grid: RadialGrid, count: int):
    """Lowest ``count`` eigenpairs of the radial operator by finite differences.

    With u = sqrt(rho) R the operator becomes
    -u'' + (rho^2 + (4 m^2 - 1/4) / rho^2) u = 2 lam u,
    discretized with the three-point stencil and u = 0 at both ends.

    Returns
    -------
    list of (lam, R)
        ``R`` is sampled on ``grid.nodes`` and scaled so that
        h * sum(R**2 * rho) = 1.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    s = abs(HalfInteger.of(abs_m).twice)
    grid.require_reach(1 + s + 2 * (count - 1))
    h = grid.spacing
    rho = grid.nodes
    potential = rho ** 2 + (s * s - 0.25) / rho ** 2
    diag = 2.0 / h ** 2 + potential
    off = np.full(len(rho) - 1, -1.0 / h ** 2)
    w, v = eigh_tridiagonal(diag, off, select="i", select_range=(0, count - 1))
    out = []
    for k in range(count):
        u = v[:, k] / math.sqrt(h)
        out.append((0.5 * w[k], u / np.sqrt(rho)))
    return out


def _square_coeffs(series: RadialSeries) -> np.ndarray:
    # P(x)^2 as a polynomial in x = rho^2, ascending
    c = series.float_coeffs
    return np.convolve(c, c)


def _tail_bound(series: RadialSeries, k: int, cut: float) -> float:
    """Upper bound on the integral of R^2 rho^k over [cut, inf)."""
    bound = 0.0
    for j, b in enumerate(_square_coeffs(series)):
        a = (2 * series.s + k + 2 * j + 1) / 2
        bound += abs(b) * 0.5 * special.gamma(a) * special.gammaincc(a, cut * cut)
    return bound


def radial_moment(series: RadialSeries, k: int) -> float:
    """Integral of R(rho)^2 rho^k over [0, inf) by adaptive quadrature.

    The upper limit is pushed out until the Gaussian tail bound drops below
    ``TAIL_RTOL`` of the integral.
    """

    def integrand(rho):
        return eval_radial(series, rho) ** 2 * rho ** k

    cut = math.sqrt(series.qn.lam) + 4.0
    opts = dict(epsabs=0.0, epsrel=1e-13, limit=400)
    first, _ = integrate.quad(integrand, 0.0, cut, **opts)
    while _tail_bound(series, k, cut) > TAIL_RTOL * first:
        cut += 0.5
    value, _ = integrate.quad(integrand, 0.0, cut, **opts)
    return value


def quadrature_norm(series: RadialSeries) -> float:
    """Integral of R(rho)^2 rho d rho (unnormalized series)."""
    return radial_moment(series, 1)


def normalized_eigenfunction(qn: QuantumNumbers, constants: Constants = Constants()) -> Eigenfunction:
    """Eigenfunction with the integral of |psi|^2 r dr dtheta equal to 1 in physical units."""
    series = recursion_coefficients(qn)
    # r dr = (hbar/gamma) rho d rho; angular integral gives 2 pi
    physical = 2 * math.pi * constants.length_scale ** 2 * quadrature_norm(series)
    return Eigenfunction(series=series, constants=constants,
                         norm_constant=1.0 / math.sqrt(physical))


def mean_radius(qn: QuantumNumbers, constants: Constants = Constants()) -> float:
    """<r> in physical units, ``length_scale * <rho>``."""
    series = recursion_coefficients(qn)
    return constants.length_scale * radial_moment(series, 2) / radial_moment(series, 1)


def node_radii(series: RadialSeries) -> np.ndarray:
    """Strictly positive zeros of R in rho, ascending."""
    c = series.float_coeffs
    if len(c) == 1:
        return np.array([])
    roots = np.roots(c[::-1])
    real = roots[np.abs(roots.imag) < 1e-9].real
    return np.sort(np.sqrt(real[real > 0]))


def local_maxima(values: np.ndarray, floor_rtol: float = 1e-12) -> np.ndarray:
    """Indices of strict three-point local maxima above ``floor_rtol * max``."""
    values = np.asarray(values)
    floor = floor_rtol * values.max()
    mid = values[1:-1]
    hit = (mid > values[:-2]) & (mid > values[2:]) & (mid > floor)
    return np.flatnonzero(hit) + 1


@dataclass(frozen=True, eq=False)
class DensityProfile:
    """Density samples on a rho grid; ``density`` is |psi|^2 in physical units."""

    qn: QuantumNumbers
    constants: Constants
    rho: np.ndarray = field(repr=False)
    density: np.ndarray = field(repr=False)
    peak_rho: tuple
    norm_constant: float

    @property
    def ring_count(self) -> int:
        return len(self.peak_rho)

    @property
    def samples(self) -> list[tuple[float, float]]:
        return list(zip(self.rho.tolist(), self.density.tolist()))

    @property
    def r(self) -> np.ndarray:
        return self.rho * self.constants.length_scale

    @property
    def peak_radii(self) -> tuple:
        """Peak positions in physical units."""
        return tuple(p * self.constants.length_scale for p in self.peak_rho)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["rho", "density"])
        for x, d in zip(self.rho, self.density):
            writer.writerow([f"{x:.12g}", f"{d:.12g}"])
        return buf.getvalue()


def density_profile(qn: QuantumNumbers, constants: Constants = Constants(),
                    grid: RadialGrid = RadialGrid()) -> DensityProfile:
    """Sample the density on the full grid and locate its ring maxima.

    Raises `GridTooCoarse` when the spacing exceeds half the smallest gap
    between consecutive zeros of R (the origin counts as a zero).
    """
    eig = normalized_eigenfunction(qn, constants)
    zeros = np.concatenate([[0.0], node_radii(eig.series)])
    if len(zeros) > 1:
        gap = float(np.min(np.diff(zeros)))
        if grid.spacing > gap / 2:
            raise GridTooCoarse(f"spacing {grid.spacing:.3g} exceeds half the node gap {gap:.3g}")
    grid.require_reach(qn.lam)
    rho = grid.points
    density = (eig.norm_constant * eval_radial(eig.series, rho)) ** 2
    peaks = local_maxima(density)
    return DensityProfile(qn=qn, constants=constants, rho=rho, density=density,
                          peak_rho=tuple(float(rho[i]) for i in peaks),
                          norm_constant=eig.norm_constant)


def compare_series_vs_fd(qn: QuantumNumbers, grid: RadialGrid = RadialGrid(), flip: bool = False) -> float:
    """Max pointwise deviation between normalized series R and the FD eigenvector.

    ``flip`` negates the FD vector before sign alignment; the result must not
    depend on it.
    """
    k = qn.big_n // 2
    lam_fd, r_fd = fd_eigensolve(qn.abs_m, grid, k + 1)[k]
    if flip:
        r_fd = -r_fd
    series = recursion_coefficients(qn)
    r_an = eval_radial(series, grid.nodes) / math.sqrt(quadrature_norm(series))
    if np.dot(r_an, r_fd) < 0:
        r_fd = -r_fd
    return float(np.max(np.abs(r_an - r_fd)))
