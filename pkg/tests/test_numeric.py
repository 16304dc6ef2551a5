import math
from fractions import Fraction

import numpy as np
import pytest

from halfspin.core import Constants, HalfInteger, iter_valid, validate
from halfspin.numeric import (GridTooCoarse, GridTooShort, RadialGrid,
                              compare_series_vs_fd, density_profile,
                              fd_eigensolve, local_maxima, mean_radius,
                              node_radii, normalized_eigenfunction,
                              quadrature_norm, radial_moment)
from halfspin.series import eval_radial, recursion_coefficients

REFERENCE = RadialGrid(12.0, 2000)


def gaussian_moment(k):
    """Integral of rho^k exp(-rho^2) over [0, inf) = Gamma((k+1)/2)/2."""
    if k % 2:
        return Fraction(math.factorial((k - 1) // 2), 2)
    return math.gamma((k + 1) / 2) / 2


def closed_form_moment(series, k):
    """Expand R^2 rho^k term by term; exact Fraction when every power is odd."""
    total = 0
    for a, p in zip(series.coeffs, series.powers()):
        for b, q in zip(series.coeffs, series.powers()):
            total += a * b * gaussian_moment(p + q + k)
    return total


def test_grid_layout():
    g = RadialGrid(12.0, 2000)
    assert g.spacing == 0.006
    assert len(g.nodes) == 1999 and g.nodes[0] == pytest.approx(0.006)
    assert len(g.points) == 2001 and g.points[-1] == pytest.approx(12.0)


def test_grid_too_coarse():
    with pytest.raises(GridTooCoarse):
        RadialGrid(12.0, 99)


def test_grid_too_short():
    with pytest.raises(GridTooShort):
        fd_eigensolve("1/2", RadialGrid(3.0, 500), 3)


def test_fd_lowest_m_half():
    lams = [lam for lam, _ in fd_eigensolve("1/2", REFERENCE, 3)]
    np.testing.assert_allclose(lams, [2, 4, 6], atol=1e-3)


def test_fd_m_three_halves():
    lams = [lam for lam, _ in fd_eigensolve(HalfInteger(3), REFERENCE, 2)]
    np.testing.assert_allclose(lams, [4, 6], atol=1e-3)


@pytest.mark.parametrize("abs_m2", [1, 3, 5])
def test_fd_second_order_convergence(abs_m2):
    exact = np.array([1 + abs_m2 + 2 * k for k in range(3)])
    errs = []
    for n in (1000, 2000, 4000):
        lams = np.array([lam for lam, _ in fd_eigensolve(HalfInteger(abs_m2), RadialGrid(12.0, n), 3)])
        errs.append(np.abs(lams - exact))
    for coarse, fine in zip(errs, errs[1:]):
        assert np.all((coarse / fine > 3.5) & (coarse / fine < 4.5))


def test_fd_vectors_normalized():
    h = REFERENCE.spacing
    for _, r in fd_eigensolve("5/2", REFERENCE, 3):
        assert h * np.sum(r ** 2 * REFERENCE.nodes) == pytest.approx(1.0, rel=1e-12)


def test_quadrature_lowest():
    assert quadrature_norm(recursion_coefficients(validate(2, "1/2"))) == pytest.approx(0.5, abs=1e-12)


def test_quadrature_lambda4_exact_fraction():
    series = recursion_coefficients(validate(4, "1/2"))
    exact = closed_form_moment(series, 1)
    # R^2 rho = (rho^3 - rho^5 + rho^7/4) e^{-rho^2}: 1/2 - 1 + 3/4
    assert exact == Fraction(1, 4)
    assert quadrature_norm(series) == pytest.approx(float(exact), abs=1e-12)


def test_quadrature_against_gamma_moments_all_states():
    for qn in iter_valid(10):
        series = recursion_coefficients(qn)
        for k in (1, 2):
            exact = float(closed_form_moment(series, k))
            assert radial_moment(series, k) == pytest.approx(exact, rel=1e-12, abs=0), (str(qn), k)


def test_norm_scales_with_length():
    # physical norm = (hbar/gamma) * dimensionless norm, so C^2 scales inversely
    qn = validate(6, "1/2")
    base = normalized_eigenfunction(qn).norm_constant
    for c in (Constants(gamma=4.0), Constants(hbar=2.0, gamma=0.5)):
        got = normalized_eigenfunction(qn, c).norm_constant
        assert got ** 2 == pytest.approx(base ** 2 * c.gamma / c.hbar, rel=1e-13)


def test_mean_radius_closed_form():
    qn = validate(2, "1/2")
    assert mean_radius(qn) == pytest.approx(3 * math.sqrt(math.pi) / 4, rel=1e-9)
    assert mean_radius(qn, Constants(gamma=16.0)) == pytest.approx(0.332335097045, rel=1e-9)
    assert mean_radius(qn, Constants(hbar=2.0)) == pytest.approx(3 * math.sqrt(2 * math.pi) / 4, rel=1e-9)


def test_mean_radius_gamma_scaling():
    for qn in iter_valid(8):
        a, b = 0.7, 5.0
        ratio = mean_radius(qn, Constants(gamma=a)) / mean_radius(qn, Constants(gamma=b))
        assert ratio == pytest.approx(math.sqrt(b / a), rel=1e-10)


def test_larger_m_sits_further_out():
    assert mean_radius(validate(10, "9/2")) > mean_radius(validate(2, "1/2"))


def test_node_radii_lambda4():
    np.testing.assert_allclose(node_radii(recursion_coefficients(validate(4, "1/2"))), [math.sqrt(2)])


def test_local_maxima_floor_and_plateaus():
    assert list(local_maxima(np.array([0, 1, 0, 2, 2, 0]))) == [1]
    assert list(local_maxima(np.array([0, 1e-20, 0, 1, 0]))) == [3]


@pytest.mark.parametrize("lam, m, rings", [(2, "1/2", 1), (8, "7/2", 1), (10, "3/2", 4)])
def test_ring_examples(lam, m, rings):
    assert density_profile(validate(lam, m)).ring_count == rings


def test_ring_rule_and_density_shape():
    for qn in iter_valid(10):
        p = density_profile(qn, grid=REFERENCE)
        assert p.ring_count == qn.ring_count == (qn.ell.twice - qn.s) // 2 + 1
        assert p.density[0] == 0.0
        assert np.all(p.density >= 0)
        beyond = p.rho > 3 * math.sqrt(qn.lam)
        assert np.max(p.density[beyond]) < 1e-6 * np.max(p.density)


def test_peak_radius_grows_with_m():
    small = density_profile(validate(2, "1/2")).peak_rho[0]
    big = density_profile(validate(8, "7/2")).peak_rho[0]
    assert big > small
    # outermost ring of R^2 for N=0 sits at rho = sqrt(2|m|)
    assert small == pytest.approx(1.0, abs=REFERENCE.spacing)
    assert big == pytest.approx(math.sqrt(7), abs=REFERENCE.spacing)


def test_density_integrates_to_one():
    c = Constants(gamma=2.5)
    p = density_profile(validate(6, "3/2"), c)
    r = p.r
    assert np.trapezoid(2 * math.pi * p.density * r, r) == pytest.approx(1.0, rel=1e-6)


def test_density_grid_too_coarse():
    with pytest.raises(GridTooCoarse):
        density_profile(validate(10, "1/2"), grid=RadialGrid(200.0, 100))


def test_density_csv():
    text = density_profile(validate(2, "1/2"), grid=RadialGrid(12.0, 100)).to_csv()
    lines = text.splitlines()
    assert lines[0] == "rho,density"
    assert len(lines) == 102
    assert lines[1] == "0,0"
    assert text.endswith("\n") and not lines[1].endswith(",")


def test_series_vs_fd_examples():
    assert compare_series_vs_fd(validate(2, "1/2"), REFERENCE) < 1e-3
    assert compare_series_vs_fd(validate(10, "1/2"), REFERENCE) < 5e-3


def test_series_vs_fd_sign_alignment():
    qn = validate(6, "1/2")
    assert compare_series_vs_fd(qn, REFERENCE, flip=True) == compare_series_vs_fd(qn, REFERENCE)
