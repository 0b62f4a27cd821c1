import numpy as np
import pytest

from besselspace.corpus import parse_function
from besselspace.differences import (SeminormRequest, admissible_levels,
                                     averaging, difference,
                                     difference_seminorm, full_difference_norm,
                                     kdelta_symbol, kdelta_transform_symbol,
                                     kernel_mean, square_difference_norm,
                                     strichartz_norm, translate)
from besselspace.grid import (apply_symbol, forward, fourier_mode, lp_norm,
                              make_grid, sample, sequence_space)
from besselspace.kernels import (custom_sampled_kernel, gaussian_kernel,
                                 indicator_cube_kernel,
                                 modulated_gaussian_kernel, plateau_kernel)
from besselspace.lp_decomp import bessel_norm
from besselspace.symbols import tauberian_constant
from besselspace.weights import power_weight


@pytest.fixture(scope="module")
def grid():
    return make_grid(1, 1024, 32.0)


@pytest.fixture(scope="module")
def gauss_f(grid):
    return parse_function("gauss", grid)


def test_translate_lattice_is_roll(grid):
    vals = np.arange(grid.n).astype(complex)
    f = sample(grid, vals)
    out = translate(f, 5 * grid.dx)
    np.testing.assert_array_equal(out.values[:, 0], np.roll(vals, -5))


def test_difference_of_zero_shift_vanishes(gauss_f):
    scale = np.abs(gauss_f.values).max()
    for m in (1, 2, 3):
        assert np.abs(difference(gauss_f, m, 0.0).values).max() <= 1e-14 * scale


def test_second_difference_formula(grid):
    vals = np.sin(grid.axis_coords() * 0.7) + 2.0
    f = sample(grid, vals)
    h = 3 * grid.dx
    got = difference(f, 2, h).values[:, 0]
    expect = np.roll(vals, -6) - 2.0 * np.roll(vals, -3) + vals
    np.testing.assert_allclose(got, expect, atol=1e-12)


def test_difference_matches_one_shot_symbol(grid, gauss_f):
    h = 0.37  # off-lattice
    for m in (1, 2, 3):
        a = difference(gauss_f, m, h)
        b = apply_symbol(lambda xi: (np.exp(1j * h * xi) - 1.0) ** m, gauss_f)
        assert np.abs(a.values - b.values).max() < 1e-12


def test_difference_eigenvalue_on_mode(grid):
    f = sample(grid, fourier_mode(grid, 7))
    xi0 = 2.0 * np.pi * 7 / grid.period
    h = 0.61
    out = difference(f, 3, h)
    lam = (np.exp(1j * h * xi0) - 1.0) ** 3
    np.testing.assert_allclose(out.values, lam * f.values, atol=1e-11)


def test_kdelta_symbol_m1_and_indicator(grid):
    K = gaussian_kernel(1)
    t = 0.3
    th = kdelta_symbol(K, 1, t)
    xi = np.array([-5.0, 0.7, 2.0])
    expect = K.transform.evaluate(-t * xi) - 1.0
    np.testing.assert_allclose(th.evaluate(xi), expect, atol=1e-14)
    Ki = indicator_cube_kernel(1)
    thi = kdelta_symbol(Ki, 1, 0.5)
    expect = np.sin(0.5 * xi) / (0.5 * xi) - 1.0
    np.testing.assert_allclose(thi.evaluate(xi), expect, atol=1e-14)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_kdelta_vanishes_at_zero(m):
    # exact cancellation for analytic transforms; the quadrature-based
    # plateau transform leaves association round-off at the last bit
    for K in (gaussian_kernel(1), indicator_cube_kernel(1),
              modulated_gaussian_kernel(1)):
        th = kdelta_symbol(K, m, 0.25)
        assert abs(th.evaluate(np.array([0.0]))[0]) == 0.0
    th = kdelta_symbol(plateau_kernel(), m, 0.25)
    assert abs(th.evaluate(np.array([0.0]))[0]) < 1e-14


def test_kdelta_transform_value_at_zero():
    K = gaussian_kernel(1)
    for m in (1, 2, 3):
        v = kdelta_transform_symbol(K, m).evaluate(np.array([0.0]))[0]
        assert v == pytest.approx((-1.0) ** (m + 1) * K.khat0, rel=1e-14)


def test_kernel_mean_annihilates_constants(grid):
    f = sample(grid, lambda x: np.full_like(x, 2.3))
    for K in (gaussian_kernel(1), indicator_cube_kernel(1)):
        for mode in ("spectral", "spatial"):
            out = kernel_mean(f, K, 2, 0.5, mode=mode)
            assert np.abs(out.values).max() < 1e-12


def test_kernel_mean_eigenvalue_on_mode(grid):
    f = sample(grid, fourier_mode(grid, 9))
    xi0 = 2.0 * np.pi * 9 / grid.period
    K = gaussian_kernel(1)
    out = kernel_mean(f, K, 2, 0.25)
    lam = kdelta_symbol(K, 2, 0.25).evaluate(np.array([xi0]))[0]
    np.testing.assert_allclose(out.values, lam * f.values, atol=1e-12)


def test_kernel_mean_spectral_vs_spatial(grid, gauss_f):
    for K in (gaussian_kernel(1), indicator_cube_kernel(1)):
        a = kernel_mean(gauss_f, K, 2, 0.25, mode="spectral")
        b = kernel_mean(gauss_f, K, 2, 0.25, mode="spatial")
        rel = np.abs(a.values - b.values).max() / np.abs(a.values).max()
        assert rel < 1e-6


def test_kernel_mean_spatial_2d():
    g2 = make_grid(2, 64, 16.0)
    f = parse_function("gauss", g2)
    K = indicator_cube_kernel(2)
    a = kernel_mean(f, K, 1, 0.5, mode="spectral")
    b = kernel_mean(f, K, 1, 0.5, mode="spatial", nodes=32)
    rel = np.abs(a.values - b.values).max() / np.abs(a.values).max()
    assert rel < 1e-6


def test_custom_sampled_kernel_matches_indicator(grid, gauss_f):
    h = np.linspace(-1.0, 1.0, 4001)
    K = custom_sampled_kernel(h, np.full_like(h, 0.5), name="boxcar")
    Ki = indicator_cube_kernel(1)
    a = kernel_mean(gauss_f, K, 1, 0.5)
    b = kernel_mean(gauss_f, Ki, 1, 0.5)
    assert np.abs(a.values - b.values).max() < 1e-5


def test_admissible_levels_gating(grid):
    K = gaussian_kernel(1)
    levels, excluded = admissible_levels(grid, K, 16)
    assert levels and max(levels) < 16
    assert all(2.0**j * K.bandwidth <= grid.nyquist for j in levels)
    lz, ez = admissible_levels(grid, K, 16, z_indexed=True)
    assert min(lz) < 0 and all(2.0**-j * K.quad_radius <= grid.period / 2
                               for j in lz if j <= 0)


def test_difference_seminorm_zero(grid):
    z = sample(grid, lambda x: np.zeros_like(x))
    req = SeminormRequest(0.5, 2.0, 2, gaussian_kernel(1), trials=8)
    assert difference_seminorm(z, req).value == 0.0


def test_difference_seminorm_square_mode_spectral_oracle(grid):
    # independent oracle: double sum over levels and frequencies
    f = parse_function("modgauss:4", grid)
    s, p, m = 0.5, 2.0, 2
    K = gaussian_kernel(1)
    req = SeminormRequest(s, p, m, K, mode="square")
    got = difference_seminorm(f, req)
    levels = got.params["levels"]
    coeffs = forward(f).coefficients[:, 0]
    xi = grid.axis_freqs()
    oracle = np.sqrt(sum(
        4.0 ** (j * s)
        * (np.abs(kdelta_symbol(K, m, 2.0**-j).evaluate(xi)) ** 2
           * np.abs(coeffs) ** 2).sum() / grid.period
        for j in levels))
    assert got.value == pytest.approx(oracle, rel=1e-10)


def test_difference_seminorm_rademacher_matches_square_at_p2(grid):
    f = parse_function("modgauss:4", grid)
    K = gaussian_kernel(1)
    sq = difference_seminorm(f, SeminormRequest(0.5, 2.0, 2, K, mode="square"))
    mc = difference_seminorm(f, SeminormRequest(0.5, 2.0, 2, K, trials=512, seed=3))
    assert mc.value == pytest.approx(sq.value, rel=3e-2)


def test_z_indexed_seminorm_dominates(grid):
    f = parse_function("modgauss:4", grid)
    K = gaussian_kernel(1)
    w = power_weight(0.5)
    sq_n = difference_seminorm(f, SeminormRequest(0.5, 2.0, 2, K, w, mode="square"))
    sq_z = difference_seminorm(f, SeminormRequest(0.5, 2.0, 2, K, w, mode="square",
                                                  z_indexed=True))
    assert sq_z.value >= sq_n.value - 1e-12
    # reverse control: the two-sided variant is controlled by norm + one-sided
    base = lp_norm(f, 2.0, w)
    C = (sq_z.value - sq_n.value) / base
    assert C < 3.0  # recorded constant for the corpus member


def test_full_difference_norm_constant_is_lebesgue_only(grid):
    f = sample(grid, lambda x: np.full_like(x, 1.4))
    req = SeminormRequest(0.5, 2.0, 2, gaussian_kernel(1), trials=16, seed=0)
    rep = full_difference_norm(f, req)
    assert rep.value == pytest.approx(lp_norm(f, 2.0), rel=1e-12)
    assert rep.extras["seminorm_part"] < 1e-12


def test_square_difference_norm_definitional_identity(grid):
    f = parse_function("modgauss:4", grid)
    K = gaussian_kernel(1)
    s, p = 0.5, 2.0
    rep = square_difference_norm(f, s, p, 1.0, 2, K)
    semi = difference_seminorm(f, SeminormRequest(s, p, 2, K, mode="square"))
    assert rep.extras["square_part"] == pytest.approx(semi.value, rel=1e-12)
    assert rep.value == pytest.approx(lp_norm(f, p) + semi.value, rel=1e-12)


def test_square_difference_norm_single_mode_closed_form(grid):
    k = 24
    f = sample(grid, fourier_mode(grid, k))
    xi0 = 2.0 * np.pi * k / grid.period
    K = gaussian_kernel(1)
    s, p, m = 0.5, 2.0, 2
    rep = square_difference_norm(f, s, p, 1.0, m, K)
    levels = rep.params["levels"]
    theta = np.sqrt(sum(
        4.0 ** (j * s) * abs(kdelta_symbol(K, m, 2.0**-j).evaluate(np.array([xi0]))[0]) ** 2
        for j in levels))
    expect = lp_norm(f, p) * (1.0 + theta)
    assert rep.value == pytest.approx(expect, rel=1e-10)


def test_square_difference_norm_zero(grid):
    z = sample(grid, lambda x: np.zeros_like(x))
    assert square_difference_norm(z, 0.5, 2.0, 1.0, 2, gaussian_kernel(1)).value == 0.0


def test_tauberian_gate_for_sweep_kernels():
    for K in (gaussian_kernel(1), indicator_cube_kernel(1)):
        for m in (1, 2, 3):
            sym = kdelta_transform_symbol(K, m)
            best = max(tauberian_constant(sym, eps) for eps in (0.25, 0.5, 1.0, 2.0, 4.0))
            assert best > 0.5


def test_strichartz_constant_and_zero(grid):
    c = sample(grid, lambda x: np.full_like(x, 2.0))
    rep = strichartz_norm(c, 0.5, 2.0)
    assert rep.extras["ball_part"] < 1e-10
    assert rep.value == pytest.approx(lp_norm(c, 2.0), rel=1e-10)
    z = sample(grid, lambda x: np.zeros_like(x))
    assert strichartz_norm(z, 0.5, 2.0).value == 0.0


def test_strichartz_comparable_to_bessel(grid, gauss_f):
    rep = strichartz_norm(gauss_f, 0.5, 2.0)
    h = bessel_norm(gauss_f, 0.5, 2.0).value
    assert 1.0 <= rep.value / h <= 4.0  # recorded interval for the corpus


def test_strichartz_validation(grid, gauss_f):
    with pytest.raises(ValueError):
        strichartz_norm(gauss_f, 1.5, 2.0)
    from besselspace.errors import BudgetError
    with pytest.raises(BudgetError):
        strichartz_norm(gauss_f, 0.5, 2.0, t_levels=(-8, 0))


def test_averaging_constant_mode_commute(grid):
    c = sample(grid, lambda x: np.full_like(x, 3.3))
    out = averaging(c, 0.7)
    np.testing.assert_allclose(out.values, c.values, atol=1e-12)
    f = sample(grid, fourier_mode(grid, 8))
    xi0 = 2.0 * np.pi * 8 / grid.period
    got = averaging(f, 0.7)
    np.testing.assert_allclose(got.values, np.sin(0.7 * xi0) / (0.7 * xi0) * f.values,
                               atol=1e-12)
    a = averaging(averaging(f, 0.3), 0.9)
    b = averaging(averaging(f, 0.9), 0.3)
    assert np.abs(a.values - b.values).max() < 1e-12


def test_sequence_valued_difference_norms(grid):
    sp = sequence_space(2, 4)
    f = parse_function("modgauss:4", grid, sp)
    K = gaussian_kernel(1)
    sq = square_difference_norm(f, 0.5, 2.0, 1.0, 2, K)
    req = SeminormRequest(0.5, 2.0, 2, K, trials=256, seed=1)
    full = full_difference_norm(f, req)
    assert 0.1 <= sq.value / full.value <= 10.0


def test_seminorm_request_validation():
    K = gaussian_kernel(1)
    with pytest.raises(ValueError):
        SeminormRequest(-0.5, 2.0, 2, K)
    with pytest.raises(ValueError):
        SeminormRequest(0.5, 2.0, 0, K)
    with pytest.raises(ValueError):
        SeminormRequest(2.5, 2.0, 2, K)  # m must exceed s
    with pytest.raises(ValueError):
        SeminormRequest(0.5, 2.0, 2, K, mode="bogus")
    SeminormRequest(2.5, 2.0, 2, K, enforce_m_gt_s=False)
