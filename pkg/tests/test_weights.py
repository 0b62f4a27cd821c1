import numpy as np
import pytest

from besselspace.weights import (Cube, DyadicCube, ap_characteristic_estimate,
                                 bar_weight, constant_weight, cube,
                                 cube_mass, custom_weight, embedding_condition,
                                 inclusion_condition, modified_multiplier_weight,
                                 origin_cube_family, parse_weight,
                                 piecewise_power_weight, power_weight,
                                 weight_record)


def test_cube_mass_constant():
    for d, r in [(1, 0.7), (2, 1.3)]:
        Q = cube([-r] * d, [r] * d)
        assert cube_mass(constant_weight(1.0), Q) == pytest.approx((2 * r) ** d, rel=1e-14)


def test_cube_mass_power_closed_form():
    # int_{-r}^{r} |t|^{1/2} dt = (4/3) r^{3/2}
    w = power_weight(0.5)
    for r in (0.3, 1.0, 2.5):
        Q = cube([-r], [r])
        assert cube_mass(w, Q) == pytest.approx(4.0 / 3.0 * r**1.5, rel=1e-13)


def test_piecewise_equals_power_when_exponents_match():
    w1 = piecewise_power_weight(0.7, 0.7)
    w2 = power_weight(0.7)
    for Q in [cube([-0.5], [0.5]), cube([0.2], [3.0]), cube([-4.0], [2.0])]:
        assert cube_mass(w1, Q) == pytest.approx(cube_mass(w2, Q), rel=1e-13)


def test_cube_mass_bisection_additive_analytic():
    w = piecewise_power_weight(-0.5, 0.25)
    Q = cube([-1.5], [2.0])
    mid = 0.25
    left, right = cube([-1.5], [mid]), cube([mid], [2.0])
    total = cube_mass(w, left) + cube_mass(w, right)
    assert total == pytest.approx(cube_mass(w, Q), rel=1e-13)


def test_cube_mass_bisection_additive_custom():
    w = custom_weight(lambda x: 2.0 + np.cos(x))
    Q = cube([-1.0], [1.0])
    whole = cube_mass(w, Q, refinement=4096)
    halves = cube_mass(w, cube([-1.0], [0.0]), refinement=4096) \
        + cube_mass(w, cube([0.0], [1.0]), refinement=4096)
    assert abs(whole - halves) / whole < 1e-8


def test_cube_mass_divergent_is_inf():
    w = bar_weight(power_weight(0.0), 0.75, 2.0)  # |x|^{-1.5}
    assert cube_mass(w, cube([-1.0], [1.0])) == np.inf
    assert cube_mass(w, cube([0.0], [1.0])) == np.inf
    assert np.isfinite(cube_mass(w, cube([0.5], [1.0])))


def test_cube_mass_log_case():
    w = bar_weight(power_weight(0.0), 0.5, 2.0)  # |x|^{-1}
    assert cube_mass(w, cube([-1.0], [1.0])) == np.inf
    got = cube_mass(w, cube([0.5], [2.0]))
    assert got == pytest.approx(np.log(4.0), rel=1e-13)


def test_modified_and_bar_reductions():
    base = piecewise_power_weight(0.5, -0.25)
    wm = modified_multiplier_weight(base, 0.25, 2.0)
    wb = bar_weight(base, 0.25, 2.0)
    assert (wm.alpha, wm.beta) == (0.0, -0.25)
    assert (wb.alpha, wb.beta) == (0.0, -0.75)
    x = np.array([0.3, 2.0])
    np.testing.assert_allclose(wm(x), [1.0, 2.0**-0.25], atol=1e-14)
    np.testing.assert_allclose(wb(x), [1.0, 2.0**-0.75], atol=1e-14)


def test_dyadic_cube_geometry():
    Q = DyadicCube(3, (5,)).bounds()
    assert Q.hi[0] - Q.lo[0] == pytest.approx(2.0**-3)
    assert 0.5 * (Q.hi[0] + Q.lo[0]) == pytest.approx(5 * 2.0**-3)


def test_ap_constant_is_exactly_one():
    fam = origin_cube_family([0.25, 1.0, 4.0])
    for c in (1.0, 2.0, 0.5, 3.0, 7.0):
        for p in (1.5, 2.0, 3.0):
            assert ap_characteristic_estimate(constant_weight(c), p, fam) == 1.0


def test_ap_power_weight_closed_form():
    # origin family value 1/((1+g)(1-g)) at p = 2, independent of radius
    for g in (0.25, 0.5, 0.9):
        w = power_weight(g)
        val = ap_characteristic_estimate(w, 2.0, origin_cube_family([0.3, 1.0, 5.0]))
        assert val == pytest.approx(1.0 / ((1 + g) * (1 - g)), rel=1e-12)


def test_ap_flags_divergence():
    fam = origin_cube_family([1.0])
    # dual exponent -1.5 at p = 2 is non-integrable
    assert ap_characteristic_estimate(power_weight(1.5), 2.0, fam) == np.inf
    # weight exponent -1.2: not locally integrable
    w = bar_weight(power_weight(0.3), 0.75, 2.0)
    assert w.alpha == pytest.approx(-1.2)
    assert ap_characteristic_estimate(w, 2.0, fam) == np.inf


def test_ap_dilation_invariance_on_matched_families():
    w = power_weight(0.5)
    for lam in (0.5, 2.0, 8.0):
        a = ap_characteristic_estimate(w.dilated(lam), 2.0, origin_cube_family([0.5, 2.0]))
        b = ap_characteristic_estimate(w, 2.0, origin_cube_family([0.5 * lam, 2.0 * lam]))
        assert a == pytest.approx(b, rel=1e-12)


def test_ap_monotone_in_family():
    w = piecewise_power_weight(0.5, -0.3)
    small = ap_characteristic_estimate(w, 2.0, origin_cube_family([1.0]))
    more = ap_characteristic_estimate(w, 2.0, origin_cube_family([1.0, 0.1, 10.0]))
    assert more >= small


def test_embedding_constant_weights():
    scan = embedding_condition(constant_weight(1.0), 2.0, 0.5,
                               constant_weight(1.0), 2.0, 0.0)
    assert scan.verdict == "bounded"
    assert scan.sup == pytest.approx(1.0)
    np.testing.assert_allclose(scan.per_nu,
                               2.0 ** (-0.5 * np.arange(len(scan.per_nu))),
                               rtol=1e-12)


def test_embedding_bar_weight_constant_supremand():
    # with w1 the -sp reweighting of w0 the supremand is flat in the scale:
    # 2^s ((a+1)/(a-sp+1))^{1/p}, from the closed-form cell integrals
    a, s, p = 0.5, 0.25, 2.0
    w0 = piecewise_power_weight(a, a)
    w1 = bar_weight(w0, s, p)
    scan = embedding_condition(w0, p, s, w1, p, 0.0)
    expected = 2.0**s * ((a + 1.0) / (a - s * p + 1.0)) ** (1.0 / p)
    np.testing.assert_allclose(scan.per_nu, expected, rtol=1e-12)
    assert scan.verdict == "bounded"


def test_embedding_divergent_bar_weight():
    a, p = 0.0, 2.0
    s = 0.6  # a - sp = -1.2 <= -1: infinite masses at the axis
    w0 = piecewise_power_weight(a, a)
    w1 = bar_weight(w0, s, p)
    scan = embedding_condition(w0, p, s, w1, p, 0.0)
    assert scan.verdict == "diverging"
    assert scan.sup == np.inf


def test_embedding_rejects_bad_parameters():
    w = constant_weight(1.0)
    with pytest.raises(ValueError):
        embedding_condition(w, 2.0, 0.0, w, 2.0, 0.5)
    with pytest.raises(ValueError):
        embedding_condition(w, 3.0, 0.5, w, 2.0, 0.0)


def test_inclusion_constant_weight_closed_form():
    s, p = 0.25, 2.0
    scan = inclusion_condition(constant_weight(1.0), s, p)
    expected = 2.0 ** (s * p) / (1.0 - s * p)  # = 2 sqrt(2)
    assert expected == pytest.approx(2.0 * np.sqrt(2.0))
    np.testing.assert_allclose(scan.per_nu, expected, rtol=1e-12)
    assert scan.verdict == "bounded"


@pytest.mark.parametrize("alpha", [-0.5, 0.0, 0.5, 1.0])
@pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
def test_inclusion_flips_exactly_at_threshold(alpha, p):
    w = piecewise_power_weight(alpha, 0.5)
    thr = (1.0 + alpha) / p
    below = inclusion_condition(w, 0.99 * thr, p)
    at = inclusion_condition(w, thr, p)
    above = inclusion_condition(w, 1.01 * thr, p)
    assert below.verdict == "bounded"
    assert at.verdict == "diverging" and at.sup == np.inf
    assert above.verdict == "diverging"


def test_inclusion_2d_matches_1d_for_first_coordinate_weights():
    w = piecewise_power_weight(0.25, 0.0)
    s1 = inclusion_condition(w, 0.3, 2.0, d=1, nu_max=10)
    s2 = inclusion_condition(w, 0.3, 2.0, d=2, nu_max=10, m_range=3)
    np.testing.assert_allclose(s1.per_nu, s2.per_nu, rtol=1e-12)


def test_weight_records_round_trip():
    for w in (constant_weight(2.5), power_weight(-0.5),
              piecewise_power_weight(0.25, -0.75),
              bar_weight(piecewise_power_weight(0.25, -0.75), 0.3, 2.0)):
        back = parse_weight(weight_record(w))
        assert (back.kind, back.c, back.alpha, back.beta) == \
            (w.kind, w.c, w.alpha, w.beta)
    assert parse_weight("bar:vab:0.25:-0.75:0.3:2").alpha == pytest.approx(0.25 - 0.6)
    with pytest.raises(ValueError):
        parse_weight("nope:1")
    with pytest.raises(ValueError):
        weight_record(custom_weight(lambda x: x * 0 + 1.0))


def test_constructor_validation():
    with pytest.raises(ValueError):
        power_weight(-1.0)
    with pytest.raises(ValueError):
        piecewise_power_weight(-1.1, 0.0)
    with pytest.raises(ValueError):
        constant_weight(0.0)
