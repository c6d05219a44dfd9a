import math

import numpy as np
import pytest

from ellipsoid_geom.core import cartesian_eccentric, make_ellipsoid, radius_eccentric, support_height_eccentric
from ellipsoid_geom.curvature import (
    UMBILIC_REL_GAP,
    area_element,
    axis_endpoint_curvatures,
    curvature_product,
    curvature_sum,
    directional_curvature,
    fundamental_forms,
    gauss_bonnet_total,
    point_summary,
    principal_curvatures,
    tangent_vectors,
    umbilics,
    unit_normal,
)
from ellipsoid_geom.errors import DegenerateShapeError, DomainError, PoleChartError

from conftest import random_ellipsoid


def position(ell, theta, phi):
    return np.array([float(v) for v in cartesian_eccentric(ell, theta, phi)])


def random_point(rng):
    return rng.uniform(0.05, math.pi - 0.05), rng.uniform(0, 2 * math.pi)


# -- fundamental forms ---------------------------------------------------------------


def test_sphere_forms():
    e = make_ellipsoid(2, 2, 2)
    ff = fundamental_forms(e, 1.0, 0.5)
    assert ff.U == pytest.approx(4.0)
    assert ff.V == pytest.approx(4 * math.sin(1.0) ** 2)
    assert ff.W == pytest.approx(0.0, abs=1e-15)
    assert ff.kappa == pytest.approx(2.0)
    assert ff.lambda_ == pytest.approx(2 * math.sin(1.0) ** 2)
    rep = principal_curvatures(e, 1.0, 0.5)
    assert rep.chi1 == pytest.approx(0.5) and rep.chi2 == pytest.approx(0.5)
    assert rep.umbilic


def test_forms_at_equator_point():
    ff = fundamental_forms(make_ellipsoid(3, 2, 1), math.pi / 2, 0.0)
    assert (ff.U, ff.V, ff.W, ff.kappa) == pytest.approx((9.0, 1.0, 0.0, 2.0), abs=1e-14)


def test_w_vanishes_for_prolate_revolution():
    e = make_ellipsoid(3, 1, 1)
    th, ph = np.meshgrid(np.linspace(0.1, 3, 9), np.linspace(0, 6, 9))
    assert np.all(fundamental_forms(e, th, ph).W == 0.0)


def test_vectorized_forms_match_scalar():
    e = make_ellipsoid(3, 2, 1)
    th = np.array([0.3, 1.2])
    ph = np.array([2.0, 5.0])
    ff = fundamental_forms(e, th, ph)
    for i in range(2):
        s = fundamental_forms(e, th[i], ph[i])
        assert ff.U[i] == pytest.approx(s.U) and ff.kappa[i] == pytest.approx(s.kappa)
    assert ff.metric.shape == (2, 2, 2)


def test_first_form_by_finite_differences(rng):
    h = 1e-6
    for _ in range(100):
        e = random_ellipsoid(rng)
        th, ph = random_point(rng)
        rt = (position(e, th + h, ph) - position(e, th - h, ph)) / (2 * h)
        rp = (position(e, th, ph + h) - position(e, th, ph - h)) / (2 * h)
        ff = fundamental_forms(e, th, ph)
        scale = max(ff.U, ff.V)
        assert abs(rt @ rt - ff.U) <= 1e-7 * scale
        assert abs(rp @ rp - ff.V) <= 1e-7 * scale
        assert abs(rt @ rp - ff.W) <= 1e-7 * scale


def test_second_form_by_normal_derivatives(rng):
    # with the outward normal, kappa = R_theta . n_theta and so on
    h = 1e-6
    for _ in range(50):
        e = random_ellipsoid(rng, lo=0.05)
        th, ph = random_point(rng)
        rt, rp = tangent_vectors(e, th, ph)
        nt = (unit_normal(e, th + h, ph) - unit_normal(e, th - h, ph)) / (2 * h)
        npp = (unit_normal(e, th, ph + h) - unit_normal(e, th, ph - h)) / (2 * h)
        ff = fundamental_forms(e, th, ph)
        scale = max(ff.kappa, ff.lambda_)
        assert (rt @ nt) == pytest.approx(ff.kappa, abs=1e-6 * scale)
        assert (rp @ npp) == pytest.approx(ff.lambda_, abs=1e-6 * scale)
        assert (rt @ npp) == pytest.approx(ff.mu, abs=1e-6 * scale)


def test_kappa_is_support_height():
    e = make_ellipsoid(3, 2, 1)
    assert fundamental_forms(e, 0.7, 0.4).kappa == pytest.approx(float(support_height_eccentric(e, 0.7, 0.4)))


def test_normal_parallel_to_gradient(rng):
    for _ in range(50):
        e = random_ellipsoid(rng)
        th, ph = random_point(rng)
        X = position(e, th, ph)
        g = X / np.array(e.axes) ** 2
        n = unit_normal(e, th, ph)
        np.testing.assert_allclose(n, g / np.linalg.norm(g), atol=1e-12)
        assert n @ X > 0


def test_area_element_matches_metric():
    e = make_ellipsoid(3, 2, 1)
    ff = fundamental_forms(e, 0.9, 2.2)
    assert float(area_element(e, 0.9, 2.2)) == pytest.approx(math.sqrt(ff.U * ff.V - ff.W**2), rel=1e-13)


# -- principal curvatures -----------------------------------------------------------


def test_directions_orthonormal_and_tangent(rng):
    for _ in range(100):
        e = random_ellipsoid(rng)
        th, ph = random_point(rng)
        rep = principal_curvatures(e, th, ph)
        assert rep.chi1 >= rep.chi2 > 0
        assert np.linalg.norm(rep.dir1) == pytest.approx(1.0)
        assert np.linalg.norm(rep.dir2) == pytest.approx(1.0)
        assert abs(rep.dir1 @ rep.dir2) < 1e-12
        assert abs(rep.dir1 @ rep.normal) < 1e-12
        np.testing.assert_allclose(rep.normal, unit_normal(e, th, ph), atol=1e-12)


def test_shape_operator_halving(rng):
    # along a principal direction dn = chi dR; the central difference error
    # is O(s^2), so it quarters when s halves
    e = make_ellipsoid(3, 2, 1)
    th, ph = 0.8, 0.6
    rep = principal_curvatures(e, th, ph)
    rt, rp = tangent_vectors(e, th, ph)
    basis = np.column_stack([rt, rp])
    for chi, d in ((rep.chi1, rep.dir1), (rep.chi2, rep.dir2)):
        coeff = np.linalg.lstsq(basis, d, rcond=None)[0]
        errs = []
        for s in (1e-3, 5e-4):
            n1 = unit_normal(e, th + s * coeff[0], ph + s * coeff[1])
            n0 = unit_normal(e, th - s * coeff[0], ph - s * coeff[1])
            errs.append(np.linalg.norm((n1 - n0) / (2 * s) - chi * d))
        assert errs[0] < 1e-5
        assert errs[1] == pytest.approx(errs[0] / 4, rel=0.05)


def test_sum_and_product_closure(rng):
    for _ in range(200):
        e = random_ellipsoid(rng)
        th, ph = random_point(rng)
        rep = principal_curvatures(e, th, ph)
        R = float(radius_eccentric(e, th, ph))
        H = float(support_height_eccentric(e, th, ph))
        assert rep.chi1 + rep.chi2 == pytest.approx(curvature_sum(e, R, H), rel=1e-11)
        assert rep.chi1 * rep.chi2 == pytest.approx(curvature_product(e, H), rel=1e-11)
        assert rep.mean == pytest.approx(0.5 * (rep.chi1 + rep.chi2))
        assert rep.gaussian == pytest.approx(rep.chi1 * rep.chi2)


def test_sum_product_examples():
    e = make_ellipsoid(3, 2, 1)
    # at (0, 2, 0): R = H = 2, curvatures 2/9 and 2
    assert curvature_sum(e, 2.0, 2.0) == pytest.approx(2 / 9 + 2)
    assert curvature_product(e, 2.0) == pytest.approx(4 / 9)


def test_equator_point_values():
    rep = principal_curvatures(make_ellipsoid(3, 2, 1), math.pi / 2, 0.0)
    assert rep.chi1 == pytest.approx(2.0) and rep.chi2 == pytest.approx(2 / 9)


def test_pole_raises_and_endpoint_values():
    e = make_ellipsoid(3, 2, 1)
    for th in (0.0, math.pi):
        with pytest.raises(PoleChartError):
            principal_curvatures(e, th, 1.0)
    rep = axis_endpoint_curvatures(e, 0, 1)
    assert (rep.chi1, rep.chi2) == pytest.approx((3.0, 0.75))
    np.testing.assert_array_equal(rep.dir1, [0, 0, 1])
    np.testing.assert_array_equal(rep.normal, [1, 0, 0])
    rep = axis_endpoint_curvatures(e, 2, -1)
    assert (rep.chi1, rep.chi2) == pytest.approx((1 / 4, 1 / 9))
    with pytest.raises(DomainError):
        axis_endpoint_curvatures(e, 3, 1)


def test_endpoint_agrees_with_nearby_chart_point():
    e = make_ellipsoid(3, 2, 1)
    rep = principal_curvatures(e, 1e-5, 0.3)
    end = axis_endpoint_curvatures(e, 0, 1)
    assert rep.chi1 == pytest.approx(end.chi1, rel=1e-8)
    assert rep.chi2 == pytest.approx(end.chi2, rel=1e-8)


def test_invalid_point():
    e = make_ellipsoid(3, 2, 1)
    with pytest.raises(DomainError):
        principal_curvatures(e, -0.1, 0.0)
    with pytest.raises(DegenerateShapeError):
        principal_curvatures(make_ellipsoid(2, 1, 0), 1.0, 1.0)


def test_directional_curvature_bounded(rng):
    for _ in range(100):
        e = random_ellipsoid(rng, lo=0.01)
        th, ph = random_point(rng)
        rep = principal_curvatures(e, th, ph)
        k = directional_curvature(e, th, ph, *rng.normal(size=2))
        assert rep.chi2 * (1 - 1e-12) <= k <= rep.chi1 * (1 + 1e-12)


def test_directional_curvature_along_coordinate_lines():
    e = make_ellipsoid(3, 2, 1)
    ff = fundamental_forms(e, 0.7, 0.2)
    assert directional_curvature(e, 0.7, 0.2, 1.0, 0.0) == pytest.approx(ff.kappa / ff.U)
    assert directional_curvature(e, 0.7, 0.2, 0.0, 2.0) == pytest.approx(ff.lambda_ / ff.V)
    with pytest.raises(DomainError):
        directional_curvature(e, 0.7, 0.2, 0.0, 0.0)


# -- umbilics -------------------------------------------------------------------------


def test_umbilics_321():
    u = umbilics(make_ellipsoid(3, 2, 1))
    assert u.points.shape == (4, 3)
    assert u.curvature == pytest.approx(0.375)
    assert u.radius == pytest.approx(math.sqrt(6))
    assert u.height == pytest.approx(1.5)
    for X, Y, Z in u.points:
        assert (X / 3) ** 2 + (Y / 2) ** 2 + Z**2 == pytest.approx(1.0, abs=1e-15)
        assert math.hypot(X, Z) == pytest.approx(u.radius)


def test_umbilics_are_umbilic():
    e = make_ellipsoid(3, 2, 1)
    u = umbilics(e)
    for X, _, Z in u.points:
        th = math.acos(X / 3)
        ph = math.atan2(Z, 0.0) % (2 * math.pi)
        rep = principal_curvatures(e, th, ph)
        assert rep.umbilic
        assert rep.chi1 - rep.chi2 <= UMBILIC_REL_GAP * rep.chi1
        assert rep.chi1 == pytest.approx(u.curvature, rel=1e-12)


def test_umbilics_errors():
    for axes in ((2, 2, 1), (2, 1, 1), (1, 1, 1), (2, 1, 0)):
        with pytest.raises(DegenerateShapeError):
            umbilics(make_ellipsoid(*axes))


def test_non_umbilic_point_flag():
    assert not principal_curvatures(make_ellipsoid(3, 2, 1), 1.0, 1.0).umbilic


# -- global ---------------------------------------------------------------------------------


def test_gauss_bonnet(rng):
    for axes in ((1, 1, 1), (3, 2, 1), (2, 1e-3, 1e-3)):
        assert gauss_bonnet_total(make_ellipsoid(*axes)).value == pytest.approx(4 * math.pi, rel=1e-9)
    for _ in range(5):
        assert gauss_bonnet_total(random_ellipsoid(rng)).value == pytest.approx(4 * math.pi, rel=1e-9)


def test_point_summary():
    d = point_summary(make_ellipsoid(3, 2, 1), math.pi / 2, 0.0)
    assert (d["x"], d["y"], d["z"]) == pytest.approx((0.0, 2.0, 0.0), abs=1e-15)
    assert d["radius"] == pytest.approx(2.0) and d["height"] == pytest.approx(2.0)
    assert d["sum_formula"] == pytest.approx(2 + 2 / 9)
