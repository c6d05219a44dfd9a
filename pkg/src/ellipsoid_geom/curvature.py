"""Fundamental forms, principal curvatures and umbilics of the ellipsoid.

Everything is expressed in the eccentric-anomaly chart (theta, phi) with the
outward normal, so the ellipsoid has positive curvatures everywhere.

Naming note: the product chi1 * chi2 = H^4 / (a b c)^2 is reported as
``gaussian``, which is the usual meaning of Gaussian curvature.  Some older
texts call this product the *square* of the Gaussian curvature.
"""

import math
from dataclasses import dataclass

import numpy as np

from .core import _sq_trig, cartesian_eccentric, radius_eccentric, support_height_eccentric
from .errors import DegenerateShapeError, DomainError, PoleChartError
from .quadrature import DEFAULT_SPEC, integrate_2d

__all__ = [
    "FundamentalForms",
    "CurvatureReport",
    "UmbilicSet",
    "UMBILIC_REL_GAP",
    "fundamental_forms",
    "tangent_vectors",
    "area_element",
    "unit_normal",
    "principal_curvatures",
    "axis_endpoint_curvatures",
    "curvature_sum",
    "curvature_product",
    "directional_curvature",
    "umbilics",
    "gauss_bonnet_total",
]

UMBILIC_REL_GAP = 1e-9


@dataclass(frozen=True)
class FundamentalForms:
    """First form (U, V, W) and second form (kappa, lambda_, mu) coefficients."""

    U: float
    V: float
    W: float
    kappa: float
    lambda_: float
    mu: float

    @property
    def metric(self):
        return np.array([[self.U, self.W], [self.W, self.V]])

    @property
    def second(self):
        return np.array([[self.kappa, self.mu], [self.mu, self.lambda_]])


@dataclass(frozen=True)
class CurvatureReport:
    chi1: float
    chi2: float
    mean: float
    gaussian: float
    dir1: np.ndarray
    dir2: np.ndarray
    normal: np.ndarray
    umbilic: bool = False


@dataclass(frozen=True)
class UmbilicSet:
    points: np.ndarray  # shape (4, 3)
    radius: float
    height: float
    curvature: float


def fundamental_forms(ell, theta, phi):
    """Coefficients of both fundamental forms at eccentric anomalies (theta, phi).

    Works elementwise on arrays.  ``mu`` is identically zero in this chart and
    ``kappa`` equals the support height H.
    """
    ell.require_positive("fundamental_forms")
    a, b, c = ell.axes
    ct2, st2, cp2, sp2 = _sq_trig(theta, phi)
    U = a * a * st2 + ct2 * (b * b * cp2 + c * c * sp2)
    V = st2 * (b * b * sp2 + c * c * cp2)
    W = -(b * b - c * c) * np.sin(theta) * np.cos(theta) * np.sin(phi) * np.cos(phi)
    kappa = support_height_eccentric(ell, theta, phi)
    lam = kappa * st2
    mu = np.zeros_like(kappa)
    if np.ndim(kappa) == 0:
        return FundamentalForms(float(U), float(V), float(W), float(kappa), float(lam), 0.0)
    return FundamentalForms(U, V, W, kappa, lam, mu)


def tangent_vectors(ell, theta, phi):
    """Partial derivatives of the position vector, R_theta and R_phi."""
    a, b, c = ell.axes
    st, ct = math.sin(theta), math.cos(theta)
    sp, cp = math.sin(phi), math.cos(phi)
    r_theta = np.array([-a * st, b * ct * cp, c * ct * sp])
    r_phi = np.array([0.0, -b * st * sp, c * st * cp])
    return r_theta, r_phi


def _cross_components(ell, theta, phi):
    # R_theta x R_phi = sin(theta) * (b c cos(theta), c a sin(theta) cos(phi), a b sin(theta) sin(phi))
    a, b, c = ell.axes
    st, ct = np.sin(theta), np.cos(theta)
    return st * b * c * ct, st * c * a * st * np.cos(phi), st * a * b * st * np.sin(phi)


def area_element(ell, theta, phi):
    """|R_theta x R_phi| = sqrt(U V - W^2), computed without cancellation."""
    x, y, z = _cross_components(ell, theta, phi)
    return np.sqrt(x * x + y * y + z * z)


def unit_normal(ell, theta, phi):
    """Outward unit normal at a non-pole point."""
    n = np.array(_cross_components(ell, theta, phi), dtype=float)
    return n / np.linalg.norm(n)


def curvature_sum(ell, R, H):
    """chi1 + chi2 = H^3 (a^2 + b^2 + c^2 - R^2) / (a b c)^2, twice the mean curvature."""
    ell.require_positive("curvature_sum")
    a, b, c = ell.axes
    return H**3 * (a * a + b * b + c * c - R * R) / (a * b * c) ** 2


def curvature_product(ell, H):
    """chi1 * chi2 = H^4 / (a b c)^2."""
    ell.require_positive("curvature_product")
    a, b, c = ell.axes
    return H**4 / (a * b * c) ** 2


def _check_angles(theta, phi):
    theta, phi = float(theta), float(phi)
    if not (0.0 <= theta <= math.pi) or not math.isfinite(phi):
        raise DomainError(f"invalid surface point (theta={theta!r}, phi={phi!r})")
    if theta in (0.0, math.pi):
        raise PoleChartError(
            "the (theta, phi) chart is singular at theta = 0, pi; use axis_endpoint_curvatures()"
        )
    return theta, phi


def _shape_matrix(ell, theta, phi):
    """Second fundamental form in the orthonormal tangent basis (e1, e2).

    e1 = R_theta / |R_theta|, e2 completes it within the tangent plane.  The
    symmetric 2x2 result has the principal curvatures as eigenvalues.
    """
    ff = fundamental_forms(ell, theta, phi)
    U, W = ff.U, ff.W
    D = float(area_element(ell, theta, phi)) ** 2  # U V - W^2
    p = ff.kappa / U
    q = -ff.kappa * W / (U * math.sqrt(D))
    r = (ff.kappa * W * W + ff.lambda_ * U * U) / (U * D)
    r_theta, r_phi = tangent_vectors(ell, theta, phi)
    e1 = r_theta / math.sqrt(U)
    e2 = r_phi - (W / U) * r_theta
    e2 = e2 / np.linalg.norm(e2)
    return p, q, r, e1, e2


def principal_curvatures(ell, theta, phi):
    """Principal curvatures and directions at a non-pole surface point.

    Solves (second form - chi * metric) v = 0.  The reduction to an orthonormal
    tangent basis keeps the eigenvalue gap accurate near umbilics, where the
    textbook quadratic formula loses half the digits.
    """
    ell.require_positive("principal_curvatures")
    theta, phi = _check_angles(theta, phi)
    p, q, r, e1, e2 = _shape_matrix(ell, theta, phi)
    half_sum = 0.5 * (p + r)
    radius = math.hypot(0.5 * (p - r), q)
    chi1, chi2 = half_sum + radius, half_sum - radius
    # chi1 * chi2 from the determinant avoids cancellation in chi2
    if chi1 != 0.0:
        chi2 = min((p * r - q * q) / chi1, chi1)
    umbilic = abs(chi1 - chi2) <= UMBILIC_REL_GAP * abs(chi1)
    if umbilic:
        d1, d2 = e1, e2
    else:
        alpha = 0.5 * math.atan2(2.0 * q, p - r)
        ca, sa = math.cos(alpha), math.sin(alpha)
        d1 = ca * e1 + sa * e2
        d2 = -sa * e1 + ca * e2
    normal = np.cross(e1, e2)
    return CurvatureReport(
        chi1=chi1,
        chi2=chi2,
        mean=0.5 * (chi1 + chi2),
        gaussian=chi1 * chi2,
        dir1=d1,
        dir2=d2,
        normal=normal,
        umbilic=umbilic,
    )


def axis_endpoint_curvatures(ell, axis=0, sign=1):
    """Curvatures at the endpoint ``sign * (semi-axis)`` of canonical axis 0, 1 or 2.

    Evaluated chart-free from the sum and product formulas with R = H = the
    semi-axis length.  At the endpoint of axis i the principal directions are
    the other two coordinate axes; the curvature along axis j is s_i / s_j^2.
    """
    ell.require_positive("axis_endpoint_curvatures")
    if axis not in (0, 1, 2) or sign not in (1, -1):
        raise DomainError(f"axis must be 0, 1 or 2 and sign +-1, got ({axis!r}, {sign!r})")
    s = ell.axes
    R = H = s[axis]
    total = curvature_sum(ell, R, H)
    product = curvature_product(ell, H)
    disc = max(0.25 * total * total - product, 0.0)
    chi1 = 0.5 * total + math.sqrt(disc)
    chi2 = product / chi1
    j, k = [i for i in range(3) if i != axis]
    # curvature along axis j is s_axis / s_j^2, so the shorter axis gives chi1
    first, second = (k, j) if s[k] <= s[j] else (j, k)
    d1 = np.zeros(3)
    d1[first] = 1.0
    d2 = np.zeros(3)
    d2[second] = 1.0
    normal = np.zeros(3)
    normal[axis] = float(sign)
    umbilic = abs(chi1 - chi2) <= UMBILIC_REL_GAP * chi1
    return CurvatureReport(chi1, chi2, 0.5 * (chi1 + chi2), chi1 * chi2, d1, d2, normal, umbilic)


def directional_curvature(ell, theta, phi, dtheta, dphi):
    """Normal curvature along the chart direction (dtheta, dphi)."""
    ell.require_positive("directional_curvature")
    theta, phi = _check_angles(theta, phi)
    if dtheta == 0.0 and dphi == 0.0:
        raise DomainError("direction (dtheta, dphi) must be non-zero")
    ff = fundamental_forms(ell, theta, phi)
    num = ff.kappa * dtheta**2 + 2.0 * ff.mu * dtheta * dphi + ff.lambda_ * dphi**2
    den = ff.U * dtheta**2 + 2.0 * ff.W * dtheta * dphi + ff.V * dphi**2
    return num / den


def umbilics(ell):
    """The four umbilic points of a strictly triaxial ellipsoid (a > b > c > 0)."""
    a, b, c = ell.axes
    if c == 0.0:
        raise DegenerateShapeError("umbilics are undefined for flat or degenerate shapes")
    if a == b or b == c:
        raise DegenerateShapeError("no isolated umbilics for shapes of revolution")
    ac = (a - c) * (a + c)
    X = a * math.sqrt((a - b) * (a + b) / ac)
    Z = c * math.sqrt((b - c) * (b + c) / ac)
    points = np.array([[sx * X, 0.0, sz * Z] for sx in (1, -1) for sz in (1, -1)])
    return UmbilicSet(
        points=points,
        radius=math.sqrt(a * a + c * c - b * b),
        height=a * c / b,
        curvature=a * c / b**3,
    )


def gauss_bonnet_total(ell, spec=DEFAULT_SPEC):
    """Integral of chi1 * chi2 over the surface; equals 4 pi for any ellipsoid."""
    ell.require_positive("gauss_bonnet_total")

    def integrand(theta, phi):
        H = support_height_eccentric(ell, theta, phi)
        return curvature_product(ell, H) * area_element(ell, theta, phi)

    return integrate_2d(integrand, ((0.0, 0.5 * math.pi), (0.0, 0.5 * math.pi)), spec).scaled(8.0)


def point_summary(ell, theta, phi):
    """R and H at a point, with the sum/product closed forms for cross-checking."""
    R = float(radius_eccentric(ell, theta, phi))
    H = float(support_height_eccentric(ell, theta, phi))
    X, Y, Z = (float(v) for v in cartesian_eccentric(ell, theta, phi))
    return {
        "x": X,
        "y": Y,
        "z": Z,
        "radius": R,
        "height": H,
        "sum_formula": curvature_sum(ell, R, H),
        "product_formula": curvature_product(ell, H),
    }
