"""Ellipsoid value type, shape parameters, point functions and the shape taxonomy.

Conventions
-----------
Semi-axes are ordered ``a >= b >= c >= 0``.  Axis ``a`` is the polar axis and
the ``(b, c)`` plane is the equator.  A surface point in eccentric anomalies is

    X = a cos(theta),  Y = b sin(theta) cos(phi),  Z = c sin(theta) sin(phi)

and in central angles

    X = R cos(Theta),  Y = R sin(Theta) cos(Phi),  Z = R sin(Theta) sin(Phi).

``theta, Theta`` lie in ``[0, pi]`` measured from the a-axis; ``phi, Phi`` lie in
``[0, 2 pi)`` measured from the b-axis.  The point functions are numpy-vectorized
over the angles.
"""

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DegenerateShapeError, DomainError

__all__ = [
    "Ellipsoid",
    "ShapeClass",
    "ShapeParams",
    "SurfacePoint",
    "TAXONOMY_FIXTURES",
    "DEFAULT_REL_TOL",
    "make_ellipsoid",
    "cartesian_eccentric",
    "cartesian_central",
    "eccentric_angles",
    "central_angles",
    "radius_eccentric",
    "radius_central",
    "support_height_eccentric",
    "support_height_central",
    "shape_params",
    "classify",
    "volume",
]

DEFAULT_REL_TOL = 1e-12


@dataclass(frozen=True)
class Ellipsoid:
    """Axis-aligned ellipsoid with canonically ordered semi-axes.

    ``permutation[i]`` is the position, in the caller's original argument
    order, of canonical axis ``i``.  Use :func:`make_ellipsoid` to build one
    from axes in any order.
    """

    a: float
    b: float
    c: float
    permutation: tuple = field(default=(0, 1, 2), compare=False)

    def __post_init__(self):
        for name in ("a", "b", "c"):
            v = getattr(self, name)
            if not math.isfinite(v) or v < 0:
                raise DomainError(f"semi-axis {name} must be finite and non-negative, got {v!r}")
        if not (self.a >= self.b >= self.c):
            raise DomainError(
                f"semi-axes must satisfy a >= b >= c, got ({self.a}, {self.b}, {self.c}); "
                "use make_ellipsoid() to sort"
            )

    @property
    def axes(self):
        return (self.a, self.b, self.c)

    @property
    def is_positive(self):
        """True when all three semi-axes are strictly positive."""
        return self.c > 0.0

    def require_positive(self, what="this operation"):
        if not self.is_positive:
            raise DegenerateShapeError(f"{what} needs a, b, c > 0, got {self.axes}")

    def original_order(self, values):
        """Map three per-axis values from canonical order back to the caller's order."""
        out = [None, None, None]
        for canonical, original in enumerate(self.permutation):
            out[original] = values[canonical]
        return tuple(out)

    def scaled(self, t):
        return Ellipsoid(t * self.a, t * self.b, t * self.c, self.permutation)


def make_ellipsoid(a, b, c):
    """Build an :class:`Ellipsoid` from semi-axes in any order.

    >>> e = make_ellipsoid(1, 2, 3)
    >>> e.axes, e.permutation
    ((3.0, 2.0, 1.0), (2, 1, 0))
    """
    raw = []
    for name, v in zip("abc", (a, b, c)):
        try:
            v = float(v)
        except (TypeError, ValueError):
            raise DomainError(f"semi-axis {name} is not a number: {v!r}") from None
        if not math.isfinite(v) or v < 0:
            raise DomainError(f"semi-axis {name} must be finite and non-negative, got {v!r}")
        raw.append(v)
    # stable: ties keep their input order
    perm = tuple(sorted(range(3), key=lambda i: -raw[i]))
    return Ellipsoid(raw[perm[0]], raw[perm[1]], raw[perm[2]], perm)


@dataclass(frozen=True)
class SurfacePoint:
    """Eccentric anomalies of a surface point."""

    theta: float
    phi: float

    def __post_init__(self):
        if not (0.0 <= self.theta <= math.pi):
            raise DomainError(f"theta must lie in [0, pi], got {self.theta!r}")
        if not (0.0 <= self.phi < 2.0 * math.pi):
            raise DomainError(f"phi must lie in [0, 2 pi), got {self.phi!r}")

    @property
    def is_pole(self):
        return self.theta in (0.0, math.pi)


# -- point functions ---------------------------------------------------------


def cartesian_eccentric(ell, theta, phi):
    """Cartesian point ``(X, Y, Z)`` for eccentric anomalies."""
    st = np.sin(theta)
    return ell.a * np.cos(theta), ell.b * st * np.cos(phi), ell.c * st * np.sin(phi)


def cartesian_central(ell, Theta, Phi):
    """Cartesian point ``(X, Y, Z)`` for central angles."""
    R = radius_central(ell, Theta, Phi)
    sT = np.sin(Theta)
    return R * np.cos(Theta), R * sT * np.cos(Phi), R * sT * np.sin(Phi)


def eccentric_angles(ell, X, Y, Z):
    """Eccentric anomalies of a cartesian surface point (a, b, c > 0)."""
    ell.require_positive("eccentric_angles")
    u, v, w = np.asarray(X) / ell.a, np.asarray(Y) / ell.b, np.asarray(Z) / ell.c
    theta = np.arctan2(np.hypot(v, w), u)
    phi = np.mod(np.arctan2(w, v), 2.0 * np.pi)
    return theta, phi


def central_angles(X, Y, Z):
    """Central co-latitude and longitude of a cartesian point."""
    X, Y, Z = np.asarray(X), np.asarray(Y), np.asarray(Z)
    Theta = np.arctan2(np.hypot(Y, Z), X)
    Phi = np.mod(np.arctan2(Z, Y), 2.0 * np.pi)
    return Theta, Phi


def _quad_form(ell, ct2, st2, cp2, sp2):
    a, b, c = ell.axes
    return (b * c) ** 2 * ct2 + st2 * ((c * a) ** 2 * cp2 + (a * b) ** 2 * sp2)


def _quad_form4(ell, ct2, st2, cp2, sp2):
    a, b, c = ell.axes
    return (b * c) ** 4 * ct2 + st2 * ((c * a) ** 4 * cp2 + (a * b) ** 4 * sp2)


def _sq_trig(theta, phi):
    ct, st = np.cos(theta), np.sin(theta)
    cp, sp = np.cos(phi), np.sin(phi)
    return ct * ct, st * st, cp * cp, sp * sp


def radius_eccentric(ell, theta, phi):
    """Distance from the centre to the point at eccentric anomalies (theta, phi)."""
    ct2, st2, cp2, sp2 = _sq_trig(theta, phi)
    a, b, c = ell.axes
    return np.sqrt(a * a * ct2 + st2 * (b * b * cp2 + c * c * sp2))


def radius_central(ell, Theta, Phi):
    """Distance from the centre to the surface along central direction (Theta, Phi)."""
    ell.require_positive("radius_central")
    ct2, st2, cp2, sp2 = _sq_trig(Theta, Phi)
    return ell.a * ell.b * ell.c / np.sqrt(_quad_form(ell, ct2, st2, cp2, sp2))


def support_height_eccentric(ell, theta, phi):
    """Distance from the centre to the tangent plane at eccentric anomalies (theta, phi)."""
    ell.require_positive("support_height_eccentric")
    ct2, st2, cp2, sp2 = _sq_trig(theta, phi)
    return ell.a * ell.b * ell.c / np.sqrt(_quad_form(ell, ct2, st2, cp2, sp2))


def support_height_central(ell, Theta, Phi):
    """Distance from the centre to the tangent plane, in central angles."""
    ell.require_positive("support_height_central")
    ct2, st2, cp2, sp2 = _sq_trig(Theta, Phi)
    q2 = _quad_form(ell, ct2, st2, cp2, sp2)
    q4 = _quad_form4(ell, ct2, st2, cp2, sp2)
    return ell.a * ell.b * ell.c * np.sqrt(q2) / np.sqrt(q4)


def volume(ell):
    return 4.0 * math.pi * ell.a * ell.b * ell.c / 3.0


# -- shape parameters and taxonomy -----------------------------------------


@dataclass(frozen=True)
class ShapeParams:
    """Derived parameters.  ``m`` and ``gamma`` are ``None`` where indeterminate
    (sphere, bar)."""

    e: float
    m: Optional[float]
    b_star: float
    m_star: float
    gamma: Optional[float]

    @property
    def m_defined(self):
        return self.m is not None


def _diff_sq(x, y):
    # x**2 - y**2 without cancellation when x ~ y
    return (x - y) * (x + y)


def shape_params(ell):
    """Eccentricity ``e``, elliptic parameter ``m``, ``b*``, ``m*`` and ``gamma``."""
    a, b, c = ell.axes
    if a == 0.0:
        raise DegenerateShapeError("shape parameters are undefined for a point")
    e = math.sqrt(_diff_sq(a, c)) / a
    e = min(e, 1.0)
    if a == c or b == 0.0:
        m = None
        gamma = None
    else:
        m = (a * a * _diff_sq(b, c)) / (b * b * _diff_sq(a, c))
        m = min(max(m, 0.0), 1.0)
        gamma = math.asin(math.sqrt(m))
    b_star = math.sqrt(0.5 * (a * a + c * c))
    m_star = a * a / (a * a + c * c)
    return ShapeParams(e=e, m=m, b_star=b_star, m_star=m_star, gamma=gamma)


class ShapeClass(enum.Enum):
    PROLATE_OF_REVOLUTION = "prolate of revolution"
    GENERAL_PROLATE = "general prolate"
    GENERAL_SPHEROID = "general spheroid"
    GENERAL_OBLATE = "general oblate"
    OBLATE_OF_REVOLUTION = "oblate of revolution"
    ELLIPTIC_DISC = "elliptic disc"
    CIRCULAR_DISC = "circular disc"
    BAR = "bar"
    SPHERE = "sphere"
    POINT = "point"

    @property
    def m_indeterminate(self):
        return self in (ShapeClass.BAR, ShapeClass.SPHERE, ShapeClass.POINT)

    @property
    def is_general(self):
        """Strictly triaxial, non-degenerate (a > b > c > 0)."""
        return self in (
            ShapeClass.GENERAL_PROLATE,
            ShapeClass.GENERAL_SPHEROID,
            ShapeClass.GENERAL_OBLATE,
        )

    @property
    def label(self):
        return self.value


def classify(ell, rel_tol=DEFAULT_REL_TOL):
    """Place ``ell`` in the ten-way taxonomy of ellipsoid shapes.

    Equalities between positive axes are tested as ``|x - y| <= rel_tol * a``;
    zero axes are tested exactly.  Prolate versus oblate character of a
    triaxial shape is decided by comparing ``b`` with ``b* = sqrt((a^2+c^2)/2)``,
    which is the same as comparing ``m`` with ``m* = a^2/(a^2+c^2)``.
    """
    if not (0.0 <= rel_tol <= 1e-6):
        raise DomainError(f"rel_tol must lie in [0, 1e-6], got {rel_tol!r}")
    a, b, c = ell.axes
    if a == 0.0:
        return ShapeClass.POINT
    tol = rel_tol * a

    def close(x, y):
        return abs(x - y) <= tol

    if c == 0.0:
        if b == 0.0:
            return ShapeClass.BAR
        return ShapeClass.CIRCULAR_DISC if close(a, b) else ShapeClass.ELLIPTIC_DISC
    if close(a, c):
        return ShapeClass.SPHERE
    if close(b, c):
        return ShapeClass.PROLATE_OF_REVOLUTION
    if close(a, b):
        return ShapeClass.OBLATE_OF_REVOLUTION
    b_star = math.sqrt(0.5 * (a * a + c * c))
    if close(b, b_star):
        return ShapeClass.GENERAL_SPHEROID
    return ShapeClass.GENERAL_PROLATE if b < b_star else ShapeClass.GENERAL_OBLATE


# One representative ellipsoid per taxonomy row, with the row's tabulated area.
TAXONOMY_FIXTURES = [
    ("prolate of revolution", (2.0, 1.0, 1.0), ShapeClass.PROLATE_OF_REVOLUTION, "prolate-of-revolution formula"),
    ("general prolate", (3.0, 1.5, 1.0), ShapeClass.GENERAL_PROLATE, "general formula"),
    ("general spheroid", (3.0, math.sqrt(5.0), 1.0), ShapeClass.GENERAL_SPHEROID, "general formula"),
    ("general oblate", (3.0, 2.5, 1.0), ShapeClass.GENERAL_OBLATE, "general formula"),
    ("oblate of revolution", (2.0, 2.0, 1.0), ShapeClass.OBLATE_OF_REVOLUTION, "oblate-of-revolution formula"),
    ("elliptic disc", (2.0, 1.0, 0.0), ShapeClass.ELLIPTIC_DISC, "2 pi a b"),
    ("circular disc", (2.0, 2.0, 0.0), ShapeClass.CIRCULAR_DISC, "2 pi a^2"),
    ("bar", (2.0, 0.0, 0.0), ShapeClass.BAR, "0"),
    ("sphere", (1.5, 1.5, 1.5), ShapeClass.SPHERE, "4 pi a^2"),
    ("point", (0.0, 0.0, 0.0), ShapeClass.POINT, "0"),
]
