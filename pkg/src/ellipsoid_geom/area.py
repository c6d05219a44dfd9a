"""Closed-form surface area of the ellipsoid, dispatched over the shape taxonomy."""

import math

from .core import DEFAULT_REL_TOL, ShapeClass, _diff_sq, classify
from .elliptic import _ellint_fe_sc, ellint_e, ellint_f, ellint_l
from .errors import DegenerateShapeError, DomainError

__all__ = [
    "surface_area",
    "general_area",
    "prolate_revolution_area",
    "oblate_revolution_area",
    "surface_area_newsurf",
    "ellipse_perimeter",
]

TWO_PI = 2.0 * math.pi


def general_area(a, b, c):
    """Area of the triaxial ellipsoid from the elliptic-integral formula.

    S = 2 pi [c^2 + b c^2 / sqrt(a^2 - c^2) F(asin e, m) + b sqrt(a^2 - c^2) E(asin e, m)]

    Valid for a > c > 0 (b anywhere in [c, a]).  No taxonomy dispatch; use
    :func:`surface_area` for arbitrary shapes.
    """
    if not (a >= b >= c > 0.0) or a == c:
        raise DegenerateShapeError(f"general formula needs a >= b >= c > 0 and a > c, got ({a}, {b}, {c})")
    root = math.sqrt(_diff_sq(a, c))  # sqrt(a^2 - c^2)
    # The amplitude is asin(e); its sine and cosine are root / a and c / a.
    # Passing those directly (and 1 - m in factored form) avoids the asin near
    # e = 1, which would amplify rounding by a factor a / c.
    denom = b * b * root * root
    m = min(a * a * _diff_sq(b, c) / denom, 1.0)
    m1 = min(c * c * _diff_sq(a, b) / denom, 1.0)
    F, E = _ellint_fe_sc(min(root / a, 1.0), c / a, m, m1)
    return TWO_PI * (c * c + b * c * c / root * F + b * root * E)


def _prolate(a, e, q):
    # q = sqrt(1 - e^2) = c / a, passed separately because forming it from e
    # loses digits once e is close to 1; for the same reason the angle is
    # atan2(e, q) rather than asin(e)
    if e == 0.0:
        return 2.0 * TWO_PI * a * a
    return TWO_PI * a * a * q * (q + math.atan2(e, q) / e)


def _oblate(a, e, q):
    if e == 0.0:
        return 2.0 * TWO_PI * a * a
    # atanh(e) = log((1 + e) / q), which needs no 1 - e
    return TWO_PI * a * a * (1.0 + q * q * math.log((1.0 + e) / q) / e)


def prolate_revolution_area(a, e):
    """Prolate spheroid (b = c) with eccentricity e."""
    return _prolate(a, e, math.sqrt(_diff_sq(1.0, e)))


def oblate_revolution_area(a, e):
    """Oblate spheroid (a = b) with eccentricity e < 1."""
    return _oblate(a, e, math.sqrt(_diff_sq(1.0, e)))


def surface_area(ell, rel_tol=DEFAULT_REL_TOL):
    """Surface area of ``ell``, exact for every row of the shape taxonomy."""
    a, b, c = ell.axes
    kind = classify(ell, rel_tol)
    if kind in (ShapeClass.POINT, ShapeClass.BAR):
        return 0.0
    if kind is ShapeClass.SPHERE:
        return 2.0 * TWO_PI * a * a
    if kind is ShapeClass.CIRCULAR_DISC:
        return TWO_PI * a * a
    if kind is ShapeClass.ELLIPTIC_DISC:
        return TWO_PI * a * b
    e = min(math.sqrt(_diff_sq(a, c)) / a, 1.0)
    if kind is ShapeClass.PROLATE_OF_REVOLUTION:
        return _prolate(a, e, c / a)
    if kind is ShapeClass.OBLATE_OF_REVOLUTION:
        # c > 0 here, so e < 1 and atanh stays finite
        return _oblate(a, e, c / a)
    return general_area(a, b, c)


def surface_area_newsurf(a, e, m):
    """Area as a function of ``(a, e, m)`` alone.

    Equivalent to the ellipsoid with ``c = a sqrt(1-e^2)`` and
    ``b = a sqrt(1-e^2) / sqrt(1-m e^2)``.  ``e = 1`` (disc or bar) is rejected
    because the prefactor is indeterminate there.
    """
    a, e, m = float(a), float(e), float(m)
    if not a > 0.0:
        raise DomainError(f"a must be positive, got {a!r}")
    if not (0.0 <= e < 1.0):
        raise DomainError(f"e must lie in [0, 1), got {e!r}; use the disc or bar formulas at e = 1")
    if not (0.0 <= m <= 1.0):
        raise DomainError(f"m must lie in [0, 1], got {m!r}")
    if e == 0.0:
        return 2.0 * TWO_PI * a * a
    q = math.sqrt(_diff_sq(1.0, e))
    r = math.sqrt(1.0 - m * e * e)
    amp = math.asin(e)
    bracket = q * r + q * q * ellint_f(amp, m) / e + e * ellint_e(amp, m)
    return TWO_PI * a * a * q / r * bracket


def ellipse_perimeter(a, b):
    """Perimeter of the ellipse with semi-axes ``a >= b >= 0``: 4 a L(1 - b^2/a^2)."""
    a, b = float(a), float(b)
    if not (a >= b >= 0.0) or not math.isfinite(a):
        raise DomainError(f"ellipse_perimeter needs a >= b >= 0, got ({a}, {b})")
    if a == 0.0:
        return 0.0
    m = min(_diff_sq(a, b) / (a * a), 1.0)
    return 4.0 * a * ellint_l(m)
