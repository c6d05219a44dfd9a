"""Adaptive quadrature and the integral identities used as area oracles.

The cubature is a globally adaptive tensor-product Gauss-Kronrod (7, 15)
rule.  Each rectangle is evaluated once on the 15x15 Kronrod grid; the 7-point
Gauss nodes are a subset, so the G7xK15 and K15xG7 sums come for free and give
a per-direction error estimate.  A rectangle whose error is too large is
bisected along the direction that contributes more error, which keeps strip
shaped features (thin ellipsoids) cheap.

Integrands are vectorized callables ``f(x, y) -> ndarray``.
"""

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    _quad_form,
    _quad_form4,
    _sq_trig,
    radius_central,
    support_height_central,
)
from .errors import DegenerateShapeError, DomainError, QuadratureError

__all__ = [
    "QuadratureSpec",
    "OracleResult",
    "integrate_1d",
    "integrate_2d",
    "area_by_eq_s",
    "area_by_eq_ss",
    "area_by_eq_seta",
    "mean_inverse_radius_identity",
    "r3_over_h_identity",
    "ellipse_ratio_identity",
]

# Gauss-Kronrod 15-point nodes (non-negative half) and weights, from QUADPACK.
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# full 15-point rule on [-1, 1]
KRONROD_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
# 7-point Gauss weights laid out on the Kronrod grid (zero at Kronrod-only nodes)
GAUSS_WEIGHTS = np.zeros(15)
GAUSS_WEIGHTS[[1, 3, 5]] = _WG[:3]
GAUSS_WEIGHTS[7] = _WG[3]
GAUSS_WEIGHTS[[9, 11, 13]] = _WG[2::-1]

_EPS = np.finfo(float).eps
_MAX_CELLS = 400_000


@dataclass(frozen=True)
class QuadratureSpec:
    """Accuracy target for the adaptive integrators.

    ``max_subdivisions`` caps the number of bisections applied to any single
    cell along each direction.
    """

    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_subdivisions: int = 20

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise DomainError(f"rel_tol must be positive, got {self.rel_tol!r}")
        if not self.abs_tol >= 0:
            raise DomainError(f"abs_tol must be non-negative, got {self.abs_tol!r}")
        if self.max_subdivisions < 1:
            raise DomainError(f"max_subdivisions must be >= 1, got {self.max_subdivisions!r}")


DEFAULT_SPEC = QuadratureSpec()


@dataclass(frozen=True)
class OracleResult:
    value: float
    error_estimate: float
    evaluations: int

    def scaled(self, factor, offset=0.0):
        """Affine transform ``factor * value + offset`` with the error scaled alike."""
        return OracleResult(
            factor * self.value + offset, abs(factor) * self.error_estimate, self.evaluations
        )


def _target(total, spec):
    return max(spec.abs_tol, spec.rel_tol * abs(total))


# -- 1-D ------------------------------------------------------------------------


def _gk_1d(f, lo, hi):
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    x = mid[:, None] + half[:, None] * KRONROD_NODES[None, :]
    fx = np.asarray(f(x), dtype=float)
    qk = half * (fx @ KRONROD_WEIGHTS)
    qg = half * (fx @ GAUSS_WEIGHTS)
    err = np.maximum(np.abs(qk - qg), 50.0 * _EPS * half * (np.abs(fx) @ KRONROD_WEIGHTS))
    return qk, err


def integrate_1d(f, lo, hi, spec=DEFAULT_SPEC):
    """Globally adaptive Gauss-Kronrod integration of a vectorized ``f`` on [lo, hi]."""
    lo = np.array([float(lo)])
    hi = np.array([float(hi)])
    depth = np.zeros(1, dtype=int)
    q, err = _gk_1d(f, lo, hi)
    evals = 15
    while True:
        total = math.fsum(q)
        total_err = math.fsum(err)
        if total_err <= _target(total, spec):
            return OracleResult(total, total_err, evals)
        threshold = _target(total, spec) / len(q)
        pick = (err > threshold) & (depth < spec.max_subdivisions)
        if not pick.any() or len(q) + pick.sum() > _MAX_CELLS:
            res = OracleResult(total, total_err, evals)
            raise QuadratureError(
                f"1-D quadrature stalled: error {total_err:.3e} above target {_target(total, spec):.3e}",
                res,
            )
        mid = 0.5 * (lo[pick] + hi[pick])
        new_lo = np.concatenate([lo[pick], mid])
        new_hi = np.concatenate([mid, hi[pick]])
        new_depth = np.concatenate([depth[pick], depth[pick]]) + 1
        nq, nerr = _gk_1d(f, new_lo, new_hi)
        evals += 15 * len(nq)
        keep = ~pick
        lo = np.concatenate([lo[keep], new_lo])
        hi = np.concatenate([hi[keep], new_hi])
        depth = np.concatenate([depth[keep], new_depth])
        q = np.concatenate([q[keep], nq])
        err = np.concatenate([err[keep], nerr])


# -- 2-D ------------------------------------------------------------------------


def _gk_2d(f, x0, x1, y0, y1):
    """Evaluate the tensor rule on a batch of rectangles.

    Returns the Kronrod estimate and the error contributions of each direction.
    """
    hx = 0.5 * (x1 - x0)
    hy = 0.5 * (y1 - y0)
    xs = (0.5 * (x0 + x1))[:, None] + hx[:, None] * KRONROD_NODES[None, :]
    ys = (0.5 * (y0 + y1))[:, None] + hy[:, None] * KRONROD_NODES[None, :]
    X = np.broadcast_to(xs[:, :, None], (len(x0), 15, 15))
    Y = np.broadcast_to(ys[:, None, :], (len(x0), 15, 15))
    F = np.asarray(f(X, Y), dtype=float)
    area = hx * hy
    # contract y first, then x
    fk = F @ KRONROD_WEIGHTS
    fg = F @ GAUSS_WEIGHTS
    qkk = area * (fk @ KRONROD_WEIGHTS)
    qgk = area * (fk @ GAUSS_WEIGHTS)  # Gauss in x
    qkg = area * (fg @ KRONROD_WEIGHTS)  # Gauss in y
    floor = 50.0 * _EPS * area * ((np.abs(F) @ KRONROD_WEIGHTS) @ KRONROD_WEIGHTS)
    ex = np.abs(qkk - qgk)
    ey = np.abs(qkk - qkg)
    return qkk, ex, ey, floor


def integrate_2d(f, region, spec=DEFAULT_SPEC):
    """Integrate a vectorized ``f(x, y)`` over the rectangle ``region = ((x0, x1), (y0, y1))``.

    Raises :class:`QuadratureError` (carrying the best estimate) if the
    tolerance cannot be met within the subdivision limits.  The result is a
    deterministic function of the inputs.
    """
    (xa, xb), (ya, yb) = region
    x0, x1 = np.array([float(xa)]), np.array([float(xb)])
    y0, y1 = np.array([float(ya)]), np.array([float(yb)])
    dx = np.zeros(1, dtype=int)
    dy = np.zeros(1, dtype=int)
    q, ex, ey, floor = _gk_2d(f, x0, x1, y0, y1)
    err = np.maximum(ex + ey, floor)
    evals = 225
    while True:
        total = math.fsum(q)
        total_err = math.fsum(err)
        target = _target(total, spec)
        if total_err <= target:
            return OracleResult(total, total_err, evals)
        pick = err > target / len(q)
        split_x = ex >= ey
        # a cell at its depth limit in the preferred direction tries the other one
        split_x = np.where(dx >= spec.max_subdivisions, False, split_x)
        split_x = np.where(dy >= spec.max_subdivisions, True, split_x)
        pick &= np.where(split_x, dx < spec.max_subdivisions, dy < spec.max_subdivisions)
        n_pick = int(pick.sum())
        if n_pick == 0 or len(q) + n_pick > _MAX_CELLS:
            res = OracleResult(total, total_err, evals)
            raise QuadratureError(
                f"2-D quadrature stalled: error {total_err:.3e} above target {target:.3e}", res
            )
        sx = split_x[pick]
        px0, px1, py0, py1 = x0[pick], x1[pick], y0[pick], y1[pick]
        pdx, pdy = dx[pick], dy[pick]
        xm = np.where(sx, 0.5 * (px0 + px1), px1)
        ym = np.where(sx, py1, 0.5 * (py0 + py1))
        # child A keeps the lower corner; child B is the other half
        ax0, ax1, ay0, ay1 = px0, xm, py0, ym
        bx0 = np.where(sx, xm, px0)
        by0 = np.where(sx, py0, ym)
        bx1, by1 = px1, py1
        nx0 = np.concatenate([ax0, bx0])
        nx1 = np.concatenate([ax1, bx1])
        ny0 = np.concatenate([ay0, by0])
        ny1 = np.concatenate([ay1, by1])
        ndx = np.concatenate([pdx + sx, pdx + sx])
        ndy = np.concatenate([pdy + ~sx, pdy + ~sx])
        nq, nex, ney, nfloor = _gk_2d(f, nx0, nx1, ny0, ny1)
        evals += 225 * len(nq)
        keep = ~pick
        x0 = np.concatenate([x0[keep], nx0])
        x1 = np.concatenate([x1[keep], nx1])
        y0 = np.concatenate([y0[keep], ny0])
        y1 = np.concatenate([y1[keep], ny1])
        dx = np.concatenate([dx[keep], ndx])
        dy = np.concatenate([dy[keep], ndy])
        q = np.concatenate([q[keep], nq])
        ex = np.concatenate([ex[keep], nex])
        ey = np.concatenate([ey[keep], ney])
        err = np.concatenate([err[keep], np.maximum(nex + ney, nfloor)])


# -- area oracles -----------------------------------------------------------------

HALF_PI = 0.5 * math.pi


def _sphere_integral(integrand, spec, octant):
    """Integrate over the full (theta, phi) domain, optionally via one octant times 8."""
    if octant:
        return integrate_2d(integrand, ((0.0, HALF_PI), (0.0, HALF_PI)), spec).scaled(8.0)
    return integrate_2d(integrand, ((0.0, math.pi), (0.0, 2.0 * math.pi)), spec)


def area_by_eq_s(ell, spec=DEFAULT_SPEC, octant=True):
    """Area as the double integral of sqrt(b²c²cos²θ + c²a²sin²θcos²φ + a²b²sin²θsin²φ) sinθ
    over eccentric anomalies."""

    def integrand(theta, phi):
        ct2, st2, cp2, sp2 = _sq_trig(theta, phi)
        return np.sqrt(_quad_form(ell, ct2, st2, cp2, sp2)) * np.sin(theta)

    return _sphere_integral(integrand, spec, octant)


def area_by_eq_ss(ell, spec=DEFAULT_SPEC, octant=True):
    """Area as a double integral over central angles (needs a, b, c > 0)."""
    ell.require_positive("area_by_eq_ss")
    abc2 = (ell.a * ell.b * ell.c) ** 2

    def integrand(Theta, Phi):
        ct2, st2, cp2, sp2 = _sq_trig(Theta, Phi)
        q2 = _quad_form(ell, ct2, st2, cp2, sp2)
        q4 = _quad_form4(ell, ct2, st2, cp2, sp2)
        return abc2 * np.sqrt(q4) / (q2 * q2) * np.sin(Theta)

    return _sphere_integral(integrand, spec, octant)


def area_by_eq_seta(ell, spec=DEFAULT_SPEC):
    """Area from the single integral over eta in [a²/b², a²/c²].

    The endpoint singularities are removed with
    eta = a²/c² - (a²/c² - a²/b²) sin²(tau), which turns the integral into

        S = 2 pi b c + 4 b c * int_0^{pi/2} eta atan(sqrt(eta-1)) / sqrt(eta-1) dtau.
    """
    a, b, c = ell.axes
    if not (a > b > c > 0.0):
        raise DegenerateShapeError(f"area_by_eq_seta needs a > b > c > 0, got {ell.axes}")
    top = (a / c) ** 2
    span = top - (a / b) ** 2

    def integrand(tau):
        eta = top - span * np.sin(tau) ** 2
        s = np.sqrt(eta - 1.0)
        return eta * np.arctan(s) / s

    inner = integrate_1d(integrand, 0.0, HALF_PI, spec)
    return inner.scaled(4.0 * b * c, 2.0 * math.pi * b * c)


def mean_inverse_radius_identity(ell, spec=DEFAULT_SPEC, octant=True):
    """Area from the mean inverse radius over solid angle, a b c ∬ sinΘ / R(Θ, Φ).

    Divided by the volume this is three times the solid-angle mean of 1/R.
    """
    ell.require_positive("mean_inverse_radius_identity")
    abc = ell.a * ell.b * ell.c

    def integrand(Theta, Phi):
        return abc * np.sin(Theta) / radius_central(ell, Theta, Phi)

    return _sphere_integral(integrand, spec, octant)


def r3_over_h_identity(ell, spec=DEFAULT_SPEC, octant=True):
    """Area as the solid-angle integral of R³/H."""
    ell.require_positive("r3_over_h_identity")

    def integrand(Theta, Phi):
        R = radius_central(ell, Theta, Phi)
        H = support_height_central(ell, Theta, Phi)
        return R**3 / H * np.sin(Theta)

    return _sphere_integral(integrand, spec, octant)


def ellipse_ratio_identity(a, b, spec=DEFAULT_SPEC):
    """Ellipse perimeter from its area and mean inverse central radius: a b ∫ dΦ / R(Φ)."""
    a, b = float(a), float(b)
    if not (a >= b > 0.0):
        raise DomainError(f"ellipse_ratio_identity needs a >= b > 0, got ({a}, {b})")

    def integrand(Phi):
        R = a * b / np.sqrt((b * np.cos(Phi)) ** 2 + (a * np.sin(Phi)) ** 2)
        return a * b / R

    return integrate_1d(integrand, 0.0, HALF_PI, spec).scaled(4.0)

