"""Legendre elliptic integrals of the first and second kind.

All functions use the parameter convention ``m = k**2``.  Only the real first
quadrant is supported: ``0 <= phi <= pi/2`` and ``0 <= m <= 1``.

The incomplete integrals are assembled from Carlson's symmetric forms R_F and
R_D, evaluated by the duplication theorem (B. C. Carlson, Numer. Algorithms
10, 1995).
"""

import math

from .errors import ConvergenceError, DivergenceError, DomainError

__all__ = [
    "carlson_rf",
    "carlson_rd",
    "ellint_f",
    "ellint_e",
    "ellint_k",
    "ellint_l",
]

HALF_PI = 0.5 * math.pi
DEFAULT_RTOL = 1e-15
MAX_ITER = 100


def _check_finite_nonneg(**kwargs):
    for name, v in kwargs.items():
        if not math.isfinite(v) or v < 0.0:
            raise DomainError(f"{name} must be finite and non-negative, got {v!r}")


def carlson_rf(x, y, z, rtol=DEFAULT_RTOL):
    """Carlson's symmetric integral of the first kind.

    R_F(x, y, z) = 1/2 * int_0^inf dt / sqrt((t+x)(t+y)(t+z))
    """
    x, y, z = float(x), float(y), float(z)
    _check_finite_nonneg(x=x, y=y, z=z)
    if (x == 0.0) + (y == 0.0) + (z == 0.0) > 1:
        raise DomainError("carlson_rf: at most one argument may be zero")

    a0 = (x + y + z) / 3.0
    dx0, dy0 = a0 - x, a0 - y
    q = (3.0 * rtol) ** (-1.0 / 6.0) * max(abs(dx0), abs(dy0), abs(a0 - z))
    an = a0
    scale = 1.0  # 4**-n
    for _ in range(MAX_ITER):
        if scale * q < abs(an):
            break
        sx, sy, sz = math.sqrt(x), math.sqrt(y), math.sqrt(z)
        lam = sx * sy + sx * sz + sy * sz
        x = 0.25 * (x + lam)
        y = 0.25 * (y + lam)
        z = 0.25 * (z + lam)
        an = 0.25 * (an + lam)
        scale *= 0.25
    else:
        raise ConvergenceError("carlson_rf: duplication did not converge")

    dx = dx0 * scale / an
    dy = dy0 * scale / an
    dz = -(dx + dy)
    e2 = dx * dy - dz * dz
    e3 = dx * dy * dz
    return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / math.sqrt(an)


def carlson_rd(x, y, z, rtol=DEFAULT_RTOL):
    """Carlson's degenerate integral of the second kind.

    R_D(x, y, z) = 3/2 * int_0^inf dt / ((t+z) sqrt((t+x)(t+y)(t+z)))
    """
    x, y, z = float(x), float(y), float(z)
    _check_finite_nonneg(x=x, y=y, z=z)
    if z == 0.0:
        raise DomainError("carlson_rd: z must be positive")
    if x == 0.0 and y == 0.0:
        raise DomainError("carlson_rd: x and y cannot both be zero")

    a0 = (x + y + 3.0 * z) / 5.0
    dx0, dy0 = a0 - x, a0 - y
    q = (0.25 * rtol) ** (-1.0 / 6.0) * max(abs(dx0), abs(dy0), abs(a0 - z))
    an = a0
    scale = 1.0
    tail = 0.0
    for _ in range(MAX_ITER):
        if scale * q < abs(an):
            break
        sx, sy, sz = math.sqrt(x), math.sqrt(y), math.sqrt(z)
        lam = sx * sy + sx * sz + sy * sz
        tail += scale / (sz * (z + lam))
        x = 0.25 * (x + lam)
        y = 0.25 * (y + lam)
        z = 0.25 * (z + lam)
        an = 0.25 * (an + lam)
        scale *= 0.25
    else:
        raise ConvergenceError("carlson_rd: duplication did not converge")

    dx = dx0 * scale / an
    dy = dy0 * scale / an
    dz = -(dx + dy) / 3.0
    xy = dx * dy
    z2 = dz * dz
    e2 = xy - 6.0 * z2
    e3 = (3.0 * xy - 8.0 * z2) * dz
    e4 = 3.0 * (xy - z2) * z2
    e5 = xy * z2 * dz
    series = (
        1.0
        - 3.0 * e2 / 14.0
        + e3 / 6.0
        + 9.0 * e2 * e2 / 88.0
        - 3.0 * e4 / 22.0
        - 9.0 * e2 * e3 / 52.0
        + 3.0 * e5 / 26.0
    )
    return scale * series / (an * math.sqrt(an)) + 3.0 * tail


def _check_args(phi, m):
    phi, m = float(phi), float(m)
    if not (0.0 <= phi <= HALF_PI):
        raise DomainError(f"amplitude must lie in [0, pi/2], got {phi!r}")
    if not (0.0 <= m <= 1.0):
        raise DomainError(f"parameter m must lie in [0, 1], got {m!r}")
    return phi, m


def _trig(phi):
    # cos(pi/2) is 6e-17 in floating point; snap so the complete case is exact.
    if phi == HALF_PI:
        return 1.0, 0.0
    return math.sin(phi), math.cos(phi)


def ellint_f(phi, m):
    """Incomplete integral of the first kind, F(phi, m)."""
    phi, m = _check_args(phi, m)
    if phi == 0.0:
        return 0.0
    s, c = _trig(phi)
    if m == 0.0:
        return phi
    if m == 1.0:
        if c == 0.0:
            raise DivergenceError("F(pi/2, 1) = K(1) is infinite")
        return math.atanh(s)
    # 1 - m sin^2 written without the subtraction so it stays accurate near m = 1
    delta2 = c * c + (1.0 - m) * s * s
    return s * carlson_rf(c * c, delta2, 1.0)


def ellint_e(phi, m):
    """Incomplete integral of the second kind, E(phi, m)."""
    phi, m = _check_args(phi, m)
    if phi == 0.0:
        return 0.0
    s, c = _trig(phi)
    if m == 1.0:
        return s
    if m == 0.0:
        return phi
    c2 = c * c
    delta2 = c2 + (1.0 - m) * s * s
    return s * carlson_rf(c2, delta2, 1.0) - m * s**3 * carlson_rd(c2, delta2, 1.0) / 3.0


def _ellint_fe_sc(s, c, m, m1):
    """F and E from the amplitude's sine ``s`` and cosine ``c`` and from m, 1 - m.

    For callers that know sin, cos and 1 - m more accurately than rounding the
    amplitude and the parameter would give (amplitudes near pi/2, m near 1).
    """
    if s == 0.0:
        return 0.0, 0.0
    if m == 0.0:
        phi = math.atan2(s, c)
        return phi, phi
    if m1 == 0.0:
        if c == 0.0:
            raise DivergenceError("F(pi/2, 1) = K(1) is infinite")
        return math.log((1.0 + s) / c), s
    c2 = c * c
    delta2 = c2 + m1 * s * s
    rf = carlson_rf(c2, delta2, 1.0)
    return s * rf, s * rf - m * s**3 * carlson_rd(c2, delta2, 1.0) / 3.0


def ellint_k(m):
    """Complete integral of the first kind, K(m) = F(pi/2, m)."""
    return ellint_f(HALF_PI, m)


def ellint_l(m):
    """Complete integral of the second kind, written L(m) to keep E for the incomplete one."""
    return ellint_e(HALF_PI, m)
