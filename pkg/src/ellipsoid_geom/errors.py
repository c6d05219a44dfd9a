"""Exception types raised by the library."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class DivergenceError(DomainError):
    """The requested integral is infinite (e.g. K(1))."""


class DegenerateShapeError(DomainError):
    """The operation needs strictly positive semi-axes (or a strictly triaxial shape)."""


class PoleChartError(DomainError):
    """The eccentric-angle chart is singular at theta = 0 or pi.

    Use :func:`ellipsoid_geom.curvature.axis_endpoint_curvatures` there.
    """


class ConvergenceError(RuntimeError):
    """An iteration exceeded its cap; this indicates a bug, not bad input."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature did not reach the requested tolerance.

    The best available estimate is kept on the exception.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result
