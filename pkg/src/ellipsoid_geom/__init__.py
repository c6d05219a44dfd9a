"""Surface area and curvature of the general triaxial ellipsoid.

Closed forms (elliptic integrals, revolution and degenerate limits) are paired
with independent quadrature oracles so every result can be checked from first
principles.
"""

from .area import (
    ellipse_perimeter,
    general_area,
    oblate_revolution_area,
    prolate_revolution_area,
    surface_area,
    surface_area_newsurf,
)
from .core import (
    TAXONOMY_FIXTURES,
    Ellipsoid,
    ShapeClass,
    ShapeParams,
    SurfacePoint,
    classify,
    make_ellipsoid,
    radius_central,
    radius_eccentric,
    shape_params,
    support_height_central,
    support_height_eccentric,
    volume,
)
from .curvature import (
    CurvatureReport,
    FundamentalForms,
    UmbilicSet,
    axis_endpoint_curvatures,
    curvature_product,
    curvature_sum,
    directional_curvature,
    fundamental_forms,
    gauss_bonnet_total,
    principal_curvatures,
    umbilics,
)
from .elliptic import carlson_rd, carlson_rf, ellint_e, ellint_f, ellint_k, ellint_l
from .errors import (
    ConvergenceError,
    DegenerateShapeError,
    DivergenceError,
    DomainError,
    PoleChartError,
    QuadratureError,
)
from .quadrature import (
    OracleResult,
    QuadratureSpec,
    area_by_eq_s,
    area_by_eq_seta,
    area_by_eq_ss,
    ellipse_ratio_identity,
    integrate_1d,
    integrate_2d,
    mean_inverse_radius_identity,
    r3_over_h_identity,
)

__version__ = "0.1.0"
