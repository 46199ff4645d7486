"""Exact lattice and height-counting toolkit for rational points on
linear varieties, plane covers and Schwartz-Zippel style scaling experiments."""

__version__ = "0.1.0"

from .linalg import (  # noqa: E402
    DependentRowsError,
    gram_det_sq,
    hnf,
    is_lll_reduced,
    kernel_basis,
    lll_reduce,
)
from .points import ProjPoint  # noqa: E402
from .lattice import (  # noqa: E402
    IntegerLattice,
    count_points_in_box,
    from_generators,
    is_primitive,
    orthogonal_complement,
    points_in_box,
    primitive_points_up_to_sign,
    saturate,
)
from .projective import (  # noqa: E402
    LinearVariety,
    count_points_on_plane,
    count_proj_space,
    enum_proj_points,
    lattice_from_plane,
    plane_from_lattice,
)
from .cover import (  # noqa: E402
    PlaneCover,
    SubdivisionScheme,
    UnreachableDError,
    cover_plane_for_point,
    cover_planes,
    densest_lattices,
    densest_planes_count,
    enum_primitive_lattices,
    subdivide,
)
from .polynomial import MultivariatePolynomial, ParseError, parse_polynomial  # noqa: E402
from .variety import (  # noqa: E402
    VarietySpec,
    count_affine_points,
    count_proj_points,
    union_of_planes_variety,
)
from .projection import (  # noqa: E402
    SpaceCurve,
    best_projection,
    projection_degree,
    sylvester_resultant,
)
from .experiments import ExperimentReport, fit_exponent, run_experiment  # noqa: E402
