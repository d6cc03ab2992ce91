"""Cobordism classes of polygon spaces in R^3.

Exact enumeration of admissible index sets gives the signed count of
``CP^{n-3}`` summands; a small simulator checks bending flows, fixed
points and the symplectic structure numerically, and for pentagons the
moment polytope is computed in rational arithmetic.
"""

__version__ = "0.1.0"

from .errors import (
    AdmissibilityError,
    DegenerateTriangleError,
    EmptyModuliError,
    InputError,
    NoPivotError,
    PolycobError,
    UndefinedActionError,
    WallError,
)
from .lengths import (
    ChamberSignature,
    LengthVector,
    chamber_signature,
    degenerate_partition,
    format_rational,
    is_nonempty,
    is_smooth,
    normalize,
    parse_rational,
)
from .admissible import AdmissibleFamily, IndexSet, admissible_histogram, enumerate_admissible, is_admissible
from .cobordism import (
    CobordismClass,
    Pivot,
    arrange,
    cobordism_class,
    default_pivot,
    equilateral_class,
    perturbed_equilateral_check,
    type2_submanifolds,
)
from .polygon import (
    ActionAngle,
    Classification,
    FixedPointKind,
    Polygon,
    SymplecticToolkit,
    action_angle,
    bend_action,
    bend_flow,
    build_type1,
    build_type2,
    check_gc,
    classify_fixed,
    diagonals,
    from_action_angle,
    orbit,
    random_polygon,
    so3_equivalent,
    symplectic_toolkit,
    tangent_check,
)
from .polytope5 import HalfPlane, MomentPolygon, classify_shape, emit, halfplanes, intersect, moment_polygon

__all__ = [name for name in dir() if not name.startswith("_")]
