"""Sort-invariance of labelings on non-messing-up posets."""
from .kernels import BACKEND
from .poset import (
    CylinderSpec,
    GridworkError,
    LabelingError,
    Poset,
    PosetError,
    ValidationReport,
    build_cylinder_convex,
    build_explicit,
    build_grid,
    build_grid_convex,
    validate,
)
from .sorting import check_nmu, cr, is_linear_extension, is_sorted, rc, sort_columns, sort_rows
from .analyzer import (
    CornerSet,
    classify,
    corner_set,
    direct_sort_invariant,
    extend_convex,
    find_bad_corner,
    generalized_bad,
    hierarchy_holds,
    predict_sort_invariant,
    shape_of_ones,
    threshold,
    unroll,
)
from .preimage import (
    SortedMatrix,
    brute_force_preimages,
    count_preimages,
    enumerate_sorted,
    h_product,
    h_value,
    preferred_probability,
    preimage_report,
)

__version__ = "0.1.0"
