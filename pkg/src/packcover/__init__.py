"""Greedy conversion between dense periodic packings and thin periodic coverings.

A dense translative packing of a convex body can be turned into a covering
of controlled density by growing the body and filling holes, and a thin
covering into a packing by shrinking the body and deleting overlaps.  The
package implements both transformations on the flat torus together with
exact (rational) verification of every step and the resulting bounds.
"""
from ._numeric import FLOAT, RATIONAL, TAU_PT, TAU_VOL
from .bounds import (
    DensityReport,
    crossover_report,
    density_report,
    ft_cover_bound,
    minkowski_transfer_bound,
    periodic_density,
    schmidt_pack_bound,
    thm_cover_bound,
    thm_pack_bound,
)
from .convex import (
    BOUNDARY,
    EXTERIOR,
    INTERIOR,
    ConvexBody,
    GeometryError,
    Homothet,
    centroid,
    classify_point,
    contains_body,
    diff_ratio_W,
    difference_body,
    homothet,
    radon_vector,
    volume,
)
from .greedy import (
    COVER_TO_PACK,
    PACK_TO_COVER,
    GreedyTrace,
    PreconditionError,
    ProofClaimError,
    TransformResult,
    choose_alpha,
    cover_to_pack,
    cover_witness_translate,
    pack_to_cover,
    theorem_pipeline,
)
from .render import render_svg
from .torus import (
    EXACT2D,
    GRID,
    Arrangement,
    CoverageReport,
    Lattice,
    expand_points,
    find_overlap,
    find_uncovered_point,
    is_packing,
    neighbor_translates,
    refine_lattice,
    total_perimeter,
    uncovered_volume,
    wrap,
)

__version__ = "0.1.0"
