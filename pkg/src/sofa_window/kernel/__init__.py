"""Polytope and polygon primitives shared by every decision procedure."""

from .cover import CoverPlacement, contract, cover_slack, rect_corners, shadow_cover
from .disc import Disc, enclosing_disc, support_points
from .placement import RigidPlacement, axis_angle_matrix, nearest_rotation, rot_z, rotation_taking, unit
from .polygon import (
    Polygon2,
    bbox_dims,
    convex_hull_2d,
    directional_extent,
    feasible_angle_intervals,
    fits_in_rect,
    min_rect_slack,
    min_xslab,
    rect_slack,
    width2,
    xslab_ratio,
)
from .polytope import (
    Polytope,
    build_polytope,
    cross_section_z0,
    extent,
    extents,
    project_shadow,
    shadow_frame,
    width3,
    width_candidates,
)

__all__ = [
    "CoverPlacement", "Disc", "Polygon2", "Polytope", "RigidPlacement",
    "axis_angle_matrix", "bbox_dims", "build_polytope", "contract", "convex_hull_2d",
    "cover_slack", "cross_section_z0", "directional_extent", "enclosing_disc", "extent",
    "extents", "feasible_angle_intervals", "fits_in_rect", "min_rect_slack", "nearest_rotation", "min_xslab",
    "project_shadow", "rect_corners", "rect_slack", "rot_z", "rotation_taking",
    "shadow_cover", "shadow_frame", "support_points", "unit", "width2", "width3",
    "width_candidates", "xslab_ratio",
]
