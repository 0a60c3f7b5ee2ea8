"""Anchored k-watchman routes in simple polygons."""
from .cuts import Cut, CutSequence, essential_cuts, touches_all_cuts, visibility_cuts
from .dp import (
    BucketScheme, KSolution, reevaluate_l2, shortest_single_route_l1, solve_exact_l1, solve_fptas_l1,
)
from .errors import (
    Infeasible, InvalidPolygon, NotOrthogonal, PointOutside, QuotaOutOfRange, ResourceCap,
    SegmentOutside, TooLarge, WatchmanError,
)
from .general import (
    clip_cut_to_disk, compute_r_min, solve_fptas_l2, solve_variable_k, split_and_close,
    tour_cuts_within_disk,
)
from .geometry import (
    L1, L2, Path, Point, SimplePolygon, Tour, geodesic_distance, geodesic_path, point,
    polygon_area, relative_convex_hull, segment_inside, triangulate, validate_polygon,
)
from .hanan import GridGraph, build_hanan_grid, contact_points, l1_geodesic
from .instance import Instance, dumps_instance, load_instance, parse_instance
from .oracles import OracleResult, brute_force_l1, brute_force_l2_discretized, random_orthogonal_polygon
from .quota import budgeted_route, r_min_quota, solve_quota_k, visible_area_of_disk
from .render import render_svg
from .visibility import (
    Region, point_sees_segment, route_visible_area, route_visible_region, sees_route, sees_route_many, visibility_polygon,
    visible_area, weak_visibility_polygon,
)

__all__ = [name for name in dir() if not name.startswith("_")]
