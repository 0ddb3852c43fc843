"""Minimal progressive polyline simplification over multiple error scales."""
import warnings

from numba import NumbaWarning

warnings.filterwarnings("ignore", message="The TBB threading layer", category=NumbaWarning)

from .errors import ErrorMatrix, compute_all_errors, compute_all_errors_hull, compute_all_errors_naive  # noqa: E402
from .geometry import (Curve, InputError, Measure, Point, area_error, frechet_error,  # noqa: E402
                       frechet_valid, hausdorff_error, point_segment_distance, shortcut_error)
from .graph import (ExplicitShortcutGraph, ShortcutIntervalSet, build_graph_chan_chin,  # noqa: E402
                    build_graph_from_errors, compress, intersect_interval_sets, stats, to_explicit)
from .hull import AnnotatedHull  # noqa: E402
from .paths import (AnnotatedPathTree, NoPathError, PathResult, bfs_min_links,  # noqa: E402
                    dijkstra_min_cost, range_query_shortest_path)
from .progressive import (CostTable, ProgressiveSimplification, ScaleSequence,  # noqa: E402
                          brute_force_min_progressive, douglas_peucker, dp_progressive,
                          greedy_bottom_up, greedy_bottom_up_cao, greedy_top_down,
                          min_progressive, min_progressive_continuous, min_progressive_weighted,
                          sample_scales)
from .synth import synth_curve  # noqa: E402

__version__ = "0.1.0"
