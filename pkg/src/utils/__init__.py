from .geometry_utils import (
    area, chord_length, contains_point, convex_hull, convex_intersection, overlaps,
    perimeter, petal_decomposition, separating_line, union_perimeter,
)
from .io_utils import read_partition, read_points, write_points, write_result
from .random_utils import derive_seed, make_rng, uniform_shift

__all__ = [
    "area", "chord_length", "contains_point", "convex_hull", "convex_intersection", "overlaps",
    "perimeter", "petal_decomposition", "separating_line", "union_perimeter",
    "read_partition", "read_points", "write_points", "write_result",
    "derive_seed", "make_rng", "uniform_shift",
]
