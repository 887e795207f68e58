"""riskpath: motion-risk quantification and minimum-risk planning on 2-D
occupancy grids, with a taut-tether path-dependent risk model."""

__version__ = "0.1.0"

from .grid import Cell, OccupancyGrid, distance_to_closest_obstacle, line_of_sight, load_map, visibility_risk

__all__ = [
    "Cell",
    "OccupancyGrid",
    "distance_to_closest_obstacle",
    "line_of_sight",
    "load_map",
    "visibility_risk",
    "__version__",
]
