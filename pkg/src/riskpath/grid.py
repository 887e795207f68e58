"""Occupancy grid, map ingestion, and geometric queries.

The grid is a rectangular field of unit cells; ``True`` cells are obstacles
occupying the full closed unit square.  Map edges behave like obstacles: a
virtual one-cell obstacle ring surrounds the map for distance queries, and
rays or sight lines leaving the rectangle are blocked.  Cell centers sit at
half-integer coordinates (x + 0.5, y + 0.5); y grows downward.
"""

from __future__ import annotations

from typing import NamedTuple, Optional, TextIO, Union

import numpy as np
from scipy import ndimage

from ._kernels import impl
from .errors import GridQueryError, MapFormatError

MAP_CHARS = {".", "#", "S", "G", "A"}


class Cell(NamedTuple):
    x: int
    y: int


class OccupancyGrid:
    """Immutable obstacle field with optional start/goal/anchor metadata."""

    def __init__(
        self,
        cells: np.ndarray,
        start: Optional[Cell] = None,
        goal: Optional[Cell] = None,
        anchor: Optional[Cell] = None,
    ):
        occ = np.ascontiguousarray(np.asarray(cells, dtype=np.uint8))
        if occ.ndim != 2 or occ.shape[0] < 1 or occ.shape[1] < 1:
            raise MapFormatError("grid must be a 2-D field with width, height >= 1")
        occ.flags.writeable = False
        self._occ = occ
        self.height, self.width = occ.shape
        for name, cell in (("start", start), ("goal", goal), ("anchor", anchor)):
            if cell is not None and not self.is_free(cell):
                raise MapFormatError(f"{name} cell {cell} is not a free cell")
        self.start = start
        self.goal = goal
        self.anchor = anchor if anchor is not None else start
        self._dist_field: Optional[np.ndarray] = None
        self._corner_mask: Optional[np.ndarray] = None

    # -- basic queries ------------------------------------------------------

    @property
    def occ(self) -> np.ndarray:
        """Obstacle field as a read-only (height, width) uint8 array."""
        return self._occ

    def in_bounds(self, cell: Cell) -> bool:
        return 0 <= cell[0] < self.width and 0 <= cell[1] < self.height

    def is_obstacle(self, cell: Cell) -> bool:
        """Out-of-bounds coordinates count as obstacle."""
        if not self.in_bounds(cell):
            return True
        return bool(self._occ[cell[1], cell[0]])

    def is_free(self, cell: Cell) -> bool:
        return not self.is_obstacle(cell)

    def obstacle_count(self) -> int:
        return int(self._occ.sum())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, OccupancyGrid)
            and np.array_equal(self._occ, other._occ)
            and (self.start, self.goal, self.anchor)
            == (other.start, other.goal, other.anchor)
        )

    def __repr__(self) -> str:
        return f"OccupancyGrid({self.width}x{self.height}, obstacles={self.obstacle_count()})"

    # -- derived fields (computed once; the grid is immutable) --------------

    def distance_field(self) -> np.ndarray:
        """Euclidean center-to-center distance to the nearest obstacle cell,
        including the virtual one-cell border ring."""
        if self._dist_field is None:
            padded = np.pad(self._occ, 1, constant_values=1)
            d = ndimage.distance_transform_edt(padded == 0)
            self._dist_field = d[1:-1, 1:-1]
        return self._dist_field

    def corner_mask(self) -> np.ndarray:
        """(height+1, width+1) quadrant-occupancy bits per lattice corner.

        Bit 1: NW cell of the corner, 2: NE, 4: SW, 8: SE; out-of-map
        quadrants count as occupied.
        """
        if self._corner_mask is None:
            padded = np.pad(self._occ, 1, constant_values=1)
            nw = padded[:-1, :-1]
            ne = padded[:-1, 1:]
            sw = padded[1:, :-1]
            se = padded[1:, 1:]
            self._corner_mask = np.ascontiguousarray(
                (nw | (ne << 1) | (sw << 2) | (se << 3)).astype(np.uint8)
            )
        return self._corner_mask


# ---------------------------------------------------------------------------
# map ingestion
# ---------------------------------------------------------------------------


def load_map(source: Union[str, TextIO]) -> OccupancyGrid:
    """Parse the ASCII map format.

    Rows of equal length over {'.', '#', 'S', 'G', 'A'}; '#' is obstacle,
    'S'/'G'/'A' are free cells recorded as start/goal/anchor.  The anchor
    defaults to the start cell when absent.  LF or CRLF line endings, the
    trailing newline is optional.
    """
    text = source if isinstance(source, str) else source.read()
    lines = text.replace("\r\n", "\n").split("\n")
    while lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise MapFormatError("empty map")
    width = len(lines[0])
    markers: dict[str, Cell] = {}
    rows = []
    for y, line in enumerate(lines):
        if len(line) != width:
            raise MapFormatError(
                f"ragged row {y}: length {len(line)} != {width} of row 0"
            )
        row = np.zeros(width, dtype=np.uint8)
        for x, ch in enumerate(line):
            if ch not in MAP_CHARS:
                raise MapFormatError(f"invalid character {ch!r} at ({x}, {y})")
            if ch == "#":
                row[x] = 1
            elif ch in "SGA":
                if ch in markers:
                    raise MapFormatError(f"duplicate {ch!r} marker at ({x}, {y})")
                markers[ch] = Cell(x, y)
        rows.append(row)
    if width == 0:
        raise MapFormatError("empty map")
    return OccupancyGrid(
        np.vstack(rows),
        start=markers.get("S"),
        goal=markers.get("G"),
        anchor=markers.get("A"),
    )


def dump_map(grid: OccupancyGrid) -> str:
    """Inverse of load_map (markers re-emitted from metadata)."""
    chars = np.full((grid.height, grid.width), ".", dtype="U1")
    chars[grid.occ.astype(bool)] = "#"
    if grid.anchor is not None and grid.anchor != grid.start:
        chars[grid.anchor.y, grid.anchor.x] = "A"
    if grid.start is not None:
        chars[grid.start.y, grid.start.x] = "S"
    if grid.goal is not None:
        chars[grid.goal.y, grid.goal.x] = "G"
    return "\n".join("".join(row) for row in chars) + "\n"


# ---------------------------------------------------------------------------
# geometric queries
# ---------------------------------------------------------------------------


def _require_free(grid: OccupancyGrid, cell: Cell) -> None:
    if not grid.in_bounds(cell):
        raise GridQueryError(f"cell {tuple(cell)} out of bounds")
    if grid.is_obstacle(cell):
        raise GridQueryError(f"cell {tuple(cell)} is an obstacle")


def distance_to_closest_obstacle(grid: OccupancyGrid, cell: Cell) -> float:
    """Center-to-center Euclidean distance to the nearest obstacle, the
    virtual border ring included."""
    _require_free(grid, cell)
    return float(grid.distance_field()[cell[1], cell[0]])


def visibility_risk(
    grid: OccupancyGrid, cell: Cell, range_: float = 5.0, ray_count: int = 16
) -> float:
    """Fraction of equally spaced rays blocked within ``range_``.

    0 = fully open surroundings, 1 = every ray hits an obstacle (or the map
    border) within range.
    """
    _require_free(grid, cell)
    if range_ <= 0:
        raise GridQueryError("visibility range must be > 0")
    if ray_count < 4:
        raise GridQueryError("ray_count must be >= 4")
    return float(
        impl.visibility_fraction(grid.occ, cell[0] + 0.5, cell[1] + 0.5, range_, ray_count)
    )


def line_of_sight(grid, a, b) -> bool:
    """True iff the open segment (a, b) misses every obstacle interior.

    Touching obstacle corners or sliding along edges is permitted.  Points
    are real coordinates inside the closed map rectangle; half-integer
    inputs (cell centers, obstacle corners) are decided exactly.
    """
    ax, ay = float(a[0]), float(a[1])
    bx, by = float(b[0]), float(b[1])
    a2 = (2.0 * ax, 2.0 * ay)
    b2 = (2.0 * bx, 2.0 * by)
    if all(v == int(v) for v in (*a2, *b2)):
        return bool(
            impl.seg_free_exact(
                grid.occ, int(a2[0]), int(a2[1]), int(b2[0]), int(b2[1])
            )
        )
    return bool(impl.seg_free_float(grid.occ, ax, ay, bx, by))
