"""Taut-tether maintenance along a walk, plus the straightening oracle.

The tether is an idealized zero-width cable from a fixed anchor to the
robot, pulled taut at all times.  Its configuration is the anchor, an
ordered stack of obstacle-corner contact points (each tagged with the turn
orientation the cable wraps with), and the head position.  Advancing the
head one 8-connectivity step updates the stack exactly: releases are bend
collinearity events, catches are pressing corner crossings, processed in
chronological order with integer arithmetic.

``straightening_oracle`` recomputes the same quantities independently: it
interpolates the swept walk finely, then shortens the polyline by
homotopy-safe elementary moves until taut.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from ._kernels import impl
from .errors import OracleError, TetherError
from .grid import Cell, OccupancyGrid


class Contact(NamedTuple):
    x: int      # corner lattice point (integer coordinates)
    y: int
    sign: int   # +1 / -1 wrap orientation (sign of the turn at the corner)


@dataclass(frozen=True)
class TetherState:
    anchor: Cell
    contacts: tuple[Contact, ...]
    head: Cell
    length: float

    @property
    def contact_count(self) -> int:
        return len(self.contacts)

    def polyline(self) -> list[tuple[float, float]]:
        """anchor center -> contact corners -> head center, cell units."""
        pts = [(self.anchor.x + 0.5, self.anchor.y + 0.5)]
        pts.extend((float(c.x), float(c.y)) for c in self.contacts)
        pts.append((self.head.x + 0.5, self.head.y + 0.5))
        return pts


def init(anchor: Cell, grid: OccupancyGrid) -> TetherState:
    """Fresh tether: reel at the anchor cell, zero length, no contacts."""
    anchor = Cell(*anchor)
    if grid.is_obstacle(anchor):
        raise TetherError(f"anchor {tuple(anchor)} is not a free cell")
    return TetherState(anchor=anchor, contacts=(), head=anchor, length=0.0)


def advance(state: TetherState, nxt: Cell, grid: OccupancyGrid) -> TetherState:
    """Move the head one 8-connectivity step; returns the new taut state."""
    nxt = Cell(*nxt)
    dx = nxt.x - state.head.x
    dy = nxt.y - state.head.y
    if max(abs(dx), abs(dy)) != 1:
        raise TetherError(
            f"advance step {state.head} -> {nxt} is not one 8-connectivity move"
        )
    if grid.is_obstacle(nxt):
        raise TetherError(f"advance target {tuple(nxt)} is an obstacle")
    cap = len(state.contacts) + (grid.width + 2) * (grid.height + 2)
    sx = np.empty(cap, np.int64)
    sy = np.empty(cap, np.int64)
    ss = np.empty(cap, np.int64)
    for i, c in enumerate(state.contacts):
        sx[i] = 2 * c.x
        sy[i] = 2 * c.y
        ss[i] = c.sign
    k = impl.advance_step(
        grid.occ,
        grid.corner_mask(),
        len(state.contacts),
        sx,
        sy,
        ss,
        2 * state.anchor.x + 1,
        2 * state.anchor.y + 1,
        2 * state.head.x + 1,
        2 * state.head.y + 1,
        2 * nxt.x + 1,
        2 * nxt.y + 1,
    )
    if k == -1:
        raise TetherError(
            f"tether invariant breach advancing {state.head} -> {nxt}"
        )
    if k == -2:
        raise TetherError("tether contact stack overflow")
    contacts = tuple(
        Contact(int(sx[i]) // 2, int(sy[i]) // 2, int(ss[i])) for i in range(k)
    )
    length = impl.stack_length(
        k, sx, sy,
        2 * state.anchor.x + 1, 2 * state.anchor.y + 1,
        2 * nxt.x + 1, 2 * nxt.y + 1,
    ) if k else math.hypot(nxt.x - state.anchor.x, nxt.y - state.anchor.y)
    return TetherState(anchor=state.anchor, contacts=contacts, head=nxt, length=float(length))


def advance_walk(anchor: Cell, walk: Sequence[Cell], grid: OccupancyGrid) -> TetherState:
    """Convenience: init at anchor (= walk[0]) and advance along the walk."""
    walk = [Cell(*c) for c in walk]
    if not walk:
        raise TetherError("empty walk")
    if walk[0] != Cell(*anchor):
        raise TetherError("walk must start at the anchor")
    state = init(anchor, grid)
    for nxt in walk[1:]:
        state = advance(state, nxt, grid)
    return state


def check_state(state: TetherState, grid: OccupancyGrid) -> None:
    """Exact validation of the TetherState invariants; raises TetherError."""
    occ = grid.occ
    cmask = grid.corner_mask()
    pts = [(2 * state.anchor.x + 1, 2 * state.anchor.y + 1)]
    pts += [(2 * c.x, 2 * c.y) for c in state.contacts]
    pts.append((2 * state.head.x + 1, 2 * state.head.y + 1))
    for (ax, ay), (bx, by) in zip(pts, pts[1:]):
        if not impl.seg_free_exact(occ, ax, ay, bx, by):
            raise TetherError(f"cable segment ({ax},{ay})-({bx},{by}) blocked")
    for i, c in enumerate(state.contacts):
        px, py = pts[i]
        qx, qy = pts[i + 1]
        rx, ry = pts[i + 2]
        u1x, u1y = qx - px, qy - py
        u2x, u2y = rx - qx, ry - qy
        turn = u1x * u2y - u1y * u2x
        if turn == 0:
            raise TetherError(f"contact {c} has a degenerate (tangential) turn")
        if (1 if turn > 0 else -1) != c.sign:
            raise TetherError(f"contact {c} orientation disagrees with the turn")
        if not impl.wrap_supported(cmask, c.x, c.y, u1x, u1y, u2x, u2y):
            raise TetherError(f"contact {c} is not supported by an obstacle")
    expect = 0.0
    for (ax, ay), (bx, by) in zip(pts, pts[1:]):
        expect += math.hypot(bx - ax, by - ay)
    expect *= 0.5
    if abs(expect - state.length) > 1e-9:
        raise TetherError(f"cached length {state.length} != polyline length {expect}")
    straight = math.hypot(state.head.x - state.anchor.x, state.head.y - state.anchor.y)
    if state.length < straight - 1e-9:
        raise TetherError("cable shorter than the anchor-head straight line")


# ---------------------------------------------------------------------------
# straightening oracle
# ---------------------------------------------------------------------------


class OracleResult(NamedTuple):
    length: float
    contacts: int
    polyline: list[tuple[float, float]]   # taut polyline, cell units


def _interpolate(walk: Sequence[Cell], step: float) -> tuple[np.ndarray, np.ndarray]:
    xs = [walk[0].x + 0.5]
    ys = [walk[0].y + 0.5]
    for a, b in zip(walk, walk[1:]):
        ax, ay = a.x + 0.5, a.y + 0.5
        bx, by = b.x + 0.5, b.y + 0.5
        seglen = math.hypot(bx - ax, by - ay)
        n = max(1, int(math.ceil(seglen / step)))
        for j in range(1, n + 1):
            t = j / n
            xs.append(ax + t * (bx - ax))
            ys.append(ay + t * (by - ay))
    return np.asarray(xs, np.float64), np.asarray(ys, np.float64)


def straightening_oracle(
    walk: Sequence[Cell], grid: OccupancyGrid, step: float = 0.05
) -> OracleResult:
    """Brute-force taut cable of the walk's homotopy class.

    Builds the swept polyline at fine interpolation (<= ``step`` cell
    units), shortens it by homotopy-safe elementary moves to a fixpoint,
    snaps the surviving interior vertices onto obstacle corners, and
    verifies the result exactly.  Independent of the incremental advance.
    """
    if step <= 0 or step > 0.05:
        raise OracleError("interpolation step must be in (0, 0.05]")
    walk = [Cell(*c) for c in walk]
    if not walk:
        raise OracleError("empty walk")
    for c in walk:
        if grid.is_obstacle(c):
            raise OracleError(f"walk visits obstacle cell {tuple(c)}")
    for a, b in zip(walk, walk[1:]):
        if max(abs(b.x - a.x), abs(b.y - a.y)) != 1:
            raise OracleError(f"walk step {a} -> {b} is not 8-connectivity")
    px, py = _interpolate(walk, step)
    # a single band vertex can get wedged between two obstacles when the taut
    # cable needs several contacts there; refine around the stall and rerun
    for refinement in range(12):
        n = impl.band_shorten(grid.occ, grid.corner_mask(), px, py, len(px))
        if n < 0:
            raise OracleError("band shortening did not converge within the pass cap")
        stuck = [
            i
            for i in range(1, n - 1)
            if abs(px[i] - math.floor(px[i] + 0.5)) > 1e-6
            or abs(py[i] - math.floor(py[i] + 0.5)) > 1e-6
        ]
        if not stuck:
            break
        nx_list: list[float] = []
        ny_list: list[float] = []
        split = set(stuck)
        for i in range(n):
            if i in split and i > 0:
                nx_list.append(0.5 * (px[i - 1] + px[i]))
                ny_list.append(0.5 * (py[i - 1] + py[i]))
            nx_list.append(float(px[i]))
            ny_list.append(float(py[i]))
            if i in split and i < n - 1:
                nx_list.append(0.5 * (px[i] + px[i + 1]))
                ny_list.append(0.5 * (py[i] + py[i + 1]))
        px = np.asarray(nx_list, np.float64)
        py = np.asarray(ny_list, np.float64)
    else:
        raise OracleError("band vertices failed to settle onto obstacle corners")
    # snap interior vertices onto exact corners and validate
    pts2 = [(2 * walk[0].x + 1, 2 * walk[0].y + 1)]
    for i in range(1, n - 1):
        qx = math.floor(px[i] + 0.5)
        qy = math.floor(py[i] + 0.5)
        pts2.append((2 * qx, 2 * qy))
    if n >= 2:
        pts2.append((2 * walk[-1].x + 1, 2 * walk[-1].y + 1))
    # cleanup: drop duplicates and exactly-tangential (zero-turn) vertices
    changed = True
    while changed:
        changed = False
        i = 1
        while i < len(pts2) - 1:
            (ax, ay), (bx, by), (cx, cy) = pts2[i - 1], pts2[i], pts2[i + 1]
            if (bx, by) == (ax, ay) or (bx, by) == (cx, cy):
                del pts2[i]
                changed = True
                continue
            turn = (bx - ax) * (cy - by) - (by - ay) * (cx - bx)
            if turn == 0 and impl.seg_free_exact(grid.occ, ax, ay, cx, cy):
                del pts2[i]
                changed = True
                continue
            i += 1
    occ = grid.occ
    cmask = grid.corner_mask()
    for (ax, ay), (bx, by) in zip(pts2, pts2[1:]):
        if not impl.seg_free_exact(occ, ax, ay, bx, by):
            raise OracleError("shortened polyline crosses an obstacle")
    for i in range(1, len(pts2) - 1):
        (ax, ay), (bx, by), (cx, cy) = pts2[i - 1], pts2[i], pts2[i + 1]
        if not impl.wrap_supported(cmask, bx // 2, by // 2, bx - ax, by - ay, cx - bx, cy - by):
            raise OracleError(f"vertex ({bx/2}, {by/2}) of the taut polyline is unsupported")
    length = 0.5 * sum(
        math.hypot(bx - ax, by - ay) for (ax, ay), (bx, by) in zip(pts2, pts2[1:])
    )
    poly = [(x / 2.0, y / 2.0) for x, y in pts2]
    return OracleResult(length=float(length), contacts=len(pts2) - 2, polyline=poly)
