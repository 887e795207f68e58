"""Computational kernels shared by the numba and pure-Python backends.

This module is written in nopython-compatible style and is loaded twice by
``riskpath._kernels``: once as-is (the numpy/pure fallback) and once with
every function wrapped in ``numba.njit`` (the default fast path).  Keep the
code restricted to constructs both backends accept: plain loops, math.*,
and preallocated numpy arrays.

Geometry conventions
--------------------
Exact predicates work on *doubled* integer coordinates: cell (x, y) covers
the square [2x, 2x+2] x [2y, 2y+2], cell centers are odd points, obstacle
corners even points.  Everything outside the map rectangle is obstacle.
Touching an obstacle corner or sliding along an obstacle edge does not
count as a hit; only open-interior intersections block.
"""

import math
import os

import numpy as np

if os.environ.get("_RISKPATH_JIT_INTERNAL", "0") == "1":
    from numba import njit

    _jit = njit(cache=True)
else:

    def _jit(func):
        return func


IS_JIT = os.environ.get("_RISKPATH_JIT_INTERNAL", "0") == "1"

EPS = 1e-9


# ---------------------------------------------------------------------------
# exact segment predicates (doubled integer coordinates)
# ---------------------------------------------------------------------------


@_jit
def seg_hits_cell_exact(ax, ay, bx, by, cx, cy):
    """Open segment vs the open interior of cell (cx, cy), exact integers."""
    lx = 2 * cx
    hx = lx + 2
    ly = 2 * cy
    hy = ly + 2
    mx = ax if ax > bx else bx
    if mx <= lx:
        return False
    mx = ax if ax < bx else bx
    if mx >= hx:
        return False
    my = ay if ay > by else by
    if my <= ly:
        return False
    my = ay if ay < by else by
    if my >= hy:
        return False
    dx = bx - ax
    dy = by - ay
    s1 = dx * (ly - ay) - dy * (lx - ax)
    s2 = dx * (ly - ay) - dy * (hx - ax)
    s3 = dx * (hy - ay) - dy * (lx - ax)
    s4 = dx * (hy - ay) - dy * (hx - ax)
    if s1 <= 0 and s2 <= 0 and s3 <= 0 and s4 <= 0:
        return False
    if s1 >= 0 and s2 >= 0 and s3 >= 0 and s4 >= 0:
        return False
    return True


@_jit
def seg_free_exact(occ, ax, ay, bx, by):
    """True iff the open segment misses every obstacle-cell interior.

    Doubled integer coordinates; endpoints must stay inside the closed map
    rectangle (the exterior counts as obstacle).
    """
    h = occ.shape[0]
    w = occ.shape[1]
    if ax == bx and ay == by:
        return True
    minx = ax if ax < bx else bx
    maxx = ax if ax > bx else bx
    miny = ay if ay < by else by
    maxy = ay if ay > by else by
    if minx < 0 or miny < 0 or maxx > 2 * w or maxy > 2 * h:
        return False
    dx = bx - ax
    dy = by - ay
    cx_lo = minx // 2 - 1
    cx_hi = maxx // 2 + 1
    if cx_lo < 0:
        cx_lo = 0
    if cx_hi > w - 1:
        cx_hi = w - 1
    for cx in range(cx_lo, cx_hi + 1):
        if dx != 0:
            t0 = (2.0 * cx - ax) / dx
            t1 = (2.0 * cx + 2.0 - ax) / dx
            if t0 > t1:
                tt = t0
                t0 = t1
                t1 = tt
            if t1 < 0.0 or t0 > 1.0:
                continue
            if t0 < 0.0:
                t0 = 0.0
            if t1 > 1.0:
                t1 = 1.0
            ya = ay + t0 * dy
            yb = ay + t1 * dy
            if ya > yb:
                tt = ya
                ya = yb
                yb = tt
        else:
            ya = float(miny)
            yb = float(maxy)
        cy_lo = int(math.floor(ya / 2.0)) - 1
        cy_hi = int(math.floor(yb / 2.0)) + 1
        if cy_lo < 0:
            cy_lo = 0
        if cy_hi > h - 1:
            cy_hi = h - 1
        for cy in range(cy_lo, cy_hi + 1):
            if occ[cy, cx] != 0 and seg_hits_cell_exact(ax, ay, bx, by, cx, cy):
                return False
    return True


# ---------------------------------------------------------------------------
# float segment / triangle predicates (cell-unit coordinates, EPS-shrunk cells)
# ---------------------------------------------------------------------------


@_jit
def seg_hits_cell_float(ax, ay, bx, by, cx, cy):
    lx = cx + EPS
    hx = cx + 1.0 - EPS
    ly = cy + EPS
    hy = cy + 1.0 - EPS
    m = ax if ax > bx else bx
    if m <= lx:
        return False
    m = ax if ax < bx else bx
    if m >= hx:
        return False
    m = ay if ay > by else by
    if m <= ly:
        return False
    m = ay if ay < by else by
    if m >= hy:
        return False
    dx = bx - ax
    dy = by - ay
    s1 = dx * (ly - ay) - dy * (lx - ax)
    s2 = dx * (ly - ay) - dy * (hx - ax)
    s3 = dx * (hy - ay) - dy * (lx - ax)
    s4 = dx * (hy - ay) - dy * (hx - ax)
    if s1 <= 0.0 and s2 <= 0.0 and s3 <= 0.0 and s4 <= 0.0:
        return False
    if s1 >= 0.0 and s2 >= 0.0 and s3 >= 0.0 and s4 >= 0.0:
        return False
    return True


@_jit
def seg_free_float(occ, ax, ay, bx, by):
    """Float-coordinate line of sight; segments leaving the map are blocked."""
    h = occ.shape[0]
    w = occ.shape[1]
    if ax < -EPS or ay < -EPS or bx < -EPS or by < -EPS:
        return False
    if ax > w + EPS or ay > h + EPS or bx > w + EPS or by > h + EPS:
        return False
    if ax == bx and ay == by:
        return True
    minx = ax if ax < bx else bx
    maxx = ax if ax > bx else bx
    miny = ay if ay < by else by
    maxy = ay if ay > by else by
    dx = bx - ax
    dy = by - ay
    cx_lo = int(math.floor(minx)) - 1
    cx_hi = int(math.floor(maxx)) + 1
    if cx_lo < 0:
        cx_lo = 0
    if cx_hi > w - 1:
        cx_hi = w - 1
    for cx in range(cx_lo, cx_hi + 1):
        if dx != 0.0:
            t0 = (cx - ax) / dx
            t1 = (cx + 1.0 - ax) / dx
            if t0 > t1:
                tt = t0
                t0 = t1
                t1 = tt
            if t1 < 0.0 or t0 > 1.0:
                continue
            if t0 < 0.0:
                t0 = 0.0
            if t1 > 1.0:
                t1 = 1.0
            ya = ay + t0 * dy
            yb = ay + t1 * dy
            if ya > yb:
                tt = ya
                ya = yb
                yb = tt
        else:
            ya = miny
            yb = maxy
        cy_lo = int(math.floor(ya)) - 1
        cy_hi = int(math.floor(yb)) + 1
        if cy_lo < 0:
            cy_lo = 0
        if cy_hi > h - 1:
            cy_hi = h - 1
        for cy in range(cy_lo, cy_hi + 1):
            if occ[cy, cx] != 0 and seg_hits_cell_float(ax, ay, bx, by, cx, cy):
                return False
    return True


@_jit
def _tri_sep_axis(px, py, qx, qy, rx, ry, lx, ly, hx, hy):
    """True if the normal of edge (p, q) separates triangle (p, q, r) from the box."""
    nx = -(qy - py)
    ny = qx - px
    if nx == 0.0 and ny == 0.0:
        return False
    tp = nx * px + ny * py
    tr = nx * rx + ny * ry
    tmin = tp if tp < tr else tr
    tmax = tp if tp > tr else tr
    b1 = nx * lx + ny * ly
    b2 = nx * hx + ny * ly
    b3 = nx * lx + ny * hy
    b4 = nx * hx + ny * hy
    bmin = b1
    if b2 < bmin:
        bmin = b2
    if b3 < bmin:
        bmin = b3
    if b4 < bmin:
        bmin = b4
    bmax = b1
    if b2 > bmax:
        bmax = b2
    if b3 > bmax:
        bmax = b3
    if b4 > bmax:
        bmax = b4
    return bmax <= tmin or bmin >= tmax


@_jit
def tri_hits_cell_float(x1, y1, x2, y2, x3, y3, cx, cy):
    """Closed (possibly degenerate) triangle vs the EPS-shrunk open cell."""
    lx = cx + EPS
    hx = cx + 1.0 - EPS
    ly = cy + EPS
    hy = cy + 1.0 - EPS
    tmin = x1
    if x2 < tmin:
        tmin = x2
    if x3 < tmin:
        tmin = x3
    if tmin >= hx:
        return False
    tmax = x1
    if x2 > tmax:
        tmax = x2
    if x3 > tmax:
        tmax = x3
    if tmax <= lx:
        return False
    tmin = y1
    if y2 < tmin:
        tmin = y2
    if y3 < tmin:
        tmin = y3
    if tmin >= hy:
        return False
    tmax = y1
    if y2 > tmax:
        tmax = y2
    if y3 > tmax:
        tmax = y3
    if tmax <= ly:
        return False
    if _tri_sep_axis(x1, y1, x2, y2, x3, y3, lx, ly, hx, hy):
        return False
    if _tri_sep_axis(x2, y2, x3, y3, x1, y1, lx, ly, hx, hy):
        return False
    if _tri_sep_axis(x3, y3, x1, y1, x2, y2, lx, ly, hx, hy):
        return False
    return True


@_jit
def tri_free(occ, x1, y1, x2, y2, x3, y3):
    """True iff the closed triangle avoids every obstacle interior and the map exterior."""
    h = occ.shape[0]
    w = occ.shape[1]
    tminx = x1
    if x2 < tminx:
        tminx = x2
    if x3 < tminx:
        tminx = x3
    tmaxx = x1
    if x2 > tmaxx:
        tmaxx = x2
    if x3 > tmaxx:
        tmaxx = x3
    tminy = y1
    if y2 < tminy:
        tminy = y2
    if y3 < tminy:
        tminy = y3
    tmaxy = y1
    if y2 > tmaxy:
        tmaxy = y2
    if y3 > tmaxy:
        tmaxy = y3
    if tminx < -EPS or tminy < -EPS or tmaxx > w + EPS or tmaxy > h + EPS:
        return False
    cx_lo = int(math.floor(tminx)) - 1
    cx_hi = int(math.floor(tmaxx)) + 1
    if cx_lo < 0:
        cx_lo = 0
    if cx_hi > w - 1:
        cx_hi = w - 1
    cy_lo = int(math.floor(tminy)) - 1
    cy_hi = int(math.floor(tmaxy)) + 1
    if cy_lo < 0:
        cy_lo = 0
    if cy_hi > h - 1:
        cy_hi = h - 1
    for cy in range(cy_lo, cy_hi + 1):
        for cx in range(cx_lo, cx_hi + 1):
            if occ[cy, cx] != 0 and tri_hits_cell_float(x1, y1, x2, y2, x3, y3, cx, cy):
                return False
    return True


# ---------------------------------------------------------------------------
# visibility
# ---------------------------------------------------------------------------


@_jit
def visibility_fraction(occ, cx, cy, rng, nrays):
    """Fraction of equally spaced rays from (cx, cy) blocked within rng."""
    blocked = 0
    for k in range(nrays):
        ang = 2.0 * math.pi * k / nrays
        ex = cx + rng * math.cos(ang)
        ey = cy + rng * math.sin(ang)
        if not seg_free_float(occ, cx, cy, ex, ey):
            blocked += 1
    return blocked / nrays


@_jit
def visibility_field(occ, rng, nrays):
    """Per-cell visibility risk; obstacle cells get 1.0."""
    h = occ.shape[0]
    w = occ.shape[1]
    out = np.empty((h, w), np.float64)
    for y in range(h):
        for x in range(w):
            if occ[y, x] != 0:
                out[y, x] = 1.0
            else:
                out[y, x] = visibility_fraction(occ, x + 0.5, y + 0.5, rng, nrays)
    return out


# ---------------------------------------------------------------------------
# taut-tether advance (event-driven sweep, exact integer arithmetic)
# ---------------------------------------------------------------------------


@_jit
def _press(mask, rx, ry, wsg):
    """Does an occupied quadrant at the corner overlap the invaded half-plane?

    (rx, ry) is the cable direction at the corner (corner minus attachment),
    wsg the sign of the invaded side.  Quadrant bits: 1=NW cell, 2=NE, 4=SW,
    8=SE relative to the corner.
    """
    # spanning axis directions per quadrant; cross((rx,ry),(ex,ey)) = rx*ey-ry*ex
    cpx = rx * wsg  # cross with (0,+1) times wsg
    cnx = -cpx      # cross with (0,-1) times wsg
    cpy = -ry * wsg  # cross with (+1,0) times wsg
    cny = ry * wsg   # cross with (-1,0) times wsg
    if mask & 1 and (cny > 0 or cnx > 0):
        return True
    if mask & 2 and (cpy > 0 or cnx > 0):
        return True
    if mask & 4 and (cny > 0 or cpx > 0):
        return True
    if mask & 8 and (cpy > 0 or cpx > 0):
        return True
    return False


@_jit
def advance_step(occ, cmask, k, sx, sy, ss, anx, any_, hx, hy, nx, ny):
    """Advance the taut tether head one straight move (doubled-int coords).

    Processes contact releases (bend collinearity zero-crossings at the top
    contact) and catches (pressing corner crossings of the moving last
    segment) in exact chronological order.  Mutates the contact stack in
    place; returns the new depth, -1 on an invariant breach, -2 on stack
    overflow.
    """
    ux = nx - hx
    uy = ny - hy
    max_k = sx.shape[0]
    gw = occ.shape[1]
    gh = occ.shape[0]
    tn = 0  # current time tn/td, td > 0
    td = 1
    guard = 0
    while True:
        guard += 1
        if guard > 100000:
            return -1
        if k > 0:
            apx = sx[k - 1]
            apy = sy[k - 1]
        else:
            apx = anx
            apy = any_
        # ---- earliest pop event ------------------------------------------
        pop_found = False
        pop_n = 0
        pop_d = 1
        if k > 0:
            if k > 1:
                bx_ = sx[k - 2]
                by_ = sy[k - 2]
            else:
                bx_ = anx
                by_ = any_
            ex = apx - bx_
            ey = apy - by_
            sg = ss[k - 1]
            f0 = ex * (hy - apy) - ey * (hx - apx)
            f1 = ex * uy - ey * ux
            fcur = f0 * td + f1 * tn
            if fcur * sg < 0:
                return -1
            if fcur == 0 and f1 == 0:
                pop_found = True
                pop_n = tn
                pop_d = td
            elif sg * f1 < 0:
                pn = -f0
                pd = f1
                if pd < 0:
                    pn = -pn
                    pd = -pd
                if pn * td >= tn * pd and pn <= pd:
                    pop_found = True
                    pop_n = pn
                    pop_d = pd
        # ---- earliest catch event ----------------------------------------
        best = False
        bn = 0
        bd = 1
        brad = 0
        bcx = 0
        bcy = 0
        bsg = 0
        xlo = apx
        if hx < xlo:
            xlo = hx
        if nx < xlo:
            xlo = nx
        xhi = apx
        if hx > xhi:
            xhi = hx
        if nx > xhi:
            xhi = nx
        ylo = apy
        if hy < ylo:
            ylo = hy
        if ny < ylo:
            ylo = ny
        yhi = apy
        if hy > yhi:
            yhi = hy
        if ny > yhi:
            yhi = ny
        gx_lo = (xlo + 1) // 2
        gx_hi = xhi // 2
        gy_lo = (ylo + 1) // 2
        gy_hi = yhi // 2
        if gx_lo < 0:
            gx_lo = 0
        if gx_hi > gw:
            gx_hi = gw
        if gy_lo < 0:
            gy_lo = 0
        if gy_hi > gh:
            gy_hi = gh
        for gy in range(gy_lo, gy_hi + 1):
            for gx in range(gx_lo, gx_hi + 1):
                mask = cmask[gy, gx]
                if mask == 0:
                    continue
                ccx = 2 * gx
                ccy = 2 * gy
                if ccx == apx and ccy == apy:
                    continue
                rx = ccx - apx
                ry = ccy - apy
                d0 = rx * (hy - apy) - ry * (hx - apx)
                d1 = rx * uy - ry * ux
                if d1 == 0:
                    continue
                cn = -d0
                cd = d1
                if cd < 0:
                    cn = -cn
                    cd = -cd
                # catch window: tcur <= t < 1 (end-of-step touches stay tangential)
                if cn * td < tn * cd or cn >= cd:
                    continue
                # betweenness at t_c (allows head exactly on the corner, but
                # only when the head keeps moving outward so the cable will
                # actually sweep past it)
                vx = (hx - apx) * cd + cn * ux
                vy = (hy - apy) * cd + cn * uy
                dot = rx * vx + ry * vy
                r2 = rx * rx + ry * ry
                if dot < cd * r2:
                    continue
                if dot == cd * r2 and rx * ux + ry * uy <= 0:
                    continue
                wsg = 1 if d1 > 0 else -1
                if not _press(mask, rx, ry, wsg):
                    continue
                if (not best) or cn * bd < bn * cd or (cn * bd == bn * cd and r2 < brad):
                    best = True
                    bn = cn
                    bd = cd
                    brad = r2
                    bcx = ccx
                    bcy = ccy
                    bsg = wsg
        # ---- dispatch (pops win ties) -------------------------------------
        if pop_found and ((not best) or pop_n * bd <= bn * pop_d):
            tn = pop_n
            td = pop_d
            k -= 1
            continue
        if best:
            if k >= max_k:
                return -2
            sx[k] = bcx
            sy[k] = bcy
            ss[k] = bsg
            k += 1
            tn = bn
            td = bd
            continue
        break
    return k


@_jit
def stack_length(k, sx, sy, anx, any_, hx, hy):
    """Taut cable polyline length in cell units (doubled-int inputs)."""
    tot = 0.0
    px = anx
    py = any_
    for i in range(k):
        tot += math.hypot(float(sx[i] - px), float(sy[i] - py))
        px = sx[i]
        py = sy[i]
    tot += math.hypot(float(hx - px), float(hy - py))
    return tot * 0.5


# ---------------------------------------------------------------------------
# elastic-band straightening (oracle core)
# ---------------------------------------------------------------------------


@_jit
def move_free(occ, ax, ay, bx, by, cx, cy, wx, wy):
    """Vertex b of chain a-b-c may slide straight to w without the swept
    triangles touching an obstacle interior."""
    if not tri_free(occ, ax, ay, bx, by, wx, wy):
        return False
    return tri_free(occ, bx, by, cx, cy, wx, wy)


@_jit
def polyline_len(px, py, n):
    tot = 0.0
    for i in range(1, n):
        tot += math.hypot(px[i] - px[i - 1], py[i] - py[i - 1])
    return tot


@_jit
def band_shorten(occ, cmask, px, py, n):
    """Shorten a polyline to the taut cable of its homotopy class.

    Elementary homotopy-safe moves: delete a vertex whose neighbor triangle
    is free; jump a vertex onto a blocking obstacle corner; pull a vertex
    toward the chord as far as the swept region stays free.  Returns the new
    vertex count, or -1 if the pass cap is hit before the fixpoint.
    """
    gw = occ.shape[1]
    gh = occ.shape[0]
    passes = 0
    while True:
        passes += 1
        if passes > 5000:
            return -1
        changed = False
        prev_len = polyline_len(px, py, n)
        # deletion pass
        i = 1
        while i < n - 1:
            if tri_free(occ, px[i - 1], py[i - 1], px[i], py[i], px[i + 1], py[i + 1]):
                for j in range(i, n - 1):
                    px[j] = px[j + 1]
                    py[j] = py[j + 1]
                n -= 1
                changed = True
            else:
                i += 1
        # pull pass
        for i in range(1, n - 1):
            ax = px[i - 1]
            ay = py[i - 1]
            bx = px[i]
            by = py[i]
            cx = px[i + 1]
            cy = py[i + 1]
            ex = cx - ax
            ey = cy - ay
            ee = ex * ex + ey * ey
            if ee > 0.0:
                t = ((bx - ax) * ex + (by - ay) * ey) / ee
                if t < 0.0:
                    t = 0.0
                if t > 1.0:
                    t = 1.0
            else:
                t = 0.0
            wx = ax + t * ex
            wy = ay + t * ey
            mx = wx - bx
            my = wy - by
            if math.hypot(mx, my) <= 1e-12:
                continue
            if move_free(occ, ax, ay, bx, by, cx, cy, wx, wy):
                px[i] = wx
                py[i] = wy
                changed = True
                continue
            # jump onto the best blocking corner inside the slide region
            bestgain = 1e-12
            bqx = 0.0
            bqy = 0.0
            found = False
            base = math.hypot(bx - ax, by - ay) + math.hypot(cx - bx, cy - by)
            qx_lo = int(math.floor(ax if ax < bx else bx))
            if cx < qx_lo:
                qx_lo = int(math.floor(cx))
            qx_hi = int(math.ceil(ax if ax > bx else bx))
            if cx > qx_hi:
                qx_hi = int(math.ceil(cx))
            qy_lo = int(math.floor(ay if ay < by else by))
            if cy < qy_lo:
                qy_lo = int(math.floor(cy))
            qy_hi = int(math.ceil(ay if ay > by else by))
            if cy > qy_hi:
                qy_hi = int(math.ceil(cy))
            if qx_lo < 0:
                qx_lo = 0
            if qy_lo < 0:
                qy_lo = 0
            if qx_hi > gw:
                qx_hi = gw
            if qy_hi > gh:
                qy_hi = gh
            for qy in range(qy_lo, qy_hi + 1):
                for qx in range(qx_lo, qx_hi + 1):
                    if cmask[qy, qx] == 0:
                        continue
                    fqx = float(qx)
                    fqy = float(qy)
                    if fqx == bx and fqy == by:
                        continue
                    gain = base - math.hypot(fqx - ax, fqy - ay) - math.hypot(cx - fqx, cy - fqy)
                    if gain <= bestgain:
                        continue
                    if move_free(occ, ax, ay, bx, by, cx, cy, fqx, fqy):
                        bestgain = gain
                        bqx = fqx
                        bqy = fqy
                        found = True
            if found:
                px[i] = bqx
                py[i] = bqy
                changed = True
                continue
            # partial pull: binary search the largest free fraction
            lo = 0.0
            hi = 1.0
            for _ in range(50):
                mid = 0.5 * (lo + hi)
                if move_free(occ, ax, ay, bx, by, cx, cy, bx + mid * mx, by + mid * my):
                    lo = mid
                else:
                    hi = mid
            if lo > 1e-12:
                px[i] = bx + lo * mx
                py[i] = by + lo * my
                changed = True
        # snap near-corner vertices exactly onto corners
        for i in range(1, n - 1):
            qx = math.floor(px[i] + 0.5)
            qy = math.floor(py[i] + 0.5)
            if qx < 0 or qy < 0 or qx > gw or qy > gh:
                continue
            ddx = px[i] - qx
            ddy = py[i] - qy
            if ddx == 0.0 and ddy == 0.0:
                continue
            if abs(ddx) < 1e-7 and abs(ddy) < 1e-7:
                if move_free(occ, px[i - 1], py[i - 1], px[i], py[i], px[i + 1], py[i + 1], qx, qy):
                    px[i] = qx
                    py[i] = qy
                    changed = True
        if not changed:
            break
        if polyline_len(px, py, n) > prev_len - 1e-13:
            # no measurable progress and no structural change left
            structural = False
            for i in range(1, n - 1):
                if tri_free(occ, px[i - 1], py[i - 1], px[i], py[i], px[i + 1], py[i + 1]):
                    structural = True
            if not structural:
                break
    return n


@_jit
def _dir_in_wedge(u1x, u1y, u2x, u2y, sg, dx, dy):
    """Direction strictly inside the inner-elbow wedge of a wrap."""
    return (u1x * dy - u1y * dx) * sg > 0 and (u2x * dy - u2y * dx) * sg > 0


@_jit
def _dir_in_quadrant(e1x, e1y, e2x, e2y, dx, dy):
    return (e1x * dx + e1y * dy) > 0 and (e2x * dx + e2y * dy) > 0


@_jit
def wrap_supported(cmask, qgx, qgy, u1x, u1y, u2x, u2y):
    """Exact check that an obstacle quadrant supports a strict wrap.

    u1 = corner - prev, u2 = next - corner (doubled ints).  The supporting
    wedge spans directions -u1 .. u2 on the turn side; an occupied quadrant
    cone must intersect its interior.
    """
    sg = 1 if (u1x * u2y - u1y * u2x) > 0 else -1
    if u1x * u2y - u1y * u2x == 0:
        return False
    mask = cmask[qgy, qgx]
    if mask == 0:
        return False
    # wedge generators
    w1x = -u1x
    w1y = -u1y
    w2x = u2x
    w2y = u2y
    # interior direction of the wedge
    dstx = u2x - u1x
    dsty = u2y - u1y
    for q in range(4):
        if mask & (1 << q) == 0:
            continue
        if q == 0:
            e1x, e1y, e2x, e2y = -1, 0, 0, -1
        elif q == 1:
            e1x, e1y, e2x, e2y = 1, 0, 0, -1
        elif q == 2:
            e1x, e1y, e2x, e2y = -1, 0, 0, 1
        else:
            e1x, e1y, e2x, e2y = 1, 0, 0, 1
        if _dir_in_wedge(u1x, u1y, u2x, u2y, sg, e1x, e1y):
            return True
        if _dir_in_wedge(u1x, u1y, u2x, u2y, sg, e2x, e2y):
            return True
        if _dir_in_quadrant(e1x, e1y, e2x, e2y, w1x, w1y):
            return True
        if _dir_in_quadrant(e1x, e1y, e2x, e2y, w2x, w2y):
            return True
        if _dir_in_quadrant(e1x, e1y, e2x, e2y, dstx, dsty):
            return True
        # exact coincidence of wedge and quadrant
        if (e1x * w1y - e1y * w1x == 0 and e1x * w1x + e1y * w1y > 0
                and e2x * w2y - e2y * w2x == 0 and e2x * w2x + e2y * w2y > 0):
            return True
        if (e1x * w2y - e1y * w2x == 0 and e1x * w2x + e1y * w2y > 0
                and e2x * w1y - e2y * w1x == 0 and e2x * w1x + e2y * w1y > 0):
            return True
    return False
