"""Pure-Python ray-tracing kernel (fallback for the compiled extension).

Computes exact ray/pixel intersection lengths for a parallel-beam
geometry by marching each ray through the grid-line crossings.  The
arithmetic mirrors ``_ray_trace.pyx`` operation for operation so both
backends produce identical matrices.
"""

from __future__ import annotations

import math

import numpy as np

_TINY_DIR = 1e-12  # direction component treated as axis-parallel below this
_MERGE_TOL = 1e-12  # crossings closer than this collapse to one breakpoint
_SEG_TOL = 1e-14  # segments shorter than this carry no weight


def ray_trace(angles: np.ndarray, taus: np.ndarray, n: int, h: float):
    """Intersection lengths of every (angle, offset) ray with every pixel.

    Rays are lines {p : p . (cos a, sin a) = tau} relative to the square's
    center; the pixel block spans [ox, ox + n*h]^2 with ox = 0.5 - n*h/2.
    Returns COO triplets (rows, cols, vals) with rows = k*len(taus) + t and
    cols row-major (row index along y).
    """
    n_tau = len(taus)
    rows: list[int] = []
    cols: list[int] = []
    vals: list[float] = []

    half = 0.5 * n * h
    ox = 0.5 - half
    oy = 0.5 - half
    hi = n * h

    tx = [0.0] * (n + 1)
    ty = [0.0] * (n + 1)

    for k in range(len(angles)):
        ca = math.cos(angles[k])
        sa = math.sin(angles[k])
        dx = -sa
        dy = ca
        for t in range(n_tau):
            row = k * n_tau + t
            px = 0.5 + taus[t] * ca
            py = 0.5 + taus[t] * sa

            t_enter = -1e300
            t_exit = 1e300
            if dx > _TINY_DIR or dx < -_TINY_DIR:
                ta = (ox - px) / dx
                tb = (ox + hi - px) / dx
                if ta > tb:
                    ta, tb = tb, ta
                if ta > t_enter:
                    t_enter = ta
                if tb < t_exit:
                    t_exit = tb
            elif px - ox <= 0.0 or px - ox >= hi:
                continue
            if dy > _TINY_DIR or dy < -_TINY_DIR:
                ta = (oy - py) / dy
                tb = (oy + hi - py) / dy
                if ta > tb:
                    ta, tb = tb, ta
                if ta > t_enter:
                    t_enter = ta
                if tb < t_exit:
                    t_exit = tb
            elif py - oy <= 0.0 or py - oy >= hi:
                continue
            if t_exit - t_enter <= _SEG_TOL:
                continue

            # Grid-line crossing parameters, ascending in t.
            nx = 0
            if dx > _TINY_DIR:
                for j in range(n + 1):
                    tx[j] = (ox + j * h - px) / dx
                nx = n + 1
            elif dx < -_TINY_DIR:
                for j in range(n + 1):
                    tx[j] = (ox + (n - j) * h - px) / dx
                nx = n + 1
            ny = 0
            if dy > _TINY_DIR:
                for j in range(n + 1):
                    ty[j] = (oy + j * h - py) / dy
                ny = n + 1
            elif dy < -_TINY_DIR:
                for j in range(n + 1):
                    ty[j] = (oy + (n - j) * h - py) / dy
                ny = n + 1

            # Merge the two sorted crossing lists into consecutive segments.
            i = 0
            j = 0
            prev = t_enter
            while True:
                cx = tx[i] if i < nx else 1e300
                cy = ty[j] if j < ny else 1e300
                if cx <= cy:
                    take = cx
                    i += 1
                else:
                    take = cy
                    j += 1
                if take >= t_exit - _MERGE_TOL:
                    take = t_exit
                elif take <= prev + _MERGE_TOL:
                    continue
                w = take - prev
                if w > _SEG_TOL:
                    mid = 0.5 * (prev + take)
                    ix = int((px + mid * dx - ox) / h)
                    iy = int((py + mid * dy - oy) / h)
                    if ix < 0:
                        ix = 0
                    elif ix > n - 1:
                        ix = n - 1
                    if iy < 0:
                        iy = 0
                    elif iy > n - 1:
                        iy = n - 1
                    rows.append(row)
                    cols.append(iy * n + ix)
                    vals.append(w)
                prev = take
                if take >= t_exit:
                    break

    return (
        np.asarray(rows, dtype=np.int64),
        np.asarray(cols, dtype=np.int64),
        np.asarray(vals, dtype=np.float64),
    )
