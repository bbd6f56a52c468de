# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled ray-tracing kernel: exact ray/pixel intersection lengths.

Mirrors ``_ray_trace_py.ray_trace`` operation for operation; both
backends produce identical COO triplets.
"""

from libc.math cimport cos, sin
from libc.stdlib cimport free, malloc

import numpy as np

cimport numpy as cnp

cnp.import_array()

cdef double _TINY_DIR = 1e-12
cdef double _MERGE_TOL = 1e-12
cdef double _SEG_TOL = 1e-14


def ray_trace(cnp.ndarray[cnp.float64_t, ndim=1] angles,
              cnp.ndarray[cnp.float64_t, ndim=1] taus,
              int n, double h):
    """See ``bonnet._ray_trace_py.ray_trace``; identical contract."""
    cdef int n_angles = angles.shape[0]
    cdef int n_tau = taus.shape[0]
    # A ray crosses at most 2n+2 grid lines, hence at most 2n+1 segments.
    cdef Py_ssize_t cap = <Py_ssize_t> n_angles * n_tau * (2 * n + 2)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] rows = np.empty(cap, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] cols = np.empty(cap, dtype=np.int64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] vals = np.empty(cap, dtype=np.float64)

    cdef double* tx = <double*> malloc((n + 1) * sizeof(double))
    cdef double* ty = <double*> malloc((n + 1) * sizeof(double))
    if tx == NULL or ty == NULL:
        if tx != NULL:
            free(tx)
        if ty != NULL:
            free(ty)
        raise MemoryError()

    cdef double half = 0.5 * n * h
    cdef double ox = 0.5 - half
    cdef double oy = 0.5 - half
    cdef double hi = n * h

    cdef Py_ssize_t out = 0
    cdef int k, t, j, i, jj, ix, iy, nx, ny
    cdef long long row
    cdef double ca, sa, dx, dy, px, py, t_enter, t_exit, ta, tb, tmp
    cdef double cx, cy, take, prev, w, mid

    with nogil:
        for k in range(n_angles):
            ca = cos(angles[k])
            sa = sin(angles[k])
            dx = -sa
            dy = ca
            for t in range(n_tau):
                row = <long long> k * n_tau + t
                px = 0.5 + taus[t] * ca
                py = 0.5 + taus[t] * sa

                t_enter = -1e300
                t_exit = 1e300
                if dx > _TINY_DIR or dx < -_TINY_DIR:
                    ta = (ox - px) / dx
                    tb = (ox + hi - px) / dx
                    if ta > tb:
                        tmp = ta
                        ta = tb
                        tb = tmp
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
                        tmp = ta
                        ta = tb
                        tb = tmp
                    if ta > t_enter:
                        t_enter = ta
                    if tb < t_exit:
                        t_exit = tb
                elif py - oy <= 0.0 or py - oy >= hi:
                    continue
                if t_exit - t_enter <= _SEG_TOL:
                    continue

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

                i = 0
                jj = 0
                prev = t_enter
                while True:
                    cx = tx[i] if i < nx else 1e300
                    cy = ty[jj] if jj < ny else 1e300
                    if cx <= cy:
                        take = cx
                        i += 1
                    else:
                        take = cy
                        jj += 1
                    if take >= t_exit - _MERGE_TOL:
                        take = t_exit
                    elif take <= prev + _MERGE_TOL:
                        continue
                    w = take - prev
                    if w > _SEG_TOL:
                        mid = 0.5 * (prev + take)
                        ix = <int> ((px + mid * dx - ox) / h)
                        iy = <int> ((py + mid * dy - oy) / h)
                        if ix < 0:
                            ix = 0
                        elif ix > n - 1:
                            ix = n - 1
                        if iy < 0:
                            iy = 0
                        elif iy > n - 1:
                            iy = n - 1
                        rows[out] = row
                        cols[out] = <long long> iy * n + ix
                        vals[out] = w
                        out += 1
                    prev = take
                    if take >= t_exit:
                        break

    free(tx)
    free(ty)
    return rows[:out].copy(), cols[:out].copy(), vals[:out].copy()
