# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled implementations of the hot kernels (see `_fallback` for the
reference semantics; the two modules must stay behaviourally identical)."""

import numpy as np

from libc.math cimport exp, log, sqrt


def busemann_batch(J, coords, v, y):
    """Evaluate the Busemann function at a batch of chart points."""
    cdef const double[:, :, ::1] Jm = np.ascontiguousarray(J, dtype=np.float64)
    cdef const double[:, ::1] pts = np.ascontiguousarray(coords, dtype=np.float64)
    cdef const double[::1] vv = np.ascontiguousarray(v, dtype=np.float64)
    cdef const double[::1] yv = np.ascontiguousarray(y, dtype=np.float64)
    cdef Py_ssize_t m = Jm.shape[0]
    cdef Py_ssize_t k = Jm.shape[1]
    cdef Py_ssize_t n_pts = pts.shape[0]
    if pts.shape[1] != k + m + 1:
        raise ValueError("coordinate width does not match algebra dimensions")
    out_arr = np.empty(n_pts, dtype=np.float64)
    cdef double[::1] out = out_arr

    cdef double vnorm2 = 0.0, ynorm2 = 0.0
    cdef Py_ssize_t i, b, c, r, n
    for i in range(k):
        vnorm2 += vv[i] * vv[i]
    for r in range(m):
        ynorm2 += yv[r] * yv[r]
    cdef double norm_const = log((1.0 + 0.25 * vnorm2) ** 2 + ynorm2)

    # [V, v]_r = <J_r V, v> = V . (J_r^T v); hoist J_r^T v out of the batch
    jv_arr = np.empty((m, k), dtype=np.float64)
    cdef double[:, ::1] jv = jv_arr
    cdef double acc
    for r in range(m):
        for b in range(k):
            acc = 0.0
            for c in range(k):
                acc += Jm[r, c, b] * vv[c]
            jv[r, b] = acc

    cdef double s, a, q, f, F, cal, br, cy
    for n in range(n_pts):
        s = pts[n, k + m]
        a = exp(s)
        q = 0.0
        for i in range(k):
            cal = vv[i] - pts[n, i]
            q += cal * cal
        f = a + 0.25 * q
        F = f * f
        for r in range(m):
            br = 0.0
            for b in range(k):
                br += jv[r, b] * pts[n, b]
            cy = yv[r] - pts[n, k + r] - 0.5 * br
            F += cy * cy
        out[n] = log(F) - s - norm_const
    return out_arr


def jacobi_eigh(matrix, double tol=1e-12, int max_sweeps=100):
    """Symmetric eigendecomposition by cyclic Jacobi rotations."""
    a_arr = np.array(matrix, dtype=np.float64, copy=True, order="C")
    cdef Py_ssize_t n = a_arr.shape[0]
    vecs_arr = np.eye(n)
    if n < 2:
        w_small = np.diagonal(a_arr).copy()
        return w_small, vecs_arr
    cdef double[:, ::1] a = a_arr
    cdef double[:, ::1] vecs = vecs_arr
    cdef Py_ssize_t p, q, j, sweep
    cdef double off, apq, tau, t, c, sn, xp, xq
    cdef bint converged = False
    for sweep in range(max_sweeps):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += 2.0 * a[p, q] * a[p, q]
        if sqrt(off) <= tol:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                sn = t * c
                for j in range(n):
                    xp = a[p, j]
                    xq = a[q, j]
                    a[p, j] = c * xp - sn * xq
                    a[q, j] = sn * xp + c * xq
                for j in range(n):
                    xp = a[j, p]
                    xq = a[j, q]
                    a[j, p] = c * xp - sn * xq
                    a[j, q] = sn * xp + c * xq
                a[p, q] = 0.0
                a[q, p] = 0.0
                for j in range(n):
                    xp = vecs[j, p]
                    xq = vecs[j, q]
                    vecs[j, p] = c * xp - sn * xq
                    vecs[j, q] = sn * xp + c * xq
    if not converged:
        raise RuntimeError("jacobi_eigh failed to converge")
    w = np.diagonal(a_arr).copy()
    order = np.argsort(w, kind="stable")
    return w[order], vecs_arr[:, order]
