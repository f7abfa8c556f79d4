"""Pure-numpy implementations of the hot kernels.

Same signatures and semantics as the compiled module `_core`; one of the
two is selected in `drkernel._kernels.__init__`.
"""

import numpy as np


def busemann_batch(J, coords, v, y):
    """Evaluate the Busemann function at a batch of points.

    Parameters
    ----------
    J : ndarray, shape (m, k, k)
        Matrices of the skew maps J_1..J_m on v.
    coords : ndarray, shape (N, k+m+1)
        Rows are chart coordinates (V^1..V^k, Y^1..Y^m, s) with a = e^s.
    v, y : ndarray
        Coordinates of the finite boundary point.

    Returns
    -------
    ndarray, shape (N,)
        log F - s - log((1 + |v|^2/4)^2 + |y|^2) per row.
    """
    m, k, _ = J.shape
    coords = np.asarray(coords, dtype=float)
    V = coords[:, :k]
    Y = coords[:, k:k + m]
    s = coords[:, k + m]
    cal_v = v[None, :] - V
    # [V, v]_r = <J_r V, v> = V . (J_r^T v); the projections J_r^T v are
    # independent of the batch row
    jv = np.einsum("rcb,c->rb", J, v)
    cal_y = y[None, :] - Y - 0.5 * (V @ jv.T)
    a = np.exp(s)
    f = a + 0.25 * np.einsum("ni,ni->n", cal_v, cal_v)
    F = f * f + np.einsum("nr,nr->n", cal_y, cal_y)
    norm_const = np.log((1.0 + 0.25 * float(v @ v)) ** 2 + float(y @ y))
    return np.log(F) - s - norm_const


def jacobi_eigh(matrix, tol=1e-12, max_sweeps=100):
    """Symmetric eigendecomposition by cyclic Jacobi rotations.

    Sweeps row pairs until the off-diagonal Frobenius norm drops below
    `tol`.  Returns eigenvalues in ascending order and the matching
    orthonormal eigenvectors as columns.
    """
    a = np.array(matrix, dtype=float, copy=True)
    n = a.shape[0]
    vecs = np.eye(n)
    if n < 2:
        return a.diagonal().copy(), vecs
    for _ in range(max_sweeps):
        off = a - np.diag(a.diagonal())
        if np.sqrt(np.sum(off * off)) <= tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                sn = t * c
                rp = c * a[p, :] - sn * a[q, :]
                rq = sn * a[p, :] + c * a[q, :]
                a[p, :], a[q, :] = rp, rq
                cp = c * a[:, p] - sn * a[:, q]
                cq = sn * a[:, p] + c * a[:, q]
                a[:, p], a[:, q] = cp, cq
                a[p, q] = a[q, p] = 0.0
                vp = c * vecs[:, p] - sn * vecs[:, q]
                vq = sn * vecs[:, p] + c * vecs[:, q]
                vecs[:, p], vecs[:, q] = vp, vq
    else:
        raise RuntimeError("jacobi_eigh failed to converge")
    w = a.diagonal().copy()
    order = np.argsort(w, kind="stable")
    return w[order], vecs[:, order]
