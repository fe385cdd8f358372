# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Cyclic Jacobi eigensolver for dense complex Hermitian matrices (compiled kernel).

Row-cyclic sweep order. Each rotation first removes the phase of a[p, q],
then applies the classical real Jacobi rotation, so the combined 2x2 unitary is
``[[c, s*e], [-s*conj(e), c]]`` with ``e = a[p, q] / |a[p, q]|``.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs, hypot

cnp.import_array()


cdef inline double cabs(double complex z) nogil:
    return hypot(z.real, z.imag)


def jacobi_hermitian(a_in, int max_sweeps, double rel_tol):
    """Return ``(diag, V, sweeps)``; ``sweeps == -1`` signals no convergence."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] a_arr = np.array(a_in, dtype=np.complex128, order="C", copy=True)
    cdef Py_ssize_t n = a_arr.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] v_arr = np.eye(n, dtype=np.complex128)
    cdef double complex[:, ::1] a = a_arr
    cdef double complex[:, ::1] v = v_arr
    cdef Py_ssize_t i, p, q
    cdef int sweep
    cdef double fro = 0.0, off, r, app, aqq, tau, t, c, s
    cdef double complex e, ec, x, y, se, sec

    for p in range(n):
        for q in range(n):
            fro += a[p, q].real * a[p, q].real + a[p, q].imag * a[p, q].imag
    fro = sqrt(fro)
    if fro == 0.0:
        return np.zeros(n), v_arr, 0

    for sweep in range(max_sweeps + 1):
        off = 0.0
        for p in range(n):
            for q in range(p + 1, n):
                off += a[p, q].real * a[p, q].real + a[p, q].imag * a[p, q].imag
        off = sqrt(2.0 * off)
        if off <= rel_tol * fro:
            return np.real(np.diag(a_arr)).copy(), v_arr, sweep
        if sweep == max_sweeps:
            break
        with nogil:
            for p in range(n - 1):
                for q in range(p + 1, n):
                    r = cabs(a[p, q])
                    if r == 0.0:
                        continue
                    e = a[p, q] / r
                    ec = e.conjugate()
                    app = a[p, p].real
                    aqq = a[q, q].real
                    tau = (aqq - app) / (2.0 * r)
                    if tau >= 0.0:
                        t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                    else:
                        t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                    c = 1.0 / sqrt(1.0 + t * t)
                    s = t * c
                    se = s * e
                    sec = s * ec
                    for i in range(n):
                        x = a[i, p]
                        y = a[i, q]
                        a[i, p] = c * x - sec * y
                        a[i, q] = se * x + c * y
                    for i in range(n):
                        x = a[p, i]
                        y = a[q, i]
                        a[p, i] = c * x - se * y
                        a[q, i] = sec * x + c * y
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    a[p, p] = a[p, p].real
                    a[q, q] = a[q, q].real
                    for i in range(n):
                        x = v[i, p]
                        y = v[i, q]
                        v[i, p] = c * x - sec * y
                        v[i, q] = se * x + c * y
    return np.real(np.diag(a_arr)).copy(), v_arr, -1
