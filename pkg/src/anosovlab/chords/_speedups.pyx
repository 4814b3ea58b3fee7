# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled box-enumeration kernel.

Same contract as _kernels_py.enumerate_box, restricted to inputs whose
intermediate products fit in 128-bit integers; the caller checks bounds
before dispatching here.  Signs are still exact: the quadratic comparison
p^2 vs q^2 * D is done in __int128.
"""

from libc.stdlib cimport malloc, free

ctypedef long long i64
cdef extern from *:
    ctypedef long long i128 "__int128"


cdef inline int _qsign(i64 p, i64 q, i64 D) nogil:
    cdef i128 t
    if q == 0:
        return 1 if p > 0 else (-1 if p < 0 else 0)
    if p == 0:
        return 1 if q > 0 else -1
    if p > 0 and q > 0:
        return 1
    if p < 0 and q < 0:
        return -1
    t = <i128> p * p - <i128> q * q * D
    if t == 0:
        return 0
    if p > 0:
        return 1 if t > 0 else -1
    return -1 if t > 0 else 1


cdef inline bint _member(i64 m, i64 n, i64 A0, i64 B0, i64 C0, i64 E0,
                         i64 A1, i64 B1, i64 C1, i64 E1,
                         i64 D, i64 den, i64 rxn, i64 ryn) nogil:
    cdef i64 wx = m * den + rxn
    cdef i64 wy = n * den + ryn
    if wx == 0 and wy == 0:
        return False
    if _qsign(A0 * wy - C0 * wx, B0 * wy - E0 * wx, D) <= 0:
        return False
    if _qsign(C1 * wx - A1 * wy, E1 * wx - B1 * wy, D) <= 0:
        return False
    return True


BACKEND = "cython"


def enumerate_box(coeffs, D, den, rxn, ryn, kmax, want_points=True):
    cdef i64 cA0, cB0, cC0, cE0, cA1, cB1, cC1, cE1
    cA0, cB0, cC0, cE0, cA1, cB1, cC1, cE1 = coeffs
    cdef i64 cD = D, cden = den, crx = rxn, cry = ryn
    cdef int ck = kmax
    cdef int k, m, n
    cdef long long c
    counts = []
    points = [] if want_points else None
    for k in range(ck + 1):
        c = 0
        if k == 0:
            if _member(0, 0, cA0, cB0, cC0, cE0, cA1, cB1, cC1, cE1,
                       cD, cden, crx, cry):
                c += 1
                if want_points:
                    points.append((0, 0))
        else:
            for m in range(-k, k + 1):
                for n in (-k, k):
                    if _member(m, n, cA0, cB0, cC0, cE0, cA1, cB1, cC1, cE1,
                               cD, cden, crx, cry):
                        c += 1
                        if want_points:
                            points.append((m, n))
            for n in range(-k + 1, k):
                for m in (-k, k):
                    if _member(m, n, cA0, cB0, cC0, cE0, cA1, cB1, cC1, cE1,
                               cD, cden, crx, cry):
                        c += 1
                        if want_points:
                            points.append((m, n))
        counts.append(c)
    return counts, points
