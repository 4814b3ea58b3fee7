"""Pure-Python box-enumeration kernel (reference implementation).

Candidate translates live on box rings max(|m|,|n|) = k.  Each candidate is
tested against the two cone edges by the exact sign of an integer element
p + q*sqrt(D); no floating point is involved.  Arbitrary-precision ints make
this path total; the compiled kernel mirrors it for machine-word inputs.
"""

BACKEND = "python"


def _qsign(p, q, D):
    if q == 0:
        return (p > 0) - (p < 0)
    if p == 0:
        return (q > 0) - (q < 0)
    if p > 0:
        if q > 0:
            return 1
        t = p * p - q * q * D
        return 1 if t > 0 else (-1 if t < 0 else 0)
    if q < 0:
        return -1
    t = p * p - q * q * D
    return -1 if t > 0 else (1 if t < 0 else 0)


def _ring(k):
    if k == 0:
        yield (0, 0)
        return
    for m in range(-k, k + 1):
        yield (m, -k)
        yield (m, k)
    for n in range(-k + 1, k):
        yield (-k, n)
        yield (k, n)


def enumerate_box(coeffs, D, den, rxn, ryn, kmax, want_points=True):
    """Count (and optionally list) admissible translates up to box kmax.

    coeffs = (A0, B0, C0, E0, A1, B1, C1, E1): the cone edges written as
    edge0 = (A0 + B0 rt, C0 + E0 rt), edge1 = (A1 + B1 rt, C1 + E1 rt) with
    rt = sqrt(D).  The tested vector is W = (m*den + rxn, n*den + ryn).
    Returns (ring_counts, points): ring_counts[k] counts box length exactly
    k; points is a list of (m, n) or None.
    """
    A0, B0, C0, E0, A1, B1, C1, E1 = coeffs
    counts = [0] * (kmax + 1)
    points = [] if want_points else None
    for k in range(kmax + 1):
        c = 0
        for m, n in _ring(k):
            wx = m * den + rxn
            wy = n * den + ryn
            if wx == 0 and wy == 0:
                continue
            if _qsign(A0 * wy - C0 * wx, B0 * wy - E0 * wx, D) <= 0:
                continue
            if _qsign(C1 * wx - A1 * wy, E1 * wx - B1 * wy, D) <= 0:
                continue
            c += 1
            if want_points:
                points.append((m, n))
        counts[k] = c
    return counts, points
