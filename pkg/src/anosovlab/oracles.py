"""Independent oracle computations backing the acceptance suite.

Each oracle recomputes a quantity through a different route than the
primary code path: cellular chain complexes instead of the Wang/Gysin
formulas, high-precision or plain floating sign tests instead of exact
quadratic arithmetic, dense sampling instead of circle algebra, and direct
region integrals instead of boundary integrals.
"""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath
import numpy as np
from scipy.integrate import quad

from .exact import GradedZModule, IntMatrix
from .exact.intmat import chain_homology
from .chords import cone_spec
from .hyperbolic import hyperbolic_translation
from .toral import torus_apply


# ------------------------------------------------ cellular (co)homology

def mapping_torus_cellular_cohomology(A):
    """H*(mapping torus) from the one-vertex cellular cochain complex.

    Chains: C0 = <v>, C1 = <x, y, t>, C2 = <F, x^t, y^t>, C3 = <F^t>,
    where ^t marks the suspended cells.  The only nonzero boundary is
    d2(e^t) = (I - A) e on the edge block.  Cohomology is the homology of
    the transposed complex, assembled degreewise by Smith reduction."""
    I2 = IntMatrix.identity(2)
    B = I2 - A  # action on the edge block
    d1 = IntMatrix.zero(1, 3)
    d2 = IntMatrix(
        [
            [0, B.rows[0][0], B.rows[0][1]],
            [0, B.rows[1][0], B.rows[1][1]],
            [0, 0, 0],
        ]
    )
    d3 = IntMatrix.zero(3, 1)
    return _cochain_cohomology([1, 3, 3, 1], {1: d1, 2: d2, 3: d3})


def circle_bundle_cellular_cohomology(g):
    """H*(circle bundle, Euler number 2-2g) from the presentation complex.

    C1 = <a_i, b_i, t>, C2 = <[a_i,t], [b_i,t], F>, with d2(F) = -e t and
    everything else closed."""
    e = 2 - 2 * g
    n1 = 2 * g + 1
    n2 = 2 * g + 1
    d1 = IntMatrix.zero(1, n1)
    rows = [[0] * n2 for _ in range(n1)]
    rows[2 * g][n2 - 1] = -e  # F maps to -e times the fiber edge
    d2 = IntMatrix(rows)
    d3 = IntMatrix.zero(n2, 1)
    return _cochain_cohomology([1, n1, n2, 1], {1: d1, 2: d2, 3: d3})


def _cochain_cohomology(ranks, boundaries):
    """Cohomology of the dualized complex: H^k = ker(d_{k+1}^T)/im(d_k^T)."""
    table = GradedZModule()
    top = len(ranks) - 1
    for k in range(top + 1):
        if k < top:
            d_out = boundaries[k + 1].transpose()
        else:
            d_out = IntMatrix.zero(1, ranks[top])
        if k > 0:
            d_in = boundaries[k].transpose()
        else:
            d_in = IntMatrix.zero(ranks[0], 1)
        free, tors = chain_homology(d_out, d_in)
        table.set(k, free, tors)
    return table


# ----------------------------------------------------- toral dynamics

def fixed_points_pointwise_check(A, n, points):
    """Verify A^n p = p mod Z^2 for every claimed point, exactly.

    Works over integer numerators on a common denominator to stay cheap on
    large point sets."""
    An = A.pow(n)
    (a, b), (c, d) = An.rows
    den = 1
    for x, y in points:
        den = den * x.denominator // math.gcd(den, x.denominator)
        den = den * y.denominator // math.gcd(den, y.denominator)
    for x, y in points:
        nx = int(x * den)
        ny = int(y * den)
        if (a * nx + b * ny - nx) % den or (c * nx + d * ny - ny) % den:
            return False
    return True


def fixed_points_grid_scan(A, n, q):
    """Exhaustive scan of the (1/q) grid; only sensible for small q."""
    An = A.pow(n)
    out = []
    for i in range(q):
        for j in range(q):
            p = (Fraction(i, q), Fraction(j, q))
            if torus_apply(An, p) == p:
                out.append(p)
    return out


# ------------------------------------------------------ chord shadows

def _edge_floats(H, sign, to_mp=False, prec=200):
    cone = cone_spec(H, sign)
    if to_mp:
        with mpmath.workprec(prec):
            return (
                [cone.edge0[0].to_mpf(prec), cone.edge0[1].to_mpf(prec)],
                [cone.edge1[0].to_mpf(prec), cone.edge1[1].to_mpf(prec)],
            )
    return (
        [float(cone.edge0[0]), float(cone.edge0[1])],
        [float(cone.edge1[0]), float(cone.edge1[1])],
    )


def chord_membership_float(H, p, q, sign, kmax):
    """Float64 shadow of the exact cone test; returns a set of (m, n)."""
    e0, e1 = _edge_floats(H, sign)
    rx = float(Fraction(q[0]) - Fraction(p[0]))
    ry = float(Fraction(q[1]) - Fraction(p[1]))
    out = set()
    for m in range(-kmax, kmax + 1):
        for n in range(-kmax, kmax + 1):
            wx, wy = m + rx, n + ry
            if wx == 0 and wy == 0:
                continue
            if e0[0] * wy - e0[1] * wx > 0 and wx * e1[1] - wy * e1[0] > 0:
                out.add((m, n))
    return out


def chord_membership_mp(H, p, q, sign, kmax, prec=200):
    """200-bit shadow of the exact cone test."""
    with mpmath.workprec(prec):
        e0, e1 = _edge_floats(H, sign, to_mp=True, prec=prec)
        rx = Fraction(q[0]) - Fraction(p[0])
        ry = Fraction(q[1]) - Fraction(p[1])
        rxm = mpmath.mpf(rx.numerator) / rx.denominator
        rym = mpmath.mpf(ry.numerator) / ry.denominator
        out = set()
        for m in range(-kmax, kmax + 1):
            for n in range(-kmax, kmax + 1):
                wx, wy = m + rxm, n + rym
                if wx == 0 and wy == 0:
                    continue
                if e0[0] * wy - e0[1] * wx > 0 and wx * e1[1] - wy * e1[0] > 0:
                    out.add((m, n))
        return out


def cone_box_area(H, sign, k, grid=1500):
    """Raster estimate of area(cone /\\ box_k); Gauss-counts lattice points."""
    e0, e1 = _edge_floats(H, sign)
    xs = np.linspace(-k, k, grid, endpoint=False) + k / grid
    X, Y = np.meshgrid(xs, xs, indexing="ij")
    inside = (e0[0] * Y - e0[1] * X > 0) & (X * e1[1] - Y * e1[0] > 0)
    cell = (2.0 * k / grid) ** 2
    return float(inside.sum()) * cell


# --------------------------------------------------- triangle sampling

def _sample_geodesic(g, n):
    if g.is_vertical:
        ys = np.tan(np.linspace(0.05, math.pi / 2 - 0.05, n))
        return [complex(g.foot, y) for y in ys]
    angs = np.linspace(0.02, math.pi - 0.02, n)
    return [
        complex(g.center + g.radius * math.cos(a), g.radius * math.sin(a))
        for a in angs
    ]


def _crossing_by_sampling(g, h, n=2000, bisect=80):
    """Locate a transverse crossing of g and h by sign change of h.side."""
    pts = _sample_geodesic(g, n)
    sides = [h.side(z) for z in pts]
    for i in range(n - 1):
        if sides[i] == 0.0:
            return pts[i]
        if sides[i] * sides[i + 1] < 0:
            lo, hi = pts[i], pts[i + 1]
            slo = sides[i]
            for _ in range(bisect):
                mid = 0.5 * (lo + hi)
                # project the chord midpoint back onto g
                if g.is_vertical:
                    mid = complex(g.foot, mid.imag)
                else:
                    ang = math.atan2(mid.imag, mid.real - g.center)
                    mid = complex(
                        g.center + g.radius * math.cos(ang),
                        g.radius * math.sin(ang),
                    )
                sm = h.side(mid)
                if sm == 0.0:
                    return mid
                if slo * sm < 0:
                    hi = mid
                else:
                    lo, slo = mid, sm
            return 0.5 * (lo + hi)
    return None


def triangle_count_sampled(g0, g1, g2, ell1, K):
    """Oracle: count admissible translates via dense sampling only."""
    base = _crossing_by_sampling(g0, g1)
    if base is None:
        return 0
    T = hyperbolic_translation(g1, ell1)
    count = 0
    for k in range(-K, K + 1):
        step = T if k >= 0 else T.inverse()
        h = g2
        for _ in range(abs(k)):
            h = step.apply_geodesic(h)
        v12 = _crossing_by_sampling(g1, h)
        v02 = _crossing_by_sampling(g0, h)
        if v12 is None or v02 is None:
            continue
        cross = (v12 - base).real * (v02 - base).imag - (v12 - base).imag * (
            v02 - base
        ).real
        if cross > 0:
            count += 1
    return count


# ------------------------------------------------------ region areas

def disk_weighted_area(rho, x0=0.0, y0=0.0):
    """Direct 2-D integral of 1/(1-y^2) over a disk (x-slab integrated
    exactly, then 1-D quadrature in y)."""
    if abs(y0) + rho >= 1.0:
        raise ValueError("disk must stay inside the strip |y| < 1")

    def slab(y):
        half = math.sqrt(max(rho * rho - (y - y0) ** 2, 0.0))
        return 2.0 * half / (1.0 - y * y)

    val, _ = quad(slab, y0 - rho, y0 + rho, epsabs=1e-12, epsrel=1e-12,
                  limit=200)
    return val


def stadium_weighted_area_direct(seg_length, h):
    """Direct 2-D integral over the stadium region by horizontal slabs."""
    L = seg_length

    def width(y):
        if abs(y) > h:
            return 0.0
        return L + 2.0 * math.sqrt(max(h * h - y * y, 0.0))

    val, _ = quad(lambda y: width(y) / (1.0 - y * y), -h, h, epsabs=1e-12,
                  epsrel=1e-12, limit=200)
    return val
