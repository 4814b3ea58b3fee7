"""Reeb chords of torus-bundle domains as lattice points in quadratic cones.

A chord from p to q on the +/- end is a translate q~ + (m,n) - p~ lying in
the open cone spanned by the Reeb directions at slope 0 and slope nu.  Cone
membership is decided exactly in Q(sqrt(D)); slopes and actions are derived
floats attached afterwards and never feed back into membership.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..exact import QuadNum
from ..toral import HyperbolicToral, PeriodicOrbit, torus_apply
from . import _kernels
from ._kernels import BACKEND  # re-export for reports

__all__ = [
    "BACKEND",
    "ConeSpec",
    "ChordGen",
    "FilteredChordSet",
    "cone_spec",
    "cone_contains",
    "enumerate_chords",
    "chord_slope",
    "enumerate_rational_fibers",
    "hw_rank_table",
    "homotopy_class",
    "class_disjointness",
    "product_candidates",
    "ZeroVector",
    "OutsideCone",
    "MismatchedMonodromy",
    "IncompatibleEndpoints",
]


class ZeroVector(ValueError):
    pass


class OutsideCone(ValueError):
    pass


class MismatchedMonodromy(ValueError):
    pass


class IncompatibleEndpoints(ValueError):
    pass


def _det2(u, v):
    return u[0] * v[1] - u[1] * v[0]


@dataclass(frozen=True)
class ConeSpec:
    """Open cone at a rational apex spanned by two exact edge directions.

    Edges are ordered so det(edge0, edge1) > 0; membership is then two
    strict determinant-sign tests.  slope0_edge records which stored edge
    is the slope-0 Reeb direction (edge order may have been swapped)."""

    apex: tuple
    edge0: tuple
    edge1: tuple
    sign: int
    D: int
    slope0_edge: int = 0

    def contains(self, w):
        return cone_contains(self, w)


def cone_spec(H: HyperbolicToral, sign, apex=(Fraction(0), Fraction(0))):
    """The chord cone of the +/- end: spanned by R_sign(0) and R_sign(nu).

    R_sign(z) is proportional to sign*e^{-z} vx + e^{z} vy, so the edges are
    sign*vx + vy and sign*lambda_minus*vx + lambda_plus*vy (positive scale
    dropped)."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    s = QuadNum(sign, 0, H.D)
    e0 = (s * H.vx[0] + H.vy[0], s * H.vx[1] + H.vy[1])
    e1 = (
        s * H.lambda_minus * H.vx[0] + H.lambda_plus * H.vy[0],
        s * H.lambda_minus * H.vx[1] + H.lambda_plus * H.vy[1],
    )
    slope0 = 0
    if _det2(e0, e1).sign() < 0:
        e0, e1 = e1, e0
        slope0 = 1
    apex = (Fraction(apex[0]), Fraction(apex[1]))
    return ConeSpec(apex=apex, edge0=e0, edge1=e1, sign=sign, D=H.D,
                    slope0_edge=slope0)


def cone_contains(cone: ConeSpec, w):
    """Exact strict membership of the rational vector w in the open cone."""
    wx, wy = Fraction(w[0]), Fraction(w[1])
    if wx == 0 and wy == 0:
        raise ZeroVector("zero vector has no direction")
    if _det2(cone.edge0, (wx, wy)).sign() <= 0:
        return False
    if _det2((wx, wy), cone.edge1).sign() <= 0:
        return False
    return True


def _integerized_edges(cone: ConeSpec):
    """Clear denominators of both edges: 8 integers (A0,B0,C0,E0,A1,...)."""
    out = []
    for edge in (cone.edge0, cone.edge1):
        dens = []
        for q in edge:
            dens.append(q.a.denominator)
            dens.append(q.b.denominator)
        lcm = 1
        for d in dens:
            lcm = lcm * d // math.gcd(lcm, d)
        for q in edge:
            out.append(int(q.a * lcm))
            out.append(int(q.b * lcm))
    return tuple(out)


@dataclass(frozen=True)
class ChordGen:
    """One Reeb chord: a cone translate with derived slope and action."""

    m: int
    n: int
    sign: int
    source: tuple
    target: tuple
    z: float
    box: int
    action: float

    @property
    def translate(self):
        return (self.m, self.n)

    def to_dict(self):
        return {
            "m": self.m,
            "n": self.n,
            "sign": "+" if self.sign > 0 else "-",
            "z": self.z,
            "box": self.box,
            "action": self.action,
        }


@dataclass(frozen=True)
class FilteredChordSet:
    """Chords grouped by box length with cumulative counts."""

    source: tuple
    target: tuple
    sign: int
    k_max: int
    chords: tuple
    counts_by_k: tuple          # counts_by_k[k] = #chords with box <= k

    def count(self, k=None):
        if k is None:
            k = self.k_max
        return self.counts_by_k[k]

    def ring(self, k):
        """Chords with box length exactly k."""
        return tuple(c for c in self.chords if c.box == k)


def _offset_data(p, q):
    rx = Fraction(q[0]) - Fraction(p[0])
    ry = Fraction(q[1]) - Fraction(p[1])
    den = rx.denominator * ry.denominator // math.gcd(
        rx.denominator, ry.denominator
    )
    return den, int(rx * den), int(ry * den)


def enumerate_chords(H, p, q, sign, k_max, with_chords=True):
    """All chords from p to q with box length <= k_max on the given end."""
    if k_max < 0:
        raise ValueError("k_max >= 0 required")
    cone = cone_spec(H, sign)
    coeffs = _integerized_edges(cone)
    den, rxn, ryn = _offset_data(p, q)
    ring_counts, points = _kernels.enumerate_box(
        coeffs, H.D, den, rxn, ryn, k_max, want_points=with_chords
    )
    cum = []
    total = 0
    for c in ring_counts:
        total += c
        cum.append(total)
    chords = ()
    if with_chords:
        p = (Fraction(p[0]), Fraction(p[1]))
        q = (Fraction(q[0]), Fraction(q[1]))
        built = []
        for m, n in points:
            w = (q[0] + m - p[0], q[1] + n - p[1])
            z, _, _ = chord_slope(H, w, sign)
            built.append(
                ChordGen(
                    m=m,
                    n=n,
                    sign=sign,
                    source=p,
                    target=q,
                    z=z,
                    box=max(abs(m), abs(n)),
                    action=math.hypot(float(w[0]), float(w[1])),
                )
            )
        built.sort(key=lambda c: (c.box, c.m, c.n))
        chords = tuple(built)
    return FilteredChordSet(
        source=tuple(map(Fraction, p)),
        target=tuple(map(Fraction, q)),
        sign=sign,
        k_max=k_max,
        chords=chords,
        counts_by_k=tuple(cum),
    )


def eigen_coefficients(H, w):
    """Solve a*vx + b*vy = w exactly; returns (a, b) as QuadNums."""
    wx = QuadNum(Fraction(w[0]), 0, H.D)
    wy = QuadNum(Fraction(w[1]), 0, H.D)
    det = H.vx[0] * H.vy[1] - H.vx[1] * H.vy[0]
    a = (wx * H.vy[1] - wy * H.vy[0]) / det
    b = (H.vx[0] * wy - H.vx[1] * wx) / det
    return a, b


def chord_slope(H, w, sign):
    """Slope z in [0, nu) of the chord direction w on the +/- end.

    Writing w = a vx + b vy, the direction is R_sign(z) iff
    (a, b) is a positive multiple of (sign*e^{-z}, e^{z}), so
    z = log(b / (sign*a)) / 2, reduced mod nu.  Sign checks are exact."""
    a, b = eigen_coefficients(H, w)
    if b.sign() <= 0 or (a * sign).sign() <= 0:
        raise OutsideCone(
            "eigen-coefficients (%s, %s) incompatible with sign %+d"
            % (a, b, sign)
        )
    ratio = b / (a * sign)
    z = 0.5 * math.log(float(ratio))
    z_mod = z % H.nu
    if z_mod >= H.nu:  # guard against boundary rounding
        z_mod -= H.nu
    return z_mod, a, b


def enumerate_rational_fibers(H, sign, max_norm):
    """Primitive cone vectors up to box max_norm, with their slopes.

    Each primitive (m, n) is a rational Reeb direction, hence a fiber of
    closed orbits; slopes of distinct primitive vectors are automatically
    distinct (checked exactly via integer cross products)."""
    if max_norm < 0:
        raise ValueError("max_norm >= 0 required")
    cone = cone_spec(H, sign)
    coeffs = _integerized_edges(cone)
    ring_counts, points = _kernels.enumerate_box(
        coeffs, H.D, 1, 0, 0, max_norm, want_points=True
    )
    out = []
    for m, n in points:
        if math.gcd(abs(m), abs(n)) != 1:
            continue
        z, _, _ = chord_slope(H, (m, n), sign)
        out.append((m, n, z))
    for i in range(len(out)):
        for j in range(i + 1, len(out)):
            mi, ni, _ = out[i]
            mj, nj, _ = out[j]
            if mi * nj - mj * ni == 0:
                raise AssertionError(
                    "distinct primitive vectors with equal direction"
                )
    out.sort(key=lambda t: (t[2], t[0], t[1]))
    return out


def _check_orbit(H, orbit: PeriodicOrbit):
    pts = orbit.points
    for i, p in enumerate(pts):
        if torus_apply(H.A, p) != pts[(i + 1) % len(pts)]:
            raise MismatchedMonodromy(
                "orbit %r is not an orbit of %r" % (orbit, H.A)
            )


def hw_rank_table(H, orbit1: PeriodicOrbit, orbit2: PeriodicOrbit, k_max):
    """Ungraded wrapped-Floer rank bookkeeping for a pair of orbits.

    Rank = sum over endpoint pairs of chord counts on both ends, within the
    box window, plus the pair of degree-(0,1) Morse generators when the two
    orbits coincide.  No differential is applied (there is none)."""
    _check_orbit(H, orbit1)
    _check_orbit(H, orbit2)
    same = orbit1.points == orbit2.points
    by_pair = {}
    chord_rank = 0
    for p in orbit1.points:
        for q in orbit2.points:
            plus = enumerate_chords(H, p, q, +1, k_max, with_chords=False)
            minus = enumerate_chords(H, p, q, -1, k_max, with_chords=False)
            c = plus.count() + minus.count()
            by_pair[(str(p), str(q))] = {
                "plus": plus.count(),
                "minus": minus.count(),
            }
            chord_rank += c
    report = {
        "k_max": k_max,
        "same_orbit": same,
        "chord_rank": chord_rank,
        "morse": {"0": 1, "1": 1} if same else None,
        "total_rank": chord_rank + (2 if same else 0),
        "by_pair": by_pair,
    }
    return report


def homotopy_class(chord: ChordGen):
    """Class of the chord in Z^2 x| Z (fiber part, zero monodromy part)."""
    return (chord.m, chord.n, 0)


def class_disjointness(H, box_bound=50):
    """Certify that + and - chord classes live in disjoint open cones.

    The certificate is the irrationality of the eigen-slopes (tr^2 - 4 is
    not a perfect square), backed by two exhaustive window checks: no
    lattice point lies in both cones, and none lies on a cone edge."""
    t = H.A.trace()
    cert = (t * t - 4, not _is_square(t * t - 4))
    plus = set(_all_cone_points(H, +1, box_bound))
    minus = set(_all_cone_points(H, -1, box_bound))
    overlap = plus & minus
    on_edge = []
    for sign in (1, -1):
        coeffs = _integerized_edges(cone_spec(H, sign))
        for ax, bx, cy, ey in (coeffs[:4], coeffs[4:]):
            # det(edge, (m,n)) = (ax*n - cy*m) + (bx*n - ey*m) sqrt(D):
            # zero needs both integer components zero
            for m in range(-box_bound, box_bound + 1):
                for n in range(-box_bound, box_bound + 1):
                    if (m or n) and ax * n == cy * m and bx * n == ey * m:
                        on_edge.append((sign, m, n))
    return {
        "disc": cert[0],
        "disc_not_square": cert[1],
        "box_bound": box_bound,
        "overlap": sorted(overlap),
        "edge_lattice_points": on_edge,
        "disjoint": cert[1] and not overlap and not on_edge,
    }


def _is_square(n):
    return n >= 0 and math.isqrt(n) ** 2 == n


def _all_cone_points(H, sign, box):
    cone = cone_spec(H, sign)
    coeffs = _integerized_edges(cone)
    _, points = _kernels.enumerate_box(coeffs, H.D, 1, 0, 0, box, True)
    return points


def _pow_signed(A, k):
    if k >= 0:
        return A.pow(k)
    (a, b), (c, d) = A.rows
    from ..exact import IntMatrix

    inv = IntMatrix([[d, -b], [-c, a]])  # valid since det A = 1
    return inv.pow(-k)


def product_candidates(H, c01: ChordGen, c12: ChordGen, orbit1: PeriodicOrbit,
                       k_window):
    """Candidate output chords of the (open) triangle product.

    For exponents k with A^k(source of c12) = target of c01, in the window
    |k| <= k_window, the concatenated translate w01 + A^k w12 is the unique
    in-cone candidate from the source of c01 to A^k(target of c12).  These
    are combinatorial candidates only; whether any Floer solution realizes
    them is open."""
    if c01.sign != c12.sign:
        raise IncompatibleEndpoints("chords live on different ends")
    sign = c01.sign
    _check_orbit(H, orbit1)
    q1 = (c01.target[0] % 1, c01.target[1] % 1)
    p1 = (c12.source[0] % 1, c12.source[1] % 1)
    pts = set(orbit1.points)
    if q1 not in pts or p1 not in pts:
        raise IncompatibleEndpoints(
            "target of c01 and source of c12 must lie in the middle orbit"
        )
    size = orbit1.period
    k1 = None
    for k in range(size):
        if torus_apply(_pow_signed(H.A, k), p1) == q1:
            k1 = k
            break
    if k1 is None:
        raise IncompatibleEndpoints("no monodromy power matches endpoints")
    w01 = (
        c01.target[0] + c01.m - c01.source[0],
        c01.target[1] + c01.n - c01.source[1],
    )
    w12 = (
        c12.target[0] + c12.m - c12.source[0],
        c12.target[1] + c12.n - c12.source[1],
    )
    cone = cone_spec(H, sign)
    lam_sq = H.lambda_plus * H.lambda_plus
    out = []
    k = k1
    while k - size >= -k_window:
        k -= size
    while k <= k_window:
        Ak = _pow_signed(H.A, k)
        akw = (
            Ak.rows[0][0] * w12[0] + Ak.rows[0][1] * w12[1],
            Ak.rows[1][0] * w12[0] + Ak.rows[1][1] * w12[1],
        )
        w02 = (w01[0] + akw[0], w01[1] + akw[1])
        # w02 lies in the open quadrant cone but its slope is in
        # (0, (k+1) nu) in general; reduce into the fundamental domain by
        # the mapping-torus identification (v, z) ~ (A v, z - nu), i.e.
        # apply A^j with j = floor(slope / nu), decided exactly
        a, b = eigen_coefficients(H, w02)
        ratio = b / (a * sign)
        j = 0
        while (ratio - lam_sq).sign() >= 0:
            ratio = ratio / lam_sq
            j += 1
        while ratio.sign() > 0 and (ratio - 1).sign() < 0:
            ratio = ratio * lam_sq
            j -= 1
        Aj = _pow_signed(H.A, j)
        w_red = (
            Aj.rows[0][0] * w02[0] + Aj.rows[0][1] * w02[1],
            Aj.rows[1][0] * w02[0] + Aj.rows[1][1] * w02[1],
        )
        assert cone_contains(cone, w_red)
        source = torus_apply(Aj, c01.source)
        target = torus_apply(_pow_signed(H.A, j + k), c12.target)
        trans = (w_red[0] - (target[0] - source[0]),
                 w_red[1] - (target[1] - source[1]))
        m, n = int(trans[0]), int(trans[1])
        assert trans[0] == m and trans[1] == n
        z, _, _ = chord_slope(H, w_red, sign)
        out.append(
            (
                k,
                ChordGen(
                    m=m,
                    n=n,
                    sign=sign,
                    source=source,
                    target=target,
                    z=z,
                    box=max(abs(m), abs(n)),
                    action=math.hypot(float(w_red[0]), float(w_red[1])),
                ),
            )
        )
        k += size
    return out
