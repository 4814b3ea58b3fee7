"""Plane curves for the exact Lagrangian tori and cylinders.

A closed curve beta = (f, g) in the strip |y| < eps = tanh(delta) winding
once around the origin bounds an exact torus precisely when its weighted
area int dx dy / (1 - y^2) equals 2 pi; the weighted area is evaluated as
the boundary integral of x/(1-y^2) dy.  The curve family is a stadium (two
horizontal segments with semicircular caps) parametrized by arclength, so
one scalar root-find in the segment length does the construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad, solve_ivp
from scipy.optimize import brentq


class OriginOnCurve(ValueError):
    pass


class SelfIntersecting(ValueError):
    pass


class OutOfStrip(ValueError):
    pass


class NoBracket(ValueError):
    pass


@dataclass(frozen=True)
class StripSpec:
    """Width parameter of the ambient strip: eps = tanh(delta) < 1."""

    delta: float

    def __post_init__(self):
        if self.delta <= 0:
            raise ValueError("delta > 0 required")

    @property
    def eps(self):
        return math.tanh(self.delta)


@dataclass
class PlaneCurve:
    """Parametrized curve with derivatives; closed iff period is set."""

    f: object
    g: object
    fp: object
    gp: object
    period: float = None          # None for curves on a line/ray
    breakpoints: tuple = ()       # smooth pieces for quadrature
    meta: dict = field(default_factory=dict)

    @property
    def closed(self):
        return self.period is not None

    def point(self, s):
        return (self.f(s), self.g(s))

    def sample(self, n=2048, lo=None, hi=None):
        if self.closed:
            ss = np.linspace(0.0, self.period, n, endpoint=False)
        else:
            ss = np.linspace(lo, hi, n)
        pts = np.array([[self.f(s), self.g(s)] for s in ss])
        return ss, pts


def stadium_curve(seg_length, h):
    """Counterclockwise stadium: y = +-h segments, radius-h caps, arclength.

    Encloses the origin for any seg_length >= 0, h > 0."""
    if h <= 0:
        raise ValueError("cap radius h > 0 required")
    L = float(seg_length)
    P = 2 * L + 2 * math.pi * h

    def locate(s):
        s = s % P
        if s < L:
            return ("bottom", s)
        if s < L + math.pi * h:
            return ("right", (s - L) / h)
        if s < 2 * L + math.pi * h:
            return ("top", s - L - math.pi * h)
        return ("left", (s - 2 * L - math.pi * h) / h)

    def f(s):
        piece, u = locate(s)
        if piece == "bottom":
            return -L / 2 + u
        if piece == "right":
            return L / 2 + h * math.sin(u)
        if piece == "top":
            return L / 2 - u
        return -L / 2 - h * math.sin(u)

    def g(s):
        piece, u = locate(s)
        if piece == "bottom":
            return -h
        if piece == "right":
            return -h * math.cos(u)
        if piece == "top":
            return h
        return h * math.cos(u)

    def fp(s):
        piece, u = locate(s)
        if piece == "bottom":
            return 1.0
        if piece == "right":
            return math.cos(u)
        if piece == "top":
            return -1.0
        return -math.cos(u)

    def gp(s):
        piece, u = locate(s)
        if piece == "bottom":
            return 0.0
        if piece == "right":
            return math.sin(u)
        if piece == "top":
            return 0.0
        return -math.sin(u)

    breaks = (0.0, L, L + math.pi * h, 2 * L + math.pi * h, P)
    return PlaneCurve(f=f, g=g, fp=fp, gp=gp, period=P, breakpoints=breaks,
                      meta={"family": "stadium", "seg_length": L, "h": h})


def rounded_rectangle(width, h, corner_radius):
    """Counterclockwise rounded rectangle [-w/2, w/2] x [-h, h], arclength.

    Independent corner radius (<= h); corner_radius = h degenerates to the
    stadium.  As corner_radius -> 0 the weighted area tends to the full
    rectangle integral width * 2 artanh(h)."""
    rho = float(corner_radius)
    if not 0 < rho <= h:
        raise ValueError("0 < corner_radius <= h required")
    W = float(width)
    flat = W - 2 * rho          # straight horizontal run
    vert = 2 * (h - rho)        # straight vertical run
    if flat < 0:
        raise ValueError("width too small for the corner radius")
    arc = math.pi * rho / 2
    # pieces: bottom, corner, right, corner, top, corner, left, corner
    lengths = [flat, arc, vert, arc, flat, arc, vert, arc]
    starts = [0.0]
    for ln in lengths:
        starts.append(starts[-1] + ln)
    P = starts[-1]
    cx, cy = W / 2 - rho, h - rho

    def point_and_velocity(s):
        s = s % P
        k = 0
        while k < 8 and s >= starts[k + 1] - 1e-15 and s >= starts[k + 1] - lengths[k] * 0:
            if s < starts[k + 1]:
                break
            k += 1
        k = min(k, 7)
        u = s - starts[k]
        if k == 0:
            return (-cx + u, -h), (1.0, 0.0)
        if k == 1:
            a = -math.pi / 2 + u / rho
            return (cx + rho * math.cos(a), -cy + rho * math.sin(a)), (
                -math.sin(a), math.cos(a))
        if k == 2:
            return (W / 2, -cy + u), (0.0, 1.0)
        if k == 3:
            a = u / rho
            return (cx + rho * math.cos(a), cy + rho * math.sin(a)), (
                -math.sin(a), math.cos(a))
        if k == 4:
            return (cx - u, h), (-1.0, 0.0)
        if k == 5:
            a = math.pi / 2 + u / rho
            return (-cx + rho * math.cos(a), cy + rho * math.sin(a)), (
                -math.sin(a), math.cos(a))
        if k == 6:
            return (-W / 2, cy - u), (0.0, -1.0)
        a = math.pi + u / rho
        return (-cx + rho * math.cos(a), -cy + rho * math.sin(a)), (
            -math.sin(a), math.cos(a))

    def f(s):
        return point_and_velocity(s)[0][0]

    def g(s):
        return point_and_velocity(s)[0][1]

    def fp(s):
        return point_and_velocity(s)[1][0]

    def gp(s):
        return point_and_velocity(s)[1][1]

    return PlaneCurve(f=f, g=g, fp=fp, gp=gp, period=P,
                      breakpoints=tuple(starts),
                      meta={"family": "rounded-rectangle", "width": W,
                            "h": h, "corner_radius": rho})


def winding_number(curve):
    """Degree about the origin by adaptive angle accumulation."""
    if not curve.closed:
        raise ValueError("winding number needs a closed curve")
    n = 256
    while True:
        ss = np.linspace(0.0, curve.period, n, endpoint=False)
        pts = np.array([[curve.f(s), curve.g(s)] for s in ss])
        rad = np.hypot(pts[:, 0], pts[:, 1])
        if np.min(rad) < 1e-12:
            raise OriginOnCurve("curve passes through the origin")
        ang = np.arctan2(pts[:, 1], pts[:, 0])
        d = np.diff(np.concatenate([ang, ang[:1]]))
        d = (d + math.pi) % (2 * math.pi) - math.pi
        if np.max(np.abs(d)) < math.pi / 2:
            total = float(np.sum(d))
            return int(round(total / (2 * math.pi)))
        n *= 2
        if n > 1 << 22:
            raise OriginOnCurve("angle increments do not settle")


def assert_in_strip(curve, eps, n=4096):
    _, pts = curve.sample(n) if curve.closed else curve.sample(n, *curve.meta["range"])
    worst = float(np.max(np.abs(pts[:, 1])))
    if worst >= eps:
        raise OutOfStrip("max |y| = %g >= eps = %g" % (worst, eps))
    return worst


def assert_simple(curve, n=2048):
    """Jordan-curve certification by a vectorized segment sweep."""
    _, pts = curve.sample(n)
    nxt = np.roll(pts, -1, axis=0)
    d = nxt - pts
    lo = np.minimum(pts, nxt)
    hi = np.maximum(pts, nxt)
    for i in range(n):
        # bounding-box prefilter against all non-adjacent segments
        js = np.arange(i + 2, n if i > 0 else n - 1)
        if len(js) == 0:
            continue
        box = ~(
            (hi[js, 0] < lo[i, 0]) | (lo[js, 0] > hi[i, 0])
            | (hi[js, 1] < lo[i, 1]) | (lo[js, 1] > hi[i, 1])
        )
        cand = js[box]
        for j in cand:
            if _segments_cross(pts[i], nxt[i], pts[j], nxt[j]):
                raise SelfIntersecting("segments %d and %d cross" % (i, j))
    return True


def _segments_cross(p1, p2, q1, q2):
    def orient(a, b, c):
        v = float((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))
        return (v > 0) - (v < 0)

    return (
        orient(p1, p2, q1) * orient(p1, p2, q2) < 0
        and orient(q1, q2, p1) * orient(q1, q2, p2) < 0
    )


def weighted_area(curve, tol=1e-10):
    """Boundary evaluation of int_D dx dy / (1 - y^2) via x/(1-y^2) dy."""
    if not curve.closed:
        raise ValueError("weighted area needs a closed curve")
    _, pts = curve.sample(512)
    if float(np.max(np.abs(pts[:, 1]))) >= 1.0:
        raise OutOfStrip("curve leaves |y| < 1 where the form is singular")

    def integrand(s):
        y = curve.g(s)
        return curve.f(s) * curve.gp(s) / (1.0 - y * y)

    total = 0.0
    breaks = curve.breakpoints or (0.0, curve.period)
    for a, b in zip(breaks[:-1], breaks[1:]):
        val, _ = quad(integrand, a, b, epsabs=tol, epsrel=1e-12, limit=200)
        total += val
    return total


def build_exact_beta(delta, height_frac=0.9, tol=1e-10, max_len=1e6):
    """Stadium curve with weighted area exactly 2 pi, in the delta-strip.

    Solves for the segment length by bracketed root finding; the thin-strip
    model area(L) ~ 2 L artanh(h) centers the initial bracket."""
    strip = StripSpec(delta)
    if not 0 < height_frac < 1:
        raise ValueError("height_frac in (0, 1) required")
    eps = strip.eps
    h = height_frac * eps

    def area_of(L):
        return weighted_area(stadium_curve(L, h))

    target = 2 * math.pi
    guess = max((target - math.pi * h * h) / (2 * math.atanh(h)), 0.0)
    lo = 0.0
    hi = max(2 * guess, 1.0)
    while area_of(hi) < target:
        hi *= 2.0
        if hi > max_len:
            raise NoBracket("cannot reach weighted area 2 pi with h = %g" % h)
    L = brentq(lambda L_: area_of(L_) - target, lo, hi, xtol=1e-13,
               rtol=8.9e-16)
    curve = stadium_curve(L, h)
    curve.meta.update({"delta": delta, "eps": eps, "height_frac": height_frac})
    area = weighted_area(curve)
    if abs(area - target) > 1e-8:
        raise NoBracket("root finding failed: area residual %g" % (area - target))
    assert winding_number(curve) == 1
    assert_in_strip(curve, eps)
    assert_simple(curve)
    return curve


def verify_exactness(curve, delta=None, n=1000):
    """Residuals of the two exactness conditions of the torus embedding.

    (i) the longitude component of the pulled-back Liouville form vanishes
    pointwise: cosh(artanh g) g - sinh(artanh g) = 0;
    (ii) the meridian period equals 2 pi * winding - weighted area, which
    vanishes exactly on a curve with weighted area 2 pi."""
    eps = curve.meta.get("eps")
    if delta is not None:
        eps = math.tanh(delta)
    if eps is not None:
        assert_in_strip(curve, eps)
    ss = np.linspace(0.0, curve.period, n, endpoint=False)
    worst = 0.0
    for s in ss:
        gv = curve.g(s)
        at = math.atanh(gv)
        worst = max(worst, abs(math.cosh(at) * gv + math.sinh(-at)))

    def integrand(s):
        fv, gv = curve.f(s), curve.g(s)
        fpv, gpv = curve.fp(s), curve.gp(s)
        return -fv * gpv / (1.0 - gv * gv) + (fv * gpv - gv * fpv) / (
            fv * fv + gv * gv
        )

    period = 0.0
    breaks = curve.breakpoints or (0.0, curve.period)
    for a, b in zip(breaks[:-1], breaks[1:]):
        val, _ = quad(integrand, a, b, epsabs=1e-12, epsrel=1e-12, limit=200)
        period += val
    area = weighted_area(curve)
    wind = winding_number(curve)
    return {
        "pointwise_residual": worst,
        "period_residual": period,
        "consistency": abs(period - (2 * math.pi * wind - area)),
        "weighted_area": area,
        "winding": wind,
    }


def tangency_residual(curve, segments, n=400):
    """max |g' f (1 - f^2 - 2 g^2) - f' g (1 - g^2)| over the segments."""
    worst = 0.0
    for a, b in segments:
        for s in np.linspace(a, b, n):
            fv, gv = curve.f(s), curve.g(s)
            fpv, gpv = curve.fp(s), curve.gp(s)
            worst = max(
                worst,
                abs(
                    gpv * fv * (1 - fv * fv - 2 * gv * gv)
                    - fpv * gv * (1 - gv * gv)
                ),
            )
    return worst


def check_cylindrical_ends(curve, end_segments, n=400):
    """Max residual of the end-tangency identity over the declared ends.

    A ray curve is cylindrical at its ends iff it is tangent there to the
    plane field X, equivalently g' f (1 - f^2 - 2g^2) - f' g (1 - g^2) = 0;
    the interior is unconstrained."""
    return tangency_residual(curve, end_segments, n=n)


def plane_field(x, y):
    """The tangency plane field X = x(1-x^2-2y^2) d/dx + y(1-y^2) d/dy."""
    return (x * (1 - x * x - 2 * y * y), y * (1 - y * y))


def integrate_plane_field(start, t_span, rtol=1e-12, atol=1e-14):
    """Trajectory of the plane field (an end-tangent curve)."""

    def rhs(_, p):
        return plane_field(p[0], p[1])

    sol = solve_ivp(rhs, t_span, start, rtol=rtol, atol=atol,
                    dense_output=True)
    if not sol.success:
        raise RuntimeError(sol.message)

    def f(s):
        return float(sol.sol(s)[0])

    def g(s):
        return float(sol.sol(s)[1])

    def fp(s):
        return plane_field(f(s), g(s))[0]

    def gp(s):
        return plane_field(f(s), g(s))[1]

    return PlaneCurve(f=f, g=g, fp=fp, gp=gp, period=None,
                      meta={"family": "flowline", "range": t_span})


def u_shaped_curve(depth, half_width=1.0):
    """Curve equal to (s, 0) for |s| >= half_width, dipping below the origin.

    The dip is a smooth bump of the given depth, so the curve is smooth,
    avoids the origin, and is exactly tangent to the horizontal ends."""
    if depth <= 0:
        raise ValueError("depth > 0 required")
    w = float(half_width)

    def bump(t):
        if abs(t) >= 1.0:
            return 0.0
        return math.exp(1.0 - 1.0 / (1.0 - t * t))

    def bump_p(t):
        if abs(t) >= 1.0:
            return 0.0
        return bump(t) * (-2.0 * t / (1.0 - t * t) ** 2)

    def f(s):
        return s

    def g(s):
        return -depth * bump(s / w)

    def fp(s):
        return 1.0

    def gp(s):
        return -depth * bump_p(s / w) / w

    curve = PlaneCurve(f=f, g=g, fp=fp, gp=gp, period=None,
                       meta={"family": "u-shape", "depth": depth,
                             "half_width": w, "range": (-3 * w, 3 * w)})
    lo, hi = curve.meta["range"]
    ss = np.linspace(lo, hi, 4001)
    vals = np.array([math.hypot(f(s), g(s)) for s in ss])
    # derivative bound |beta'| <= sqrt(1 + (depth*max|bump'|/w)^2) certifies
    # the sampled minimum up to half a step
    slope = math.sqrt(1.0 + (depth * 2.6 / w) ** 2)
    margin = slope * (ss[1] - ss[0]) / 2.0
    if float(vals.min()) - margin <= 0.0:
        raise OriginOnCurve("cannot certify origin avoidance")
    curve.meta["min_radius"] = float(vals.min() - margin)
    return curve
