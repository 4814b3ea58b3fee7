import math

import pytest

from anosovlab.oracles import disk_weighted_area, stadium_weighted_area_direct
from anosovlab.shapes import (
    NoBracket,
    OriginOnCurve,
    PlaneCurve,
    SelfIntersecting,
    assert_simple,
    build_exact_beta,
    integrate_plane_field,
    rounded_rectangle,
    stadium_curve,
    tangency_residual,
    u_shaped_curve,
    verify_exactness,
    weighted_area,
    winding_number,
)


def _circle(rho, ccw=True):
    s = 1.0 if ccw else -1.0
    return PlaneCurve(
        f=lambda t: rho * math.cos(s * t),
        g=lambda t: rho * math.sin(s * t),
        fp=lambda t: -s * rho * math.sin(s * t),
        gp=lambda t: s * rho * math.cos(s * t) * s,
        period=2 * math.pi,
    )


def test_winding_circle():
    assert winding_number(_circle(0.5)) == 1
    assert winding_number(_circle(0.5, ccw=False)) == -1
    assert winding_number(stadium_curve(3.0, 0.2)) == 1


def test_winding_origin_on_curve():
    bad = PlaneCurve(f=lambda t: math.cos(t) - 1.0, g=lambda t: math.sin(t),
                     fp=lambda t: -math.sin(t), gp=lambda t: math.cos(t),
                     period=2 * math.pi)
    with pytest.raises(OriginOnCurve):
        winding_number(bad)


def test_weighted_area_circle_limit():
    for rho in (0.2, 0.1, 0.05):
        a = weighted_area(stadium_curve(0.0, rho))
        assert abs(a - math.pi * rho * rho) / (math.pi * rho * rho) < rho


def test_weighted_area_vs_direct_2d():
    # Stokes consistency: boundary form against the direct region integral
    for L, h in ((0.0, 0.3), (2.0, 0.4), (5.0, 0.2)):
        boundary = weighted_area(stadium_curve(L, h))
        direct = stadium_weighted_area_direct(L, h)
        assert abs(boundary - direct) < 1e-7
    assert abs(weighted_area(stadium_curve(0.0, 0.3)) -
               disk_weighted_area(0.3)) < 1e-9


def test_weighted_area_orientation():
    c = stadium_curve(1.0, 0.3)
    rev = PlaneCurve(
        f=lambda s: c.f(-s), g=lambda s: c.g(-s),
        fp=lambda s: -c.fp(-s), gp=lambda s: -c.gp(-s),
        period=c.period,
        breakpoints=(0.0,) + tuple(
            sorted((-b) % c.period for b in c.breakpoints if (-b) % c.period > 0)
        ) + (c.period,),
    )
    assert abs(weighted_area(rev) + weighted_area(c)) < 1e-9


def test_thin_rectangle_asymptotics():
    h = 0.95 * math.tanh(0.3)
    W = 40.0
    area = weighted_area(rounded_rectangle(W, h, 0.05 * h))
    assert abs(area - W * 2 * math.atanh(h)) / (W * 2 * math.atanh(h)) < 0.01


def test_self_intersection_detected():
    # figure eight around the origin
    fig8 = PlaneCurve(
        f=lambda t: math.sin(2 * t) + 0.2 * math.cos(t),
        g=lambda t: 0.4 * math.sin(t),
        fp=lambda t: 2 * math.cos(2 * t) - 0.2 * math.sin(t),
        gp=lambda t: 0.4 * math.cos(t),
        period=2 * math.pi,
    )
    with pytest.raises(SelfIntersecting):
        assert_simple(fig8)
    assert_simple(stadium_curve(2.0, 0.3))


def test_build_exact_beta():
    curve = build_exact_beta(0.4, 0.9)
    assert abs(weighted_area(curve) - 2 * math.pi) < 1e-8
    assert winding_number(curve) == 1
    rep = verify_exactness(curve)
    assert rep["pointwise_residual"] < 1e-12
    assert abs(rep["period_residual"]) < 1e-8
    assert rep["consistency"] < 1e-10


def test_build_monotone_in_delta():
    L1 = build_exact_beta(0.3, 0.9).meta["seg_length"]
    L2 = build_exact_beta(0.45, 0.9).meta["seg_length"]
    assert L2 < L1


def test_build_deterministic():
    a = build_exact_beta(0.35, 0.85).meta["seg_length"]
    b = build_exact_beta(0.35, 0.85).meta["seg_length"]
    assert a == b  # bitwise identical root


def test_build_no_bracket():
    with pytest.raises((NoBracket, ValueError)):
        build_exact_beta(0.4, 1.5)


def test_detuned_curve_flags_period():
    from scipy.optimize import brentq

    h = 0.9 * math.tanh(0.4)
    L = brentq(
        lambda L_: weighted_area(stadium_curve(L_, h)) - (2 * math.pi + 0.1),
        0.0, 100.0
    )
    rep = verify_exactness(stadium_curve(L, h))
    assert abs(rep["period_residual"] + 0.1) < 1e-8


def test_tangency_residuals():
    from anosovlab.shapes import check_cylindrical_ends

    line = PlaneCurve(f=lambda s: s, g=lambda s: 0.0,
                      fp=lambda s: 1.0, gp=lambda s: 0.0)
    assert check_cylindrical_ends(line, [(0.5, 4.0)]) == 0.0
    const_y = PlaneCurve(f=lambda s: s, g=lambda s: 0.3,
                         fp=lambda s: 1.0, gp=lambda s: 0.0)
    assert check_cylindrical_ends(const_y, [(0.5, 4.0)]) > 1e-3
    flow = integrate_plane_field([0.05, 0.02], (0.0, 4.0))
    assert check_cylindrical_ends(flow, [(0.0, 4.0)], n=300) < 1e-8
    assert tangency_residual(flow, [(0.0, 4.0)], n=300) == \
        check_cylindrical_ends(flow, [(0.0, 4.0)], n=300)


def test_weighted_area_out_of_strip():
    from anosovlab.shapes import OutOfStrip

    with pytest.raises(OutOfStrip):
        weighted_area(stadium_curve(1.0, 1.2))


def test_strip_spec():
    from anosovlab.shapes import StripSpec

    s = StripSpec(0.4)
    assert 0 < s.eps < 1
    assert abs(s.eps - math.tanh(0.4)) < 1e-15
    with pytest.raises(ValueError):
        StripSpec(0.0)


def test_u_shape():
    u = u_shaped_curve(0.2)
    for s in (1.0, 1.5, 3.0, -1.0, -2.5):
        assert u.point(s) == (s, 0.0)
    assert u.meta["min_radius"] > 0
    assert tangency_residual(u, [(1.0, 3.0), (-3.0, -1.0)]) == 0.0
    assert u.point(0.0)[1] == -0.2
    with pytest.raises(ValueError):
        u_shaped_curve(-1.0)
