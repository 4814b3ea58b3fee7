import math

import numpy as np
import pytest

from anosovlab.forms import (
    DimensionMismatch,
    check_nondegenerate,
    coefficient,
    exterior_derivative,
    fd_convergence_ratio,
    max_value_deviation,
    pullback,
    run_suite,
    solve_liouville,
    solve_reeb,
    symplectic_frame,
    wedge,
)
from anosovlab.forms.calculus import Chart, DifferentialForm, OutOfDomain
from anosovlab.forms.library import (
    ALPHA_CAN_FERMI,
    ALPHA_PLUS,
    ALPHA_PRE_FERMI,
    ANOSOV_TB,
    LAMBDA_DS,
    LAMBDA_MCDUFF,
    LAMBDA_TB,
    REEB_CAN_FERMI,
    REEB_PRE_FERMI,
    TB4,
    THETA_TB,
    X0_TB,
    X_LAMBDA_MCDUFF,
    fermi_to_halfplane_point,
    psi0_map,
    ALPHA_PRE_H,
)


def test_d_of_constant_form_vanishes():
    chart = Chart("flat", ("x", "y", "z"), [(-1, 1)] * 3)
    dx = DifferentialForm(chart, 1, {(0,): lambda p: 1.0})
    val = exterior_derivative(dx, np.zeros(3))
    assert all(abs(v) < 1e-9 for v in val.values())


def test_d_exponential_coefficient():
    val = exterior_derivative(ALPHA_PLUS, np.array([0.3, 0.4, 0.0]))
    # dz ^ dx coefficient of d(e^z dx) is e^z = 1 at z = 0
    assert abs(coefficient(val, (2, 0)) - 1.0) < 1e-9


def test_d_squared_random_smooth():
    chart = Chart("flat", ("x", "y", "z"), [(-1, 1)] * 3)
    form = DifferentialForm(
        chart, 1, {(0,): lambda p: math.sin(p[1]) * math.exp(0.3 * p[2])}
    )
    rng = np.random.default_rng(7)
    for _ in range(10):
        p = rng.uniform(-0.5, 0.5, 3)
        dform_comps = exterior_derivative(form, p, 1e-4, force_numeric=True)
        dd = DifferentialForm(
            chart, 2,
            {
                idx: (lambda q, i=idx: exterior_derivative(
                    form, q, 1e-4, force_numeric=True)[i])
                for idx in dform_comps
            },
        )
        val = exterior_derivative(dd, p, 1e-4, force_numeric=True)
        assert all(abs(v) < 1e-6 for v in val.values())


def test_out_of_domain():
    chart = Chart("flat", ("x",), [(-1, 1)])
    form = DifferentialForm(chart, 0, {(): lambda p: p[0] ** 2})
    with pytest.raises(OutOfDomain):
        exterior_derivative(form, np.array([0.9999999]), 1e-5,
                            force_numeric=True)


def test_reeb_closed_forms():
    p = np.array([0.1, 0.7, -0.3])
    from anosovlab.forms.library import REEB_PLUS

    assert np.max(np.abs(solve_reeb(ALPHA_PLUS, p) - REEB_PLUS.value(p))) < 1e-8
    q = np.array([0.3, 0.4, 0.0])
    assert np.max(np.abs(solve_reeb(ALPHA_PLUS, q) - [0.5, 0.5, 0.0])) < 1e-9
    r = np.array([0.0, 0.5, 1.0])
    assert np.max(np.abs(solve_reeb(ALPHA_PRE_FERMI, r) - REEB_PRE_FERMI.value(r))) < 1e-9
    assert np.max(np.abs(solve_reeb(ALPHA_CAN_FERMI, r) - REEB_CAN_FERMI.value(r))) < 1e-8
    # alpha(R) = 1 by construction
    val = ALPHA_CAN_FERMI.value(r)
    R = solve_reeb(ALPHA_CAN_FERMI, r)
    pairing = sum(val.get((i,), 0.0) * R[i] for i in range(3))
    assert abs(pairing - 1.0) < 1e-10


def test_liouville_closed_forms():
    p0 = np.array([0.0, 0.2, 0.3, 0.1])
    X = solve_liouville(LAMBDA_TB, p0)
    assert np.max(np.abs(X - [0.0, 0.0, 0.0, -1.0])) < 1e-9
    p1 = np.array([1.0, 0.2, 0.3, 0.1])
    X1 = solve_liouville(LAMBDA_TB, p1)
    assert np.max(np.abs(X1 - [math.tanh(2), 0, 0, -1 / math.cosh(2)])) < 1e-8
    assert np.max(np.abs(X1 - X0_TB.value(p1))) < 1e-8
    pm = np.array([0.4, 0.2, -0.5, 1.1])
    XM = solve_liouville(LAMBDA_MCDUFF, pm)
    assert np.max(np.abs(XM - X_LAMBDA_MCDUFF.value(pm))) < 1e-8


def test_liouville_defining_residual():
    rng = np.random.default_rng(3)
    from anosovlab.forms.calculus import one_form_vector, two_form_matrix

    for _ in range(50):
        p = np.array([rng.uniform(-0.8, 0.8), rng.uniform(0, 1),
                      rng.uniform(0, 1), rng.uniform(-0.8, 0.8)])
        X = solve_liouville(LAMBDA_TB, p)
        O = two_form_matrix(exterior_derivative(LAMBDA_TB, p), 4)
        lam = one_form_vector(LAMBDA_TB.value(p), 4)
        assert np.max(np.abs(O.T @ X - lam)) < 1e-9


def test_nondegeneracy_and_control():
    pts = TB4.sample_points(100, 7, margin=1e-4)
    assert check_nondegenerate(LAMBDA_TB, pts) > 1e-6
    assert check_nondegenerate(LAMBDA_DS, pts[:20]) < 1e-12


def test_frame_relations():
    p = np.array([0.0, 0.3, 0.6, 0.2])
    frame, pairing, th_corr = symplectic_frame(LAMBDA_TB, THETA_TB, ANOSOV_TB, p)
    assert abs(pairing[0, 1] - 1.0) < 1e-9    # omega(d/ds, X_s) = 1
    assert abs(pairing[2, 3] - 1.0) < 1e-9    # omega(X, X_theta) = theta(X)
    assert abs(th_corr @ frame[1]) < 1e-12    # corrected theta kills X_s
    assert abs(np.linalg.det(pairing)) > 1e-6


def test_pullback_fermi_halfplane():
    p = np.array([0.4, -0.2, 1.3])
    pull = pullback(fermi_to_halfplane_point, ALPHA_PRE_H, p)
    assert max_value_deviation(pull, ALPHA_PRE_FERMI.value(p)) < 1e-8


def test_psi0_spot_values():
    img = psi0_map(np.array([0.0, 0.1, 0.2, 0.5]))
    assert abs(img[2]) < 1e-15                      # sinh(0) = 0
    assert abs(img[3] - math.exp(0.5)) < 1e-12


def test_psl2_invariance_op():
    from anosovlab.forms import psl2_invariance
    from anosovlab.forms.library import FERMI3, HALFPLANE3

    ptsh = HALFPLANE3.sample_points(100, 3, margin=1e-4)
    ptsf = FERMI3.sample_points(100, 3, margin=1e-4)
    assert psl2_invariance(ALPHA_PRE_H, "T", ptsh, tau=0.8) < 1e-9
    assert psl2_invariance(ALPHA_CAN_FERMI, "S", ptsf) < 1e-8
    assert psl2_invariance(ALPHA_PRE_H, "identity", ptsh[:20]) < 1e-12
    with pytest.raises(ValueError):
        psl2_invariance(ALPHA_PRE_H, "Q", ptsh)


def test_fd_convergence_ratio():
    pts = TB4.sample_points(20, 5, margin=1e-3)
    ratio = fd_convergence_ratio(LAMBDA_TB, pts)
    assert 3.5 <= ratio <= 4.5


def test_wedge_antisymmetry():
    v1 = {(0,): 2.0, (1,): -1.0}
    v2 = {(1,): 3.0, (2,): 1.0}
    w12 = wedge(v1, 1, v2, 1, 3)
    w21 = wedge(v2, 1, v1, 1, 3)
    for k in w12:
        assert abs(w12[k] + w21[k]) < 1e-15


def test_geiges_spot_value():
    # alpha_+ ^ d alpha_+ = 2 dx^dy^dz at the origin of the torus chart
    p = np.zeros(3)
    vp = ALPHA_PLUS.value(p)
    dp = exterior_derivative(ALPHA_PLUS, p)
    top = wedge(vp, 1, dp, 2, 3)[(0, 1, 2)]
    assert abs(top - 2.0) < 1e-12
    # bilinearity: scaling alpha by 2 scales the volume by 4
    vp2 = {k: 2 * v for k, v in vp.items()}
    dp2 = {k: 2 * v for k, v in dp.items()}
    assert abs(wedge(vp2, 1, dp2, 2, 3)[(0, 1, 2)] - 4.0 * top) < 1e-10


def test_reeb_requires_3d():
    with pytest.raises(DimensionMismatch):
        solve_reeb(LAMBDA_TB, np.zeros(4))


def test_all_suites_pass_small():
    for suite in ("torus-bundle", "mcduff-fermi", "mcduff-halfplane", "covers"):
        checks = run_suite(suite, samples=150, tol=1e-8, seed=11)
        assert all(c["pass"] for c in checks), [c for c in checks if not c["pass"]]
