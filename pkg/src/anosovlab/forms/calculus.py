"""Numeric exterior calculus on coordinate charts.

Forms are stored as coefficient functions on sorted index tuples; the
exterior derivative is taken analytically when the closed-form coefficients
were registered and by central differences otherwise.  All solves reduce to
small dense linear systems at a point.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np
from scipy.stats import qmc


class OutOfDomain(ValueError):
    pass


class SingularSystem(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class Chart:
    """Named coordinates with a sample box; periodic axes are flagged."""

    def __init__(self, name, coords, box, periodic=None):
        self.name = name
        self.coords = tuple(coords)
        self.box = tuple((float(lo), float(hi)) for lo, hi in box)
        self.periodic = tuple(periodic) if periodic else (False,) * len(self.coords)
        if len(self.box) != len(self.coords):
            raise DimensionMismatch("box does not match coordinates")
        for lo, hi in self.box:
            if not lo < hi:
                raise ValueError("degenerate box interval")

    @property
    def dim(self):
        return len(self.coords)

    def sample_points(self, n, seed, margin=0.0):
        """Scrambled-Halton sample of the box, shrunk by margin per axis.

        Periodic axes are not shrunk (coefficients are globally defined
        formulas, so differencing across the nominal period is safe)."""
        eng = qmc.Halton(d=self.dim, scramble=True, seed=seed)
        u = eng.random(n)
        pts = np.empty_like(u)
        for i, (lo, hi) in enumerate(self.box):
            m = 0.0 if self.periodic[i] else margin
            a, b = lo + m, hi - m
            if not a < b:
                raise ValueError("margin swallows the box")
            pts[:, i] = a + u[:, i] * (b - a)
        return pts

    def contains(self, point, margin=0.0):
        for x, (lo, hi), per in zip(point, self.box, self.periodic):
            if per:
                continue
            if not (lo + margin <= x <= hi - margin):
                return False
        return True


class DifferentialForm:
    """Degree-k form: {sorted index tuple: coefficient function}."""

    def __init__(self, chart, degree, comps, d_comps=None, name=""):
        self.chart = chart
        self.degree = int(degree)
        self.comps = {tuple(k): v for k, v in comps.items()}
        self.d_comps = {tuple(k): v for k, v in d_comps.items()} if d_comps else None
        self.name = name
        for idx in self.comps:
            if list(idx) != sorted(idx) or len(set(idx)) != len(idx):
                raise ValueError("indices must be strictly increasing: %r" % (idx,))

    def value(self, point):
        p = np.asarray(point, dtype=float)
        return {idx: f(p) for idx, f in self.comps.items()}

    def has_analytic_d(self):
        return self.d_comps is not None

    def __repr__(self):
        return "DifferentialForm(%s, k=%d on %s)" % (
            self.name or "?",
            self.degree,
            self.chart.name,
        )


class VectorField:
    def __init__(self, chart, comps, name=""):
        self.chart = chart
        self.comps = tuple(comps)
        self.name = name

    def value(self, point):
        p = np.asarray(point, dtype=float)
        return np.array([f(p) for f in self.comps], dtype=float)


def zero_value(dim, degree):
    return {idx: 0.0 for idx in combinations(range(dim), degree)}


def coefficient(value, idx):
    """Coefficient on an arbitrary (possibly unsorted) index tuple."""
    order = tuple(sorted(idx))
    if len(set(idx)) != len(idx):
        return 0.0
    sign = _permutation_sign(idx, order)
    return sign * value.get(order, 0.0)


def _permutation_sign(src, dst):
    src = list(src)
    sign = 1
    for i, want in enumerate(dst):
        j = src.index(want)
        if j != i:
            src[i], src[j] = src[j], src[i]
            sign = -sign
    return sign


def _partial(f, point, axis, h):
    p1 = np.array(point, dtype=float)
    p2 = np.array(point, dtype=float)
    p1[axis] += h
    p2[axis] -= h
    return (f(p1) - f(p2)) / (2.0 * h)


def exterior_derivative(form, point, h=1e-5, force_numeric=False):
    """d(form) at a point: analytic coefficients if registered, else O(h^2)
    central differences.  Returns a (k+1)-form value dict."""
    p = np.asarray(point, dtype=float)
    if not form.chart.contains(p, margin=0.0 if not force_numeric and form.has_analytic_d() else h):
        raise OutOfDomain("point %r too close to the box boundary" % (p,))
    if form.has_analytic_d() and not force_numeric:
        return {idx: f(p) for idx, f in form.d_comps.items()}
    dim = form.chart.dim
    out = {}
    for idx in combinations(range(dim), form.degree + 1):
        total = 0.0
        for pos, j in enumerate(idx):
            rest = idx[:pos] + idx[pos + 1 :]
            f = form.comps.get(rest)
            if f is None:
                continue
            total += (-1) ** pos * _partial(f, p, j, h)
        out[idx] = total
    return out


def wedge(val1, k1, val2, k2, dim):
    """Wedge of two form values (dicts on sorted tuples)."""
    out = zero_value(dim, k1 + k2)
    for i1, c1 in val1.items():
        if c1 == 0.0:
            continue
        for i2, c2 in val2.items():
            if c2 == 0.0 or set(i1) & set(i2):
                continue
            merged = i1 + i2
            target = tuple(sorted(merged))
            out[target] += _permutation_sign(merged, target) * c1 * c2
    return out


def apply_form(value, vectors):
    """Evaluate a k-form value on k vectors."""
    k = len(vectors)
    if k == 0:
        return value.get((), 0.0)
    vs = [np.asarray(v, dtype=float) for v in vectors]
    total = 0.0
    for idx, c in value.items():
        if c == 0.0:
            continue
        mat = np.array([[v[i] for i in idx] for v in vs])
        total += c * np.linalg.det(mat)
    return total


def two_form_matrix(value, dim):
    """Antisymmetric matrix O with O[i, j] = omega(e_i, e_j)."""
    O = np.zeros((dim, dim))
    for (i, j), c in value.items():
        O[i, j] = c
        O[j, i] = -c
    return O


def one_form_vector(value, dim):
    return np.array([value.get((i,), 0.0) for i in range(dim)])


def solve_reeb(alpha, point, h=1e-5, tol_rank=1e-12):
    """Unique R with d(alpha)(R, .) = 0 and alpha(R) = 1 on a 3-chart."""
    if alpha.chart.dim != 3:
        raise DimensionMismatch("Reeb solve needs a 3-dimensional chart")
    p = np.asarray(point, dtype=float)
    dal = exterior_derivative(alpha, p, h)
    O = two_form_matrix(dal, 3)
    a = one_form_vector(alpha.value(p), 3)
    # rows: omega(R, e_j) = (O^T R)_j = 0 and alpha . R = 1
    A = np.vstack([O.T, a])
    b = np.array([0.0, 0.0, 0.0, 1.0])
    R, residual, rank, _ = np.linalg.lstsq(A, b, rcond=None)
    if rank < 3:
        raise SingularSystem("d(alpha) degenerate on ker(alpha) at %r" % (p,))
    if np.linalg.norm(A @ R - b) > 1e-6:
        raise SingularSystem("inconsistent Reeb system at %r" % (p,))
    return R


def solve_liouville(lmbda, point, h=1e-5):
    """Unique X with i_X d(lmbda) = lmbda on a 4-chart."""
    if lmbda.chart.dim != 4:
        raise DimensionMismatch("Liouville solve needs a 4-dimensional chart")
    p = np.asarray(point, dtype=float)
    O = two_form_matrix(exterior_derivative(lmbda, p, h), 4)
    lam = one_form_vector(lmbda.value(p), 4)
    # (i_X omega)(e_j) = omega(X, e_j) = (O^T X)_j
    try:
        X = np.linalg.solve(O.T, lam)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(str(exc)) from exc
    return X


def omega_wedge_omega(lmbda, point, h=1e-5):
    """Top coefficient of d(lmbda) ^ d(lmbda) on a 4-chart."""
    w = exterior_derivative(lmbda, point, h)
    top = wedge(w, 2, w, 2, 4)
    return top[(0, 1, 2, 3)]


def check_nondegenerate(lmbda, samples, h=1e-5):
    """Min |omega ^ omega| coefficient over the sample set."""
    vals = sorted(abs(omega_wedge_omega(lmbda, p, h)) for p in samples)
    return vals[0] if vals else float("nan")


def symplectic_frame(lmbda, theta, X_field, point, h=1e-5):
    """Frame {d/ds, X_s, X, X_theta} trivializing (TV, omega) at a point.

    X_s solves omega(., X_s) = ds; theta is then corrected by
    theta -> theta - theta(X_s) * (i_{d/ds} omega), which kills theta(X_s)
    without touching theta(X); X_theta solves omega(., X_theta) = theta.
    Returns (frame matrix 4x4 rows, pairing matrix, corrected theta vector).
    """
    if lmbda.chart.dim != 4:
        raise DimensionMismatch("frame needs a 4-dimensional chart")
    p = np.asarray(point, dtype=float)
    O = two_form_matrix(exterior_derivative(lmbda, p, h), 4)
    ds = np.array([1.0, 0.0, 0.0, 0.0])
    th = one_form_vector(theta.value(p), 4)
    X = X_field.value(p)
    try:
        # omega(e_j, X_s) = (O X_s)_j = ds_j
        X_s = np.linalg.solve(O, ds)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(str(exc)) from exc
    e_s = np.array([1.0, 0.0, 0.0, 0.0])
    i_es_omega = O.T @ e_s          # (i_{d/ds} omega)(e_j) = omega(e_s, e_j)
    th_corr = th - float(th @ X_s) * i_es_omega
    try:
        X_th = np.linalg.solve(O, th_corr)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(str(exc)) from exc
    frame = np.array([e_s, X_s, X, X_th])
    pairing = np.array([[frame[i] @ (O @ frame[j]) for j in range(4)] for i in range(4)])
    return frame, pairing, th_corr


def jacobian_fd(F, point, h=1e-6):
    p = np.asarray(point, dtype=float)
    cols = []
    for axis in range(len(p)):
        p1, p2 = p.copy(), p.copy()
        p1[axis] += h
        p2[axis] -= h
        cols.append((np.asarray(F(p1), dtype=float) - np.asarray(F(p2), dtype=float)) / (2 * h))
    return np.array(cols).T


def pullback(F, form, point, jac=None, h=1e-6):
    """(F^* form) at a point of the source chart.

    F maps source points to the target chart of `form`; jac may supply an
    analytic Jacobian function, else central differences are used."""
    p = np.asarray(point, dtype=float)
    J = np.asarray(jac(p), dtype=float) if jac is not None else jacobian_fd(F, p, h)
    target_val = form.value(F(p))
    k = form.degree
    n_src = J.shape[1]
    out = zero_value(n_src, k)
    for src_idx in combinations(range(n_src), k):
        total = 0.0
        for tgt_idx, c in target_val.items():
            if c == 0.0:
                continue
            minor = J[np.ix_(tgt_idx, src_idx)]
            total += c * np.linalg.det(minor)
        out[src_idx] = total
    return out


def max_value_deviation(val1, val2):
    keys = set(val1) | set(val2)
    return max(abs(val1.get(k, 0.0) - val2.get(k, 0.0)) for k in keys)


def pullback_check(F, source_form, target_value_fn, samples, jac=None, h=1e-6):
    """max over samples of |F^*(source_form) - target_value_fn(point)|."""
    worst = 0.0
    for p in samples:
        pull = pullback(F, source_form, p, jac=jac, h=h)
        worst = max(worst, max_value_deviation(pull, target_value_fn(p)))
    return worst


def fd_convergence_ratio(form, points, h=1e-3):
    """Ratio of FD-vs-analytic residuals at h and h/2 (expect about 4)."""
    if not form.has_analytic_d():
        raise ValueError("form has no analytic derivative to compare against")

    def residual(step):
        worst = 0.0
        for p in points:
            num = exterior_derivative(form, p, step, force_numeric=True)
            ana = exterior_derivative(form, p)
            worst = max(worst, max_value_deviation(num, ana))
        return worst

    r1, r2 = residual(h), residual(h / 2)
    if r2 == 0.0:
        return float("inf")
    return r1 / r2
