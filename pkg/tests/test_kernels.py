"""Compiled kernel vs pure-Python kernel equivalence."""

import random

import pytest

from anosovlab.chords import _kernels, _kernels_py
from anosovlab.chords import cone_spec, _integerized_edges
from anosovlab.toral import eigen_data, parse_matrix

try:
    from anosovlab.chords import _speedups
except ImportError:
    _speedups = None

needs_ext = pytest.mark.skipif(_speedups is None,
                               reason="compiled kernel not built")


def _cases():
    rng = random.Random(7)
    out = []
    for mat in ("2 1 1 1", "3 1 2 1", "5 2 2 1"):
        H = eigen_data(parse_matrix(mat))
        for sign in (+1, -1):
            coeffs = _integerized_edges(cone_spec(H, sign))
            den = rng.choice([1, 5, 12])
            rxn = rng.randint(-den + 1, den - 1)
            ryn = rng.randint(-den + 1, den - 1)
            out.append((coeffs, H.D, den, rxn, ryn, rng.randint(3, 15)))
    return out


@needs_ext
def test_kernels_agree():
    for coeffs, D, den, rxn, ryn, kmax in _cases():
        c1, p1 = _speedups.enumerate_box(coeffs, D, den, rxn, ryn, kmax, True)
        c2, p2 = _kernels_py.enumerate_box(coeffs, D, den, rxn, ryn, kmax, True)
        assert list(c1) == list(c2)
        assert sorted(p1) == sorted(p2)


def test_counts_only_mode():
    coeffs, D, den, rxn, ryn, kmax = _cases()[0]
    c1, p1 = _kernels_py.enumerate_box(coeffs, D, den, rxn, ryn, kmax, False)
    c2, p2 = _kernels_py.enumerate_box(coeffs, D, den, rxn, ryn, kmax, True)
    assert p1 is None and list(c1) == list(c2)


def test_dispatcher_falls_back_on_big_inputs():
    # coefficients past the machine-word guard must route to pure Python
    big = 2**70
    coeffs = (big, 0, 0, 1, 1, 0, 0, big)
    counts, pts = _kernels.enumerate_box(coeffs, 5, 1, 0, 0, 3, True)
    ref, ref_pts = _kernels_py.enumerate_box(coeffs, 5, 1, 0, 0, 3, True)
    assert list(counts) == list(ref)
    assert sorted(pts) == sorted(ref_pts)


def test_qsign_pure():
    from anosovlab.chords._kernels_py import _qsign

    assert _qsign(0, 0, 5) == 0
    assert _qsign(3, 0, 5) == 1
    assert _qsign(0, -2, 5) == -1
    assert _qsign(-3, 2, 2) == -1   # 9 > 8
    assert _qsign(3, -2, 2) == 1
    assert _qsign(-2, 1, 3) == -1   # 4 > 3
    assert _qsign(2, -1, 5) == -1   # 4 < 5
