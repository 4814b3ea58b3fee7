"""Kernel selection: compiled extension when available and safe, else pure.

Set ANOSOVLAB_PURE=1 to force the Python kernel (used by the equivalence
tests and the benchmark).  The compiled kernel is only dispatched when a
conservative bound guarantees its 64/128-bit arithmetic cannot overflow;
otherwise the big-int path runs regardless of availability.
"""

import os

from . import _kernels_py

try:
    from . import _speedups
except ImportError:  # extension not built
    _speedups = None

_FORCE_PURE = os.environ.get("ANOSOVLAB_PURE", "") not in ("", "0")

BACKEND = "python" if (_speedups is None or _FORCE_PURE) else "cython"

# |p|, |q| in the sign test are bounded by (sum of |edge coeffs|) * max|W|;
# the compiled kernel squares them in __int128, so keep p, q below 2^62 and
# q^2 * D below 2^126.
_I64_GUARD = 2 ** 59


def _fits_machine(coeffs, D, den, rxn, ryn, kmax):
    max_w = den * kmax + max(abs(rxn), abs(ryn))
    cmax = max(abs(c) for c in coeffs)
    return cmax * max_w * 2 < _I64_GUARD and D < 2 ** 8


def enumerate_box(coeffs, D, den, rxn, ryn, kmax, want_points=True):
    if (
        _speedups is not None
        and not _FORCE_PURE
        and _fits_machine(coeffs, D, den, rxn, ryn, kmax)
    ):
        return _speedups.enumerate_box(coeffs, D, den, rxn, ryn, kmax, want_points)
    return _kernels_py.enumerate_box(coeffs, D, den, rxn, ryn, kmax, want_points)
