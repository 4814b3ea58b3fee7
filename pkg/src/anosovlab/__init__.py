"""Computational toolkit for Anosov Liouville domains.

Subpackages split along the two kinds of arithmetic in play:

* exact integer / quadratic-irrational combinatorics (``exact``, ``toral``,
  ``chords``, ``homology``, ``surface``) where every decision is made over
  ``int`` / ``Fraction`` and no sign test touches floating point;
* floating-point verification of closed-form differential geometry
  (``forms``, ``hyperbolic``, ``shapes``) with explicit tolerances.
"""

__version__ = "0.1.0"

DEFAULT_SEED = 7
