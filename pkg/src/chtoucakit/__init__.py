"""Exact-arithmetic toolkit for integer pavings of simplices, secondary
fans, complete homomorphisms, slope polygons and local L-factor algebra.

All core computations are over exact rationals or small finite fields;
floating point is confined to the numeric bound checks in
:mod:`chtoucakit.l_functions`.
"""

VERSION = "chtouca-kit/1"
