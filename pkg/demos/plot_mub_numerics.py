"""
Unbiased bases from commuting monomials
=======================================

Each curve fixes a set of d - 1 commuting Pauli monomials. Their shared
eigenbasis is found numerically, and the d + 1 bases from a bundle plus
the two axes are checked for unbiasedness.
"""

from phasemols import build_field, desarguesian_bundle, numeric_unbiasedness
from phasemols.monomials import curve_commuting_set

F = build_field(3, 2)
bundle = desarguesian_bundle(F)

###############################################################################
# Monomials on the first curve

for m in curve_commuting_set(bundle[0]).monomials[:4]:
    print(m.text())

###############################################################################
# Overlap deviation across all bases, for a few dimensions

for p, n in [(2, 1), (3, 1), (2, 2), (2, 3), (3, 2)]:
    r = numeric_unbiasedness(desarguesian_bundle(build_field(p, n)))
    print(f"d={p ** n:2d} bases={r.n_bases:2d} deviation={r.max_overlap_deviation:.1e} passed={r.passed}")
