"""
The Hall curve fails the minisquare test
========================================

The curve beta = sigma^5 alpha^3 over GF(9) is additive and invertible,
but its adjacency matrix is not symmetric. The n x n minisquare catches
this without building the full square or any operators.
"""

from phasemols import (adjacency_from_map, build_field, identity_curve,
                       minisquare, minisquare_commutative, standard_ls)
from phasemols.errors import NotCommutative
from phasemols.monomials import curve_commuting_set

F = build_field(3, 2)
hall = adjacency_from_map(F, lambda x: F.mul(5, F.power(x, 3)))
print("gamma:", hall.gamma.tolist(), " invertible:", hall.is_invertible)

###############################################################################
# Minisquare and its trace matrix

ms = minisquare(hall)
print(ms.tolist(), ms.trace_matrix().tolist(), "commutative:", minisquare_commutative(ms))

###############################################################################
# The full square is still Latin

print("latin:", standard_ls(hall).is_latin())

###############################################################################
# Its monomials do not form a commuting set

try:
    curve_commuting_set(hall)
except NotCommutative as exc:
    print("rejected:", exc)

###############################################################################
# Compare with a symmetric curve over the same field

print("identity curve commutative:", minisquare_commutative(minisquare(identity_curve(F))))
