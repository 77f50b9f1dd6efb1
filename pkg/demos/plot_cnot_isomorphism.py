"""
A CNOT gate relabels a complete set of squares
==============================================

A CNOT acts on every curve by congruence. One triple of row, column and
symbol permutations undoes it for the whole bundle at once.
"""

from phasemols import (CnotOp, apply_triple, build_field, cnot_on_curve,
                       cnot_parametric, desarguesian_bundle, linearized_coefficients,
                       nonstandard_ls, perms_standard_to_standard, perms_to_original,
                       standard_ls)
from phasemols.latin import cycles_of

F = build_field(2, 3)
op = CnotOp(1, 2, 1)

###############################################################################
# Transformed curves, as coefficients of the linearized polynomial

for f in desarguesian_bundle(F):
    g = cnot_on_curve(f, op)
    print("lambda", linearized_coefficients(f)[0], "->", linearized_coefficients(g))

###############################################################################
# A single common triple maps every transformed square back

common = perms_standard_to_standard(op, F)
print("rows", cycles_of(common.rows), "cols", cycles_of(common.cols), "symbols", cycles_of(common.syms))
print(all(apply_triple(standard_ls(cnot_on_curve(f, op)), common) == standard_ls(f)
          for f in desarguesian_bundle(F)))

###############################################################################
# The non-standard square is restored by columns and symbols only

f = desarguesian_bundle(F)[0]
back = perms_to_original(op, F)
print(apply_triple(nonstandard_ls(cnot_parametric(f, op)), back) == standard_ls(f))
