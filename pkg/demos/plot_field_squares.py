"""
Latin squares from curves over a finite field
=============================================

Every additive curve over GF(p^n) becomes a d x d grid. Lines through
the origin give a complete set of mutually orthogonal squares.
"""

# build GF(8) with the default primitive polynomial and its trace-dual basis
import itertools

from phasemols import (are_orthogonal, build_field, desarguesian_bundle,
                       identity_curve, linear_curve, mols_from_bundle, standard_ls)

F = build_field(2, 3)
print("d =", F.d, " theta labels:", F.basis.theta, " c:", F.basis.c)

###############################################################################
# The line beta = sigma * alpha, written as a standard square

square = standard_ls(linear_curve(F, 1))
print(square.to_text())

###############################################################################
# The identity curve gives a symmetric square with a zero diagonal

ident = standard_ls(identity_curve(F)).grid
print("symmetric:", (ident == ident.T).all(), " diagonal:", ident.diagonal())

###############################################################################
# All seven rays through the origin, checked pair by pair

squares = mols_from_bundle(desarguesian_bundle(F)).squares
pairs = list(itertools.combinations(squares, 2))
print(len(squares), "squares,", sum(are_orthogonal(a, b) for a, b in pairs), "of", len(pairs), "pairs orthogonal")
