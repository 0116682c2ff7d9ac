"""Combinatorics of unitary modules for cyclotomic rational Cherednik algebras.

Exact-rational tools for Littlewood-Richardson expansions of calibrated skew
shapes, graded characters and Ext tables, Betti tables of subspace
arrangements, the abacus poset P(n, k) and the Jack-polynomial map along its
covers.
"""

__version__ = "0.1.0"
