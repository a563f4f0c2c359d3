"""
The Fano plane, point by point
==============================

Build the (7,3,1) design, look at its incidence matrix, find its
automorphism group and inspect what a single involution fixes.
"""

import numpy as np

from symdesign import DesignParams, make_design, parse_cycles, fixed_structure, lemma_suite
from symdesign.search import automorphism_group

lines = [(1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6)]
fano = make_design(DesignParams(7, 3, 1), lines)   # raises if any axiom fails

N = fano.incidence_matrix()
print(N)
# N N^T = 2I + J is the whole story for a symmetric (7,3,1) design
print(N @ N.T)
assert np.array_equal(N @ N.T, 2 * np.eye(7, dtype=int) + np.ones((7, 7), dtype=int))

aut = automorphism_group(fano)
print("|Aut| =", aut.order, "from", len(aut.generators), "generators")

# an involution fixing the line {1,2,3} pointwise
alpha = parse_cycles("(4 5)(6 7)", 7)
fx = fixed_structure(fano, alpha)
print("fixed points:", sorted(fx.fixed_points))
print("fixed blocks:", fx.block_sets(fano))

report = lemma_suite(fano, alpha, 2)
for entry in report.entries:
    print(f"  {entry.id:38s} applicable={entry.applicable!s:5s} holds={entry.holds}")
