"""
Counting orbits with fixed points
=================================

Cauchy-Frobenius: orbits = average number of fixed points.
"""

from fractions import Fraction

from symdesign import GroupSpec, group_closure, burnside, burnside_from_counts, orbits

g = GroupSpec.of(7, "(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)")   # the Frobenius group of order 21
elems = group_closure(g)
print(len(elems), "elements")
res = burnside(elems)
print(res.orbit_count, "orbit(s);", orbits(g))

# The same count from a class list (multiplicity, fixed points)
print(burnside_from_counts([(1, 7), (6, 0), (14, 1)]).orbit_count)

# A non-integral average means the hypothesised action cannot exist
print(burnside_from_counts([(1, 81), (24, 1)]))   # group of order 25 on 81 points
assert burnside_from_counts([(1, 81), (24, 1)]).orbit_count == Fraction(21, 5)
