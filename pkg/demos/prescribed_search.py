"""
Designs with a prescribed automorphism group
============================================
"""

from symdesign import DesignParams, GroupSpec
from symdesign.search import (cyclic_shift, develop, run_invariant_search,
                              search_difference_sets, automorphism_group)

# Every labelled Fano plane (trivial group): there should be 7!/168 = 30
run = run_invariant_search(DesignParams(7, 3, 1), GroupSpec(7))
print(run.summary())

# Only those invariant under x -> x + 1 mod 7
c7 = GroupSpec(7, (cyclic_shift(7),))
run = run_invariant_search(DesignParams(7, 3, 1), c7)
for d in run.designs:
    print(d.block_sets())

# same two designs, developed from the 14 difference sets
ds = search_difference_sets(7, 3, 1)
print(len(ds), "difference sets ->", len({develop(s, 7) for s in ds}), "designs")

# (13,4,1) is the projective plane of order 3
run = run_invariant_search(DesignParams(13, 4, 1), GroupSpec(13, (cyclic_shift(13),)))
print(len(run.designs), "cyclic planes of order 3;", run.nodes, "nodes")
print("|Aut| of the first:", automorphism_group(run.designs[0]).order)   # 5616
