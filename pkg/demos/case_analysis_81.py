"""
Ruling out automorphisms of a hypothetical (81,16,3) design
===========================================================

No (81,16,3) design is known.  Everything below is arithmetic on the
parameters, so it runs in well under a second.
"""

from symdesign import DesignParams, analyze_prime, full_report, pgroup_integrality, commuting_pair

params = DesignParams(81, 16, 3)

# One prime at a time.  The trace records which rule removed which
# candidate number of fixed points.
for p in (5, 7, 11, 13):
    rep = analyze_prime(params, p)
    print(f"p={p:2d}  start {list(rep.candidate_f)}  ->  {rep.verdict}, feasible {list(rep.feasible)}")
    for f, step in sorted(rep.eliminated().items()):
        print(f"        f={f:2d} removed by {step.rule} (value {step.value})")

# Orbit counting on hypothetical p-groups
print(pgroup_integrality(81, 2, 3, {2: 9}).r)   # 18, fine
print(pgroup_integrality(81, 2, 4, {2: 9}).r)   # 27/2, so no (Z_2)^4
print(pgroup_integrality(81, 5, 2, {5: 1}).r)   # 21/5

# Element of order 10: a 5-element fixing one point commuting with an involution fixing nine
print(commuting_pair(81, 5, 2, 1, 9))

report = full_report(params)
print("allowed primes:       ", report.allowed_primes)
print("exponent caps:        ", report.exponent_caps)
print("forbidden elem orders:", report.forbidden_element_orders)
print("uses the outside involution fact:", sorted(report.dependencies))

# Drop the external fact and see what survives
bare = full_report(params, [])
print("without it:           ", bare.forbidden_element_orders)
