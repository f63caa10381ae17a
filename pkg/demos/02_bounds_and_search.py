"""Lower bounds, and checking their sharpness by exhaustive search.

Prints the bound table for two extremal graphs, then searches every
3 x 3 bigraph with multiplicities up to 3 for the smallest count under the
hypotheses X-degree >= 3, Y-degree >= 2 and Hall's Condition.
"""

import time

from bimatch import ClassConstraint, applicable_bounds, construct, find_min_phi, verify_theorem

for family, params in [("G6", {}), ("C", {"n": 4, "t": 1, "b": 0})]:
    G = construct(family, **params).graph
    print(f"\n{family} {params}")
    print(applicable_bounds(G).to_markdown())

c = ClassConstraint(nx=3, ny=3, max_mult=3, hall=True, k_min=3, deltaY_min=2)
t0 = time.perf_counter()
best, witnesses = find_min_phi(c)
print(f"\nminimum over the class: {best}, attained by {[w.tolist() for w in witnesses]}")
print(f"({time.perf_counter() - t0:.2f}s)")

# The same class, checked against the degree-2 bound with equality extraction.
rep = verify_theorem("y2", c)
print(f"y2: {rep.instances_checked} classes, {len(rep.violations)} violations, extremal {rep.extremal}")
