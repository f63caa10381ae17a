"""Two small graphs at the edge of the theory, and the normalization step.

The 6-cycle meets the main bound with equality while having no tight set,
and the 2 x 3 graph below has fewer X-matchings than the first line of the
excess-vertex bound would give.  Both are reported by the sweep; the bound
line is gated to |X| >= 3 accordingly.
"""

from bimatch import Bigraph, applicable_bounds, count_max_matchings, normalize_lemma22
from bimatch.search import extremal_structure_reasons

C6 = Bigraph([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
print("C6 count:", count_max_matchings(C6).count, "main bound:", applicable_bounds(C6).get("main").bound)
ok, reasons = extremal_structure_reasons(C6, "main")
print("matches the equality description:", ok)
for line in reasons:
    print("  -", line)

G = Bigraph([[0, 1, 1], [1, 0, 1]])
print("\n2 x 3 graph count:", count_max_matchings(G).count, "(k(t+1) would be 4)")
print("2kt applicable:", applicable_bounds(G).get("2kt").applicable)

# Normalization: each X-vertex ends with one heavy edge and r - 1 simple ones.
K33 = Bigraph([[1, 1, 1], [1, 1, 1], [1, 1, 1]])
H, steps = normalize_lemma22(K33, k=3, r=2)
print("\nK33 ->", H.tolist())
for s in steps:
    print("  ", s)
print("count", count_max_matchings(K33).count, "->", count_max_matchings(H).count)
