# Telling the two threefolds apart with divisibility invariants.
#
# On X_phi every class pairs with c2 to a multiple of 6 and has cube divisible
# by 3.  X_T carries a surface F (a blown-up Hirzebruch surface) with
# F.c2 = -4 and F^3 = 8, so the two cannot be homeomorphic.

import random

from cy3.chern import ChernPair, rr_cubic_divisibility
from cy3.models import ExceptionalCombo, distinguish, generator_c2_table, model_x_phi, model_x_t

x_phi, x_t = model_x_phi(), model_x_t()

rng = random.Random(0)
combos = [ExceptionalCombo.random(rng) for _ in range(5)]
table = generator_c2_table(x_phi, combos)
for row in table.rows:
    flag = "ok" if row.divisible else "NOT divisible"
    print(f"{row.family:22s} c2 = {str(row.value):14s} {flag:14s} ({row.source})")
print("all generators divisible by 6:", table.all_divisible)

# Integrality of chi(O(D)) links the two invariants.
print()
for p in (ChernPair(9, -6), ChernPair(-3, 18), ChernPair(8, -4)):
    v = rr_cubic_divisibility(p)
    print(p)
    for step in v.trace:
        print("   ", step)

print()
print(distinguish(x_phi, x_t).verdict)
