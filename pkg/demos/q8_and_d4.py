"""Q8 and D4 each live inside the square of the other, although neither is a
subquotient of the other. So neither is prime for direct products.

Run:  python3 demos/q8_and_d4.py
"""

import time

from forge.groups import is_subquotient, monolith
from forge.kernel import direct_product
from forge.primeness import rhodes_direct_prime_group
from forge.zoo import a16_embeddings, a16_group, resolve

q8, d4 = resolve("Q8"), resolve("D4")

# %% The order-16 group A = <x, y | x^4 = y^4 = 1, y x y^-1 = x^-1>.
a = a16_group()
print("A has order", a.order)
for name, e in a16_embeddings().items():
    print(f"  A embeds in {name} x {name}; first projection maps A onto {name}:",
          e.surjection.kind)

# %% Neither group divides the other.
print("Q8 subquotient of D4 ?", is_subquotient(q8, d4) is not None)
print("D4 subquotient of Q8 ?", is_subquotient(d4, q8) is not None)

# %% But the generic search finds each inside the square of the other.
for h, g in ((q8, d4), (d4, q8)):
    t = time.perf_counter()
    w = is_subquotient(h, direct_product(g, g))
    print(f"{h.label} = K/N in {g.label}x{g.label}: |K| = {w.subgroup.order}, "
          f"|N| = {len(w.kernel)}  ({time.perf_counter() - t:.2f}s)")

# %% Both are monolithic, with monolith the centre of order 2.
for g in (q8, d4):
    m = monolith(g)
    print(g.label, "monolith:", [g.name(x) for x in m.members])

# %% The decider turns this into a certified verdict.
v = rhodes_direct_prime_group(q8, [("D4", d4)])
print("Rhodes-direct verdict for Q8 with universe {D4}:", v.verdict)
