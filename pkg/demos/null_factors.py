"""Null(k) as a direct factor: a small semigroup S that Null(1) does not
divide, a Null(n) it does not divide either, and yet Null(1) divides S x Null(n).

Run:  python3 demos/null_factors.py
"""

from forge.constructors import null_semigroup, square_class_semigroup
from forge.kernel import direct_product
from forge.structure import action_classes, null_factor, null_factor_refusal

kappa = 1

# %% The witness: x_i * x_j = y_0, every other product is z.
s = square_class_semigroup(kappa)
print(f"S = {s.label}, order {s.order}, elements {list(s.names)}")
print(s.table)

# %% Its action classes, and how many products each holds.
ac = action_classes(s)
for members, k in zip(ac.classes, ac.per_class_product_count):
    print(f"  class {[s.name(x) for x in members]}: {k} product element(s)")

# %% Null(1) needs every class of size 2m with at most m products. S fails:
print("Null(1) | S ?", null_factor(s, kappa) is not None)
print("  because", null_factor_refusal(s, kappa).reason)

# %% Null(2) has one class of size 3, not a multiple of 2.
print("Null(1) | Null(2) ?", null_factor(null_semigroup(2), kappa) is not None)

# %% In the product every class triples, and the count works out.
big = direct_product(s, null_semigroup(2))
w = null_factor(big, kappa)
print(f"Null(1) | S x Null(2) ?  {w is not None}  (order {big.order})")
print("  cofactor order", w.left_factor.order, "| isomorphism verified:", w.verify())

# %% So Null(1) divides a product without dividing either factor: it is not
# Tarski-prime. The generic search finds the same pair on its own, given a
# catalog of all semigroups up to order 6 (about half a minute to build):
#
#   from forge.primeness import tarski_falsify_semigroup
#   from forge.enumeration import default_catalog
#   v = tarski_falsify_semigroup(null_semigroup(1), 12, default_catalog(6))
