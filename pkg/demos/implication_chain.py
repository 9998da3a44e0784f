"""For finite groups:
simple => Rhodes-direct prime => monolithic => Tarski prime.
This walks the named zoo and tabulates each condition.

Run:  python3 demos/implication_chain.py
"""

from forge.primeness import implication_audit
from forge.zoo import zoo_groups

rep = implication_audit(zoo_groups(32), zoo_groups(8))

mark = {"Prime": "yes", "NotPrime": "no", "UnknownWithinBound": "?"}
print(f"{'group':14} {'order':>5}  simple  rhodes  monolithic  tarski")
for r in rep.rows:
    print(f"{r.name:14} {r.order:5}  {mark[r.rhodes_semidirect]:6}  {mark[r.rhodes_direct]:6}  "
          f"{'yes' if r.monolithic else 'no':10}  {mark[r.tarski]}")

print("\nviolations:", rep.violations or "none")
for k, names in rep.strictness.items():
    print(f"implication {k} does not reverse, e.g. {', '.join(names[:6])}")
# '?' means the bounded search over pairs from the order <= 8 zoo found no
# witness; such rows are counted as prime when looking for violations.
