"""Which B relations admit the linear B-coherence sweep.

Run with ``python3 demos/monotonic_relations.py``.
"""

from seqbin import BinRel, Domain, NonMonotonicError, monotonic_order, prune_b_coherent
from seqbin.oracle import check_monotonic

universe = range(1, 5)
for rel in (BinRel("leq"), BinRel("gt"), BinRel("true"), BinRel("eq"), BinRel("neq"),
            BinRel("abs_leq", cst=1)):
    order = monotonic_order(rel, universe)
    found = order.ordered_values if order else None
    print(f"{rel!r:>12}: order {found}, exhaustive search agrees: "
          f"{check_monotonic(rel, universe)[0] == (order is not None)}")

# A staircase table is monotonic even though it is not a comparison.
stairs = BinRel.table({(3, 1), (3, 2), (3, 4), (1, 2), (1, 4), (2, 4)})
print("staircase:", monotonic_order(stairs, [1, 2, 3, 4]))

# Two sweeps leave only values that extend to a full B-chain.
doms = [Domain([2, 3, 5]), Domain([1, 3]), Domain([0, 3, 4])]
print("leq-coherent:", [d.tolist() for d in prune_b_coherent(doms, BinRel("leq"))])

try:
    prune_b_coherent(doms, BinRel("neq"))
except NonMonotonicError as exc:
    print("neq rejected:", exc)
