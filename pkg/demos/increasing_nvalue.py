"""Increasing_Nvalue: a nondecreasing sequence with exactly N distinct values.

Run with ``python3 demos/increasing_nvalue.py``.
"""

from seqbin import BinRel, CatalogSpec, Domain, Instance, propagate, propagate_catalog
from seqbin import stretch_table
from seqbin.oracle import gac_oracle, solutions

# Two variables over {1, 2}, and we want two distinct values.
x = [Domain([1, 2]), Domain([1, 2])]
out = propagate_catalog(CatalogSpec("increasing_nvalue"), Domain([2]), x)
print("N = 2 forces", [d.tolist() for d in out.x_domains])     # [[1], [2]]

# Under the hood this is SEQ_BIN with C = eq and B = leq: each stretch of
# equal values is one distinct value because the sequence never goes back.
inst = Instance(Domain([1, 2]), x, BinRel("eq"), BinRel("leq"))
for values, k in solutions(inst):
    print(values, "->", k, "stretch(es)")

# The per-value counts: suffix (min, max) and prefix (min, max).
table = stretch_table(inst)
for i in range(inst.n):
    print(f"x[{i}]", table.rows(i))   # value -> (smin, smax, pmin, pmax)

# A longer chain with holes; the propagator agrees with brute force.
inst = Instance(Domain([3]),
                [Domain([1, 4]), Domain([2, 3, 4]), Domain([1, 2, 5]), Domain([3, 5])],
                BinRel("eq"), BinRel("leq"))
fast = propagate(inst)
slow = gac_oracle(inst)
print("propagate:", fast.n_domain.tolist(), [d.tolist() for d in fast.x_domains])
print("oracle:   ", slow[0].tolist(), [d.tolist() for d in slow[1]])
print("passes:", fast.passes, "removed:", fast.removed)
