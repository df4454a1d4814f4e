"""Change and Smooth through SEQ_BIN, and where filtering stops being exact.

Run with ``python3 demos/change_and_smooth.py``.
"""

import numpy as np

from seqbin import BinRel, CatalogSpec, Domain, propagate_catalog, to_seqbin
from seqbin.oracle import check_counting_continuous, compare, gac_oracle

rng = np.random.default_rng(4)

# Change(N, X, <): N counts the increases. It is SEQ_BIN(N + 1, X, >=, true).
spec = CatalogSpec("change", ctr=BinRel("lt"))
x = [Domain([1, 3]), Domain([2, 5]), Domain([1, 4])]
out = propagate_catalog(spec, Domain([2]), x)
print("two increases:", [d.tolist() for d in out.x_domains])

ref = to_seqbin(spec, Domain([2]), x)
print("reformulated C:", ref.instance.c_rel, " B:", ref.instance.b_rel, " offset:", ref.offset)

# Smooth(N, X, 1): N counts the steps |x_i - x_{i+1}| > 1.
smooth = CatalogSpec("smooth", cst=1)
x = [Domain([0, 5]), Domain([1, 2, 9]), Domain([3])]
out = propagate_catalog(smooth, Domain([0]), x)
print("no big step:", out.status, "-", out.message)   # x[0] is 2 away from everything
out = propagate_catalog(smooth, Domain([1]), x)
print("one big step:", out.status, [d.tolist() for d in out.x_domains])

# Change with = is not counting-continuous: flipping one value can move
# the count by two, so the one-pass filter can miss an unsupported value.
ok, w = check_counting_continuous(to_seqbin(CatalogSpec("change", ctr=BinRel("eq")),
                                            Domain([0]), [Domain([1, 2])] * 3).instance)
print("continuous?", ok, f"- {list(w.values)} with x[{w.position}] = {w.new_value}",
      f"goes from {w.old_count} to {w.new_count} neq-stretches")

# Count how often that happens on small random instances.
tally = {"EQUAL": 0, "SOUND-SUPERSET": 0, "UNSOUND": 0}
eq_change = CatalogSpec("change", ctr=BinRel("eq"))
for _ in range(300):
    xs = [Domain(np.flatnonzero(rng.random(4) < 0.7)) for _ in range(4)]
    xs = [d if len(d) else Domain([0]) for d in xs]
    n_dom = Domain(np.flatnonzero(rng.random(4) < 0.5))
    if n_dom.is_empty():
        continue
    ref = to_seqbin(eq_change, n_dom, xs)
    got = propagate_catalog(eq_change, n_dom, xs)
    want = gac_oracle(ref.instance)
    want = None if want is None else (want[0].shift(-1), want[1])
    verdict, _ = compare((got.n_domain, got.x_domains) if got.ok else None, want)
    tally[verdict] += 1
print("change(=) vs oracle:", tally)
