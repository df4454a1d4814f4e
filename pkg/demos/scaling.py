"""Work and time as the sequence grows, specialized versus generic.

Run with ``python3 demos/scaling.py`` (about half a minute).
"""

from seqbin.bench import run_bench

# Linear in the total domain size: doubling n doubles the work.
for row in run_bench("increasing_nvalue", [2500, 5000, 10_000, 20_000], [100], reps=3):
    print(f"n={row['n']:>6} d={row['d']} work={row['work']:>10} "
          f"time={row['median_s'] * 1000:7.1f} ms")

# The generic recurrence pays |D(x_i)| * |D(x_i+1)| per pair: doubling d
# roughly quadruples the work.
prev = None
for row in run_bench("increasing_nvalue", [1000], [25, 50, 100, 200], reps=1, specialize=False):
    ratio = "" if prev is None else f"  x{row['work'] / prev:.2f}"
    print(f"generic d={row['d']:>3} work={row['work']:>11}{ratio}")
    prev = row["work"]
