# %% [markdown]
# # How much does nest-point presolve remove on random instances?
#
# 300 nodes, edge sizes drawn with probability proportional to 2^(1-c),
# profits uniform in [-10, 10].  Fewer edges leave more nest points.
# Use more repetitions (the CLI `bench` command defaults to 100) for tighter numbers.

# %%
from betabpo import removal_experiment

rows = removal_experiment([(300, 300), (300, 150), (300, 75)], reps=20, seed=1)
for r in rows:
    print(f"m={r['m']:4d}  removed {r['mean_removed_pct']:6.2f}% of covered nodes "
          f"({r['mean_removed_pct_all']:6.2f}% of all nodes)")

# %% [markdown]
# Timing on a long laminar chain, the worst case for chain lengths.

# %%
import time

from betabpo import solve
from betabpo.instances import laminar_chain

for n in (1000, 2000, 4000):
    t = time.perf_counter()
    solve(laminar_chain(n))
    print(n, f"{time.perf_counter() - t:.2f}s")
