# %% [markdown]
# # Nest points as a presolve step
#
# A general instance usually gets stuck before it is empty.  What is left
# (the core) goes to any exact solver; the trace puts the removed nodes back.

# %%
import numpy as np

from betabpo import brute_force_max, evaluate, lift, reduce
from betabpo.instances import RandomModel, generate

inst = generate(RandomModel(14, 10, seed=11))
reduced = reduce(inst)
core = reduced.core
print(f"removed {len(reduced.trace)} of 14 nodes, core: {core.hypergraph}")

# %%
core_best = brute_force_max(core)
y = {int(v): int(core_best.assignment[v]) for v in reduced.core_nodes}
x = lift(reduced, y)
print(evaluate(inst, x), brute_force_max(inst).objective)

# %% [markdown]
# Any core point, not only the best one, lifts to a point worth its core
# value plus the accumulated offset.

# %%
rng = np.random.default_rng(0)
for _ in range(5):
    y = {int(v): int(rng.integers(2)) for v in reduced.core_nodes}
    print(evaluate(inst, lift(reduced, y)), evaluate(core, y) + reduced.trace.accumulated_offset)
