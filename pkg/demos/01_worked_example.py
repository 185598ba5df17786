# %% [markdown]
# # Solving a small beta-acyclic instance by hand and by the solver
#
# Five nodes, four edges.  Nodes 0 and 4 are nest points from the start:
# every edge through them is nested in the next one.

# %%
from betabpo import classify_flips, is_beta_acyclic, reduce, solve
from betabpo.elimination import class_names
from betabpo.instances import worked_example

inst = worked_example()
print(inst.hypergraph.edges)
print(is_beta_acyclic(inst))

# %% [markdown]
# Each elimination step sums the profits along the chain of the removed node
# and labels every position.  The labels decide the new edge profits and,
# later, the value of the removed node.

# %%
reduced = reduce(inst)
for rec in reduced.trace.records:
    if hasattr(rec, "classes"):
        print(rec.node, class_names(rec.classes), "lambda", rec.lam, "offset", rec.offset)
    else:
        print(rec.node, "loops only -> bit", rec.bit, "gain", rec.gain)
print("offsets add up to", reduced.trace.accumulated_offset)

# %%
sol = solve(inst)
sol.assignment, sol.objective  # (1, 1, 1, 0, 1), 8

# %% [markdown]
# The sequence 3, -3, 1, -2, 3, 2: one negative flip at 3, a positive one at 4.

# %%
class_names(classify_flips([3, -3, 1, -2, 3, 2]).classes)
