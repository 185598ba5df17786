# %% [markdown]
# # Max-Cut as an alpha-acyclic instance
#
# Pair edges cost -2w, each node earns its weighted degree, and one extra
# edge covering every node makes the hypergraph alpha-acyclic.  It is not
# beta-acyclic once the graph has a cycle, so the solver refuses it.

# %%
import itertools

import numpy as np

from betabpo import NotBetaAcyclic, evaluate, from_maxcut, is_alpha_acyclic, is_beta_acyclic, solve
from betabpo.instances import random_graph

g = random_graph(6, 0.6, np.random.default_rng(4))
inst = from_maxcut(g)
print(is_alpha_acyclic(inst).acyclic, is_beta_acyclic(inst).acyclic)

# %%
assert all(evaluate(inst, list(x)) == g.cut_value(x) for x in itertools.product((0, 1), repeat=6))
try:
    solve(inst)
except NotBetaAcyclic as exc:
    print(exc)
