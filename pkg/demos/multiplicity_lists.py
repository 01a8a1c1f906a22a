"""
Multiplicity lists on small graphs
==================================

A spectrum 0 < 1 = 1 < 4 has multiplicity list (1, 2, 1).  We count how
often each list turns up for random weights, and build weightings that hit
the rarer ones on purpose.
"""
from collections import Counter

import numpy as np

from iepl import allowed_lists, construct_all_distinct, graphs, star_witness_for_list
from iepl.multiplicity import witness_list
from iepl.spectral import assemble_laplacian, multiplicity_lists

rng = np.random.default_rng(1)

# Random weights almost surely give all-distinct eigenvalues ...
g = graphs.paw()
W = 1 - rng.random((5000, g.m))
ev = np.linalg.eigvalsh(np.stack([assemble_laplacian(g, w) for w in W]))
print(Counter(multiplicity_lists(ev)))

# ... but the catalog lists everything that can occur.
for spec in ("P4", "K1,3", "C4", "paw", "K4-e", "K4"):
    print(f"{spec:5s}", allowed_lists(spec).lists)

# Stars: one witness per admissible list.
for lst in allowed_lists(graphs.star(4)).lists:
    wit = star_witness_for_list(lst)
    print(lst, wit.weights, witness_list(wit))

# Every connected graph has a weighting with n distinct eigenvalues.
wit = construct_all_distinct(graphs.cycle(6))
print(np.round(wit.achieved.values, 4))
