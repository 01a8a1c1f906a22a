"""
Which spectra can a weighted graph have?
========================================

Start from a target list 0 = l1 < l2 <= ... <= ln and ask whether some
positive edge weighting of a fixed graph has exactly that Laplacian spectrum.
"""
import numpy as np

from iepl import check_star, check_three_distinct, graphs, realize_kn, realize_star, realize_three_distinct
from iepl.spectral import assemble_laplacian

# Stars: a sign test on one polynomial decides everything.
print(check_star([0, 1, 3]), check_star([0, 1, 2.9]))   # P3 needs l3 >= 3 l2

# Round trip: weights -> spectrum -> weights.
w = np.array([0.5, 1.0, 2.0, 2.0])
lam = np.linalg.eigvalsh(assemble_laplacian(graphs.star(4), w))
lam[0] = 0.0
wit = realize_star(lam)
print("recovered star weights", wit.weights)
print("spectrum error", wit.spectrum_error(lam))

# Complete graphs take any target; the witness is built by repeated joins.
target = [0, 0.3, 0.31, 2.0, 7.5]
wit = realize_kn(target)
print(np.round(wit.matrix, 4))
print("error", wit.spectrum_error(target))

# Three distinct eigenvalues {0, lam, lam, mu} on the 4-vertex graphs, lam = 1.
# One character per mu on a grid over (0, 5]: '#' realizable, '.' not.
grid = np.arange(1, 61) / 12 + 1e-3
for fam in ("paw", "C4", "K4-e"):
    strip = "".join("#" if check_three_distinct(fam, 1.0, mu) else "." for mu in grid)
    print(f"{fam:5s} {strip}")

# the C4 boundary point mu = 2 is reached by equal weights
print(realize_three_distinct("C4", 1.0, 2.0).weights)
