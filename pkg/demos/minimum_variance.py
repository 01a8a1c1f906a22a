"""
Minimum spectral variance
=========================

With the trace pinned at 2m, the variance of the Laplacian eigenvalues is a
convex quadratic in the edge weights.  Two solvers find its minimum: an exact
scan over supports and a pairwise descent.
"""
import numpy as np

from iepl import amv, graphs, minimum_variance, minvar_descent, minvar_exact, path_mv_exact, var_one

# Closed form on line-regular graphs.
for g in (graphs.complete(5), graphs.cycle(6), graphs.star(5)):
    r = minimum_variance(g)
    print(g, r.solver, round(r.variance, 6))

# Double stars: past pq = 9 the bridge drops out of the optimum.
for p, q in ((2, 4), (3, 3), (3, 4)):
    r = minvar_exact(graphs.double_star(p, q))
    print(f"doublestar {p} {q}: weights {np.round(r.weights, 4)}, boundary={r.boundary}")

# The two solvers agree.
g = graphs.path(8)
a, b = minvar_exact(g), minvar_descent(g)
print(a.variance, b.variance, a.support == b.support)

# Sandwich: amv <= mv <= var with all weights one.
print(amv(g), a.variance, var_one(g))

# Paths creep up towards 2 slowly; the gap is about 2.5/n.
for n in (10, 50, 200, 1000):
    v = path_mv_exact(n)
    print(n, v, (2 - v) * n)
