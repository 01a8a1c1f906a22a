"""Minimum variance of size-normalized generalized Laplacians.

For weights ``w >= 0`` with ``sum(w) = m`` the variance of the nonzero
eigenvalues is ``w^T M2 w / (n-1) - (2m/(n-1))^2``, so minimizing it is the
simplex-constrained quadratic program ``min w^T M2 w``.  ``M2`` is positive
definite, so the program has a unique minimizer; two solvers find it:

* :func:`minvar_exact` scans candidate supports and returns the one whose
  restricted Lagrange solution is feasible and stationary;
* :func:`minvar_descent` moves mass between pairs of coordinates until the
  progress measure :func:`eta` drops below a tolerance.

Support sets are tuples of 0-based edge indices.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .errors import ConvergenceError, SolverLimitError
from .graphs import Graph, line_graph_degrees, m2_matrix

log = logging.getLogger(__name__)

EXHAUSTIVE_LIMIT = 20
POSITIVITY_TOL = 1e-10
STATIONARITY_SLACK = 1e-10


@dataclass(frozen=True)
class QPInstance:
    """``min w^T M2 w`` over ``{w >= 0, sum(w) = m}`` for a graph on ``n`` vertices."""

    m2: np.ndarray
    m: int
    n: int
    incident: np.ndarray = field(repr=False)

    @classmethod
    def from_graph(cls, g: Graph) -> "QPInstance":
        if not g.is_connected():
            raise ValueError(f"{g} is not connected")
        M = m2_matrix(g).astype(float)
        return cls(M, g.m, g.n, (M - 4 * np.eye(g.m)) > 0)

    def objective(self, w) -> float:
        w = np.asarray(w, dtype=float)
        return float(w @ self.m2 @ w)

    def variance(self, objective: float) -> float:
        k = self.n - 1
        return objective / k - (2 * self.m / k) ** 2


@dataclass(frozen=True)
class MinVarResult:
    weights: np.ndarray
    support: tuple[int, ...]
    objective: float
    variance: float
    solver: str
    eligible: bool
    iterations: int = 0

    @property
    def boundary(self) -> bool:
        """True when some weight is zero: the infimum is attained only in the closure."""
        return len(self.support) < len(self.weights)

    def to_dict(self) -> dict:
        return {
            "weights": [float(x) for x in self.weights],
            "support": list(self.support),
            "objective": self.objective,
            "variance": self.variance,
            "solver": self.solver,
            "eligible": self.eligible,
            "iterations": self.iterations,
            "boundary": self.boundary,
        }


def _as_instance(q) -> QPInstance:
    return q if isinstance(q, QPInstance) else QPInstance.from_graph(q)


def _spd_solve(A, b):
    c, low = cho_factor(A)
    diag = np.abs(np.diag(c))
    if (diag.max() / diag.min()) ** 2 > 1e8:
        log.warning("M2 submatrix is badly conditioned (estimate %.3g)", (diag.max() / diag.min()) ** 2)
    return cho_solve((c, low), b)


def unconstrained_minimizer(q) -> tuple[np.ndarray, float, bool]:
    """Drop ``w >= 0``: the minimizer is ``k M2^{-1} 1`` with ``k = m / (1^T M2^{-1} 1)``.

    Returns ``(w, objective, eligible)`` where eligible means ``M2^{-1} 1 > 0``.
    """
    q = _as_instance(q)
    x = _spd_solve(q.m2, np.ones(q.m))
    s = x.sum()
    w = q.m * x / s
    return w, q.m**2 / s, bool(np.all(x > POSITIVITY_TOL * np.max(np.abs(x))))


def amv(g: Graph) -> float:
    """Lower bound on the minimum variance from the unconstrained problem."""
    q = QPInstance.from_graph(g)
    _, obj, _ = unconstrained_minimizer(q)
    return q.variance(obj)


def closed_form_line_regular(g: Graph) -> float | None:
    """``m(4+r)/(n-1) - (2m/(n-1))^2`` when the line graph is ``r``-regular, else ``None``."""
    if g.m == 0:
        return None
    r = line_graph_degrees(g)
    if np.any(r != r[0]):
        return None
    k = g.n - 1
    return g.m * (4 + int(r[0])) / k - (2 * g.m / k) ** 2


def path_determinants(k: int) -> list[int]:
    """``d_0..d_k``: determinants of the tridiagonal ``4, 1`` matrices (``d_{j+2} = 4 d_{j+1} - d_j``)."""
    d = [1, 4]
    while len(d) <= k:
        d.append(4 * d[-1] - d[-2])
    return d[: k + 1]


def path_mv_exact(n: int) -> float:
    """Minimum variance of ``P_n`` from the closed form of ``1^T M2^{-1} 1`` (exact rationals)."""
    if n < 2:
        raise ValueError("P_n needs n >= 2")
    m = n - 1
    d = path_determinants(m)
    s = Fraction(m, 6) + Fraction(1, 18) + Fraction(d[m - 1], 18 * d[m]) + Fraction((-1) ** (m - 1), 18 * d[m])
    return float(Fraction(m) / s - 4)


def support_check(q, alpha) -> tuple[bool, np.ndarray | None]:
    """Is ``alpha`` the support of the minimizer?

    Needs ``x = M2[alpha]^{-1} 1 > 0`` and ``M2[rest, alpha] x >= 1``.  On
    success also returns the weights: ``m x / sum(x)`` on ``alpha``, zero elsewhere.
    """
    q = _as_instance(q)
    alpha = np.asarray(sorted(alpha), dtype=int)
    if alpha.size == 0:
        raise ValueError("support must be nonempty")
    x = _spd_solve(q.m2[np.ix_(alpha, alpha)], np.ones(alpha.size))
    if np.any(x <= POSITIVITY_TOL * np.max(np.abs(x))):
        return False, None
    rest = np.setdiff1d(np.arange(q.m), alpha)
    if rest.size and np.any(q.m2[np.ix_(rest, alpha)] @ x < 1 - STATIONARITY_SLACK):
        return False, None
    w = np.zeros(q.m)
    w[alpha] = q.m * x / x.sum()
    return True, w


def candidate_supports(m: int):
    """Nonempty subsets of ``range(m)``: largest first, ascending bitmask within a size."""
    for k in range(m, 0, -1):
        mask = (1 << k) - 1
        while mask < (1 << m):
            yield tuple(i for i in range(m) if mask >> i & 1)
            # next integer with the same popcount (Gosper)
            low = mask & -mask
            ripple = mask + low
            mask = (((ripple ^ mask) >> 2) // low) | ripple


def eligible_supports(q) -> list[tuple[int, ...]]:
    """Every support passing :func:`support_check` (full scan, no early exit)."""
    q = _as_instance(q)
    return [a for a in candidate_supports(q.m) if support_check(q, a)[0]]


def minvar_exact(g: Graph, max_edges: int = EXHAUSTIVE_LIMIT) -> MinVarResult:
    """Exhaustive support search; stops at the first eligible support."""
    q = QPInstance.from_graph(g)
    if q.m > max_edges:
        raise SolverLimitError(
            f"{g} has {q.m} edges, above the exhaustive limit {max_edges}; use minvar_descent"
        )
    _, _, eligible = unconstrained_minimizer(q)
    for alpha in candidate_supports(q.m):
        ok, w = support_check(q, alpha)
        if ok:
            obj = q.objective(w)
            return MinVarResult(w, alpha, obj, q.variance(obj), "exact", eligible)
    raise AssertionError("no eligible support found; M2 is positive definite so this is a bug")


def eta(q, w, exact_step: bool = False) -> float:
    """Progress measure ``max_j min((M2 w)_j - min(M2 w)) / 8, w_j)``; zero only at the minimizer."""
    q = _as_instance(q)
    w = np.asarray(w, dtype=float)
    if w.shape != (q.m,) or np.any(w < 0) or abs(w.sum() - q.m) > 1e-9 * q.m:
        raise ValueError("w is not in the feasible simplex")
    return _eta_step(q, w, exact_step)[0]


def _eta_step(q: QPInstance, w, exact_step):
    grad = q.m2 @ w
    i = int(np.argmin(grad))
    denom = np.where(q.incident[i], 6.0, 8.0) if exact_step else 8.0
    steps = np.minimum((grad - grad[i]) / denom, w)
    j = int(np.argmax(steps))
    return float(steps[j]), i, j


def descent_iterates(q, w0=None, exact_step: bool = False):
    """Yield ``(w, eta)`` before every pairwise step, starting from ``w0`` (default all ones).

    The generator never stops by itself; callers decide when ``eta`` is small enough.
    """
    q = _as_instance(q)
    w = np.ones(q.m) if w0 is None else np.array(w0, dtype=float)
    while True:
        step, i, j = _eta_step(q, w, exact_step)
        yield w, step
        w = w.copy()
        w[i] += step
        w[j] -= step


def minvar_descent(g: Graph, tol: float = 1e-10, max_iter: int = 10**6,
                   exact_step: bool = False) -> MinVarResult:
    """Pairwise coordinate descent on the simplex, starting from the all-ones weighting.

    Each step moves ``eta`` units of weight from coordinate ``j`` to the
    coordinate ``i`` with the smallest gradient entry.  With
    ``exact_step=True`` the step uses the true curvature (6 for incident
    edge pairs) instead of the uniform 8.
    """
    q = QPInstance.from_graph(g)
    _, _, eligible = unconstrained_minimizer(q)
    for it, (w, step) in enumerate(descent_iterates(q, exact_step=exact_step)):
        if step < tol:
            return _descent_result(q, w, eligible, it, tol)
        if it == max_iter:
            break
    best = _descent_result(q, w, eligible, max_iter, tol)
    raise ConvergenceError(f"descent did not reach eta < {tol} in {max_iter} steps", best)


def _descent_result(q, w, eligible, iterations, tol) -> MinVarResult:
    w = w.copy()
    # at degenerate optima a weight can creep toward zero at the scale of tol
    support = tuple(int(k) for k in np.flatnonzero(w > np.sqrt(tol)))
    obj = q.objective(w)
    return MinVarResult(w, support, obj, q.variance(obj), "descent", eligible, iterations)


def var_one(g: Graph) -> float:
    """Variance of the combinatorial Laplacian, from the degree sequence."""
    if not g.is_connected():
        raise ValueError(f"{g} is not connected")
    d = g.degrees()
    k = g.n - 1
    return (2 * g.m + int(np.sum(d**2))) / k - (2 * g.m / k) ** 2


def var_one_upper_bound(g: Graph) -> float:
    """``(m/(n-1)) (n - 2m/(n-1))``, from de Caen's bound on the sum of squared degrees."""
    k = g.n - 1
    return g.m / k * (g.n - 2 * g.m / k)


def minimum_variance(g: Graph, solver: str = "auto", tol: float = 1e-10,
                     exact_step: bool = False, max_edges: int = EXHAUSTIVE_LIMIT,
                     max_iter: int = 10**6) -> MinVarResult:
    """Dispatch to a solver.

    ``auto`` uses the closed form when the line graph is regular (all-ones
    weights are optimal there), the exhaustive scan up to ``max_edges``
    edges, and descent beyond that.
    """
    if solver == "exact":
        return minvar_exact(g, max_edges)
    if solver == "descent":
        return minvar_descent(g, tol, max_iter, exact_step)
    if solver != "auto":
        raise ValueError(f"unknown solver {solver!r}")
    closed = closed_form_line_regular(g) if g.is_connected() else None
    if closed is not None:
        q = QPInstance.from_graph(g)
        w = np.ones(q.m)
        return MinVarResult(w, tuple(range(q.m)), q.objective(w), closed, "closed-form", True)
    if g.m <= max_edges:
        return minvar_exact(g, max_edges)
    return minvar_descent(g, tol, max_iter, exact_step)
