"""Realizability tests and witness constructions for the solved graph families.

A target is an ascending sequence ``0 = l_1 < l_2 <= ... <= l_n``.  Each
``realize_*`` function returns a :class:`RealizationWitness`: the edge weights,
the generalized Laplacian they assemble to, and its computed spectrum.

Three-distinct targets ``{0, lam^(n-2), mu}`` always treat ``lam`` as the
repeated eigenvalue and ``mu`` as the simple one, whichever is larger.  So
the paw witness with spectrum ``{0, 2, 8, 8}`` is ``lam=8, mu=2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import graphs
from .errors import NotRealizableError, NumericalError, UnsupportedFamilyError
from .graphs import Family, Graph, family_of
from .spectral import Spectrum, assemble_laplacian, spectrum_of

SIGN_SLACK = 1e-12
# relative spectrum error accepted from a star weighting
STAR_SPECTRUM_TOL = 1e-10
# target values this close (relative) are treated as one repeated value
GROUP_TOL = 1e-9
# |f(-l)| below this (relative) marks l as a double weight
DOUBLE_WEIGHT_TOL = 1e-8
SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class RealizationWitness:
    graph: Graph
    weights: np.ndarray
    matrix: np.ndarray
    achieved: Spectrum

    def spectrum_error(self, target) -> float:
        return float(np.max(np.abs(self.achieved.values - np.asarray(target, dtype=float))))

    def to_dict(self) -> dict:
        return {
            "graph": {"n": self.graph.n, "edges": [list(e) for e in self.graph.edges]},
            "weights": [float(x) for x in self.weights],
            "matrix": [[float(x) for x in row] for row in self.matrix],
            "spectrum": self.achieved.to_list(),
        }


def _witness(g: Graph, w) -> RealizationWitness:
    w = np.asarray(w, dtype=float)
    L = assemble_laplacian(g, w)
    return RealizationWitness(g, w, L, spectrum_of(L))


def witness_from_matrix(g: Graph, A, tol: float = 1e-9) -> RealizationWitness:
    """Read edge weights off a generalized Laplacian, checking its sign pattern."""
    A = np.asarray(A, dtype=float)
    scale = max(1.0, float(np.max(np.abs(A))))
    adj = g.adjacency_matrix().astype(bool)
    off = ~np.eye(g.n, dtype=bool)
    if np.max(np.abs(A[off & ~adj]), initial=0.0) > tol * scale:
        raise NumericalError("nonzero entry on a non-edge")
    w = np.array([-A[i - 1, j - 1] for i, j in g.edges])
    if np.any(w <= 0):
        raise NumericalError("edge entry is not strictly negative")
    return _witness(g, w)


def as_target(values) -> np.ndarray:
    """Validate ``{0, l_2, ..., l_n}``: leading exact zero, positive, ascending."""
    lam = np.asarray(values, dtype=float).reshape(-1)
    if lam.size < 2:
        raise ValueError("a target spectrum needs at least two values")
    if lam[0] != 0.0:
        raise ValueError("a target spectrum must start with 0")
    if np.any(lam[1:] <= 0):
        raise ValueError("nonzero eigenvalues must be positive")
    if np.any(np.diff(lam) < 0):
        raise ValueError("target spectrum must be ascending")
    return lam


# --- stars ------------------------------------------------------------------

def elementary_symmetric(values) -> np.ndarray:
    """``sigma_0 .. sigma_k`` of ``values``, read off the coefficients of ``prod(x + v)``."""
    coeffs = np.array([1.0])
    for v in np.asarray(values, dtype=float).reshape(-1):
        nxt = np.append(coeffs, 0.0)
        nxt[1:] += v * coeffs
        coeffs = nxt
    return coeffs


def star_polynomial(values) -> np.ndarray:
    """Coefficients ``s_k = sigma_k / (k+1)`` of the star polynomial, highest degree first.

    ``values`` are the nonzero eigenvalues ``l_2..l_n``.  A weighting of the
    star realizes them exactly when the weights are the negated roots.
    """
    sigma = elementary_symmetric(values)
    return sigma / np.arange(1, len(sigma) + 1)


def check_star(target) -> bool:
    """Sign test on ``f(-l_k)`` for ``k = 2..n-1``; non-strict with a small slack."""
    lam = as_target(target)
    n = len(lam)
    if n <= 2:
        return True
    pos = lam[1:] / lam[-1]
    s = star_polynomial(pos)
    for k in range(2, n):
        x = -pos[k - 2]
        # slack relative to the size of the terms being summed, not to max|s|:
        # for small x the value f(x) is itself tiny
        slack = SIGN_SLACK * np.polyval(np.abs(s), abs(x))
        if (-1) ** k * np.polyval(s, x) > slack:
            return False
    return True


def realize_star(target) -> RealizationWitness:
    """Weights of ``K_{1,n-1}`` realizing ``target``: the negated roots of the star polynomial.

    Multiple roots are where plain root finding breaks down, but their location
    is known: a weight of multiplicity ``r`` is itself an eigenvalue of
    multiplicity ``r - 1``, and the remaining eigenvalues never coincide with a
    weight.  So a target value of multiplicity ``k >= 2`` is a weight of
    multiplicity ``k + 1``, and a simple target value with ``f(-l) ~ 0`` is a
    double weight.  Those factors are divided out before taking roots.
    """
    lam = as_target(target)
    if not check_star(lam):
        raise NotRealizableError(f"{lam.tolist()} fails the star sign test")
    n = len(lam)
    g = graphs.star(n - 1)
    if n == 2:
        return _witness(g, [lam[1] / 2])
    scale = lam[-1]
    pos = lam[1:] / scale
    s = star_polynomial(pos)
    best, best_err = None, np.inf
    for w in _star_candidates(s, pos):
        if len(w) != n - 1 or not np.all(np.isfinite(w)) or np.any(w <= 0):
            continue
        ev = np.linalg.eigvalsh(assemble_laplacian(g, w))
        err = float(np.max(np.abs(ev[1:] - pos)))
        if err < best_err:
            best, best_err = w, err
    if best is None or best_err > STAR_SPECTRUM_TOL:
        raise NumericalError(f"star weights reproduce the target only to {best_err:.3g} (relative)")
    return _witness(g, np.sort(best) * scale)


def _value_groups(pos):
    """Runs of (relatively) equal values as ``(mean, count)`` pairs."""
    groups = [[pos[0]]]
    for x in pos[1:]:
        if x - groups[-1][-1] <= GROUP_TOL * x:
            groups[-1].append(x)
        else:
            groups.append([x])
    return [(float(np.mean(gr)), len(gr)) for gr in groups]


def _star_candidates(s, pos):
    # plain roots first; fine whenever the weights are well separated
    yield -np.array([_newton(s, r) for r in np.roots(s).real])
    forced, optional = [], []
    for x, k in _value_groups(pos[:-1]):
        if k >= 2:
            forced += [x] * (k + 1)
        else:
            f = abs(np.polyval(s, -x)) / np.polyval(np.abs(s), x)
            if f <= DOUBLE_WEIGHT_TOL:
                optional.append((f, x))
    optional = [x for _, x in sorted(optional)]
    for j in range(len(optional) + 1):
        known = forced + [x for x in optional[:j] for _ in (0, 1)]
        if not known or len(known) > len(s) - 1:
            continue
        q, _ = np.polydiv(s, elementary_symmetric(known))
        rest = -np.array([_newton(q, r, steps=3) for r in np.roots(q).real]) if len(q) > 1 else np.zeros(0)
        yield np.concatenate((known, rest))


def _newton(c, x, steps=1):
    dc = np.polyder(c)
    for _ in range(steps):
        d = np.polyval(dc, x)
        if d == 0:
            break
        cand = x - np.polyval(c, x) / d
        if abs(np.polyval(c, cand)) >= abs(np.polyval(c, x)):
            break
        x = cand
    return x


# --- P3 -----------------------------------------------------------------------

def check_p3(target) -> bool:
    lam = as_target(target)
    if len(lam) != 3:
        raise ValueError("P3 targets have exactly three values")
    return lam[2] >= 3 * lam[1] * (1 - SIGN_SLACK)


def realize_p3(target) -> RealizationWitness:
    """Solve ``a + b = (l2 + l3)/2``, ``ab = l2*l3/3`` with ``0 < a <= b``."""
    lam = as_target(target)
    if not check_p3(lam):
        raise NotRealizableError(f"{lam.tolist()} violates l3 >= 3*l2")
    half_sum = (lam[1] + lam[2]) / 2
    prod = lam[1] * lam[2] / 3
    disc = max(half_sum**2 - 4 * prod, 0.0)
    b = (half_sum + math.sqrt(disc)) / 2
    a = prod / b
    return _witness(graphs.path(3), [a, b])


# --- joins and complete graphs ----------------------------------------------

def _check_generalized_laplacian(A, tol=1e-9):
    A = np.asarray(A, dtype=float)
    scale = max(1.0, float(np.max(np.abs(A))))
    if np.max(np.abs(A.sum(axis=1))) > tol * scale:
        raise ValueError("rows must sum to zero")
    off = A[~np.eye(len(A), dtype=bool)]
    if np.any(off > tol * scale):
        raise ValueError("off-diagonal entries must be nonpositive")
    return A


def join_construct(A, B, rho: float) -> np.ndarray:
    """Join two generalized Laplacians with a uniform ``-rho`` block between them.

    Spectrum: ``{0, rho(p+q)} + (spec(A)\\{0} + rho q) + (spec(B)\\{0} + rho p)``.
    """
    if rho <= 0:
        raise ValueError("rho must be positive")
    A = _check_generalized_laplacian(A)
    B = _check_generalized_laplacian(B)
    p, q = len(A), len(B)
    return np.block([
        [A + rho * q * np.eye(p), -rho * np.ones((p, q))],
        [-rho * np.ones((q, p)), B + rho * p * np.eye(q)],
    ])


def _kn_matrix(nonzero: np.ndarray) -> np.ndarray:
    k = len(nonzero) + 1
    if k == 2:
        a = nonzero[0] / 2
        return np.array([[a, -a], [-a, a]])
    rho = nonzero[0] / k
    return join_construct(_kn_matrix(nonzero[1:] - rho), np.zeros((1, 1)), rho)


def realize_kn(target) -> RealizationWitness:
    """Every positive target is realizable on ``K_n``; build it by repeated joins with a vertex."""
    lam = as_target(target)
    return witness_from_matrix(graphs.complete(len(lam)), _kn_matrix(lam[1:]))


# --- three distinct eigenvalues ---------------------------------------------

def check_quadratic_system(alpha: float, beta: float) -> bool:
    """Whether ``p^2 + q^2 = alpha, pq = beta`` has a positive solution."""
    if alpha <= 0 or beta <= 0:
        raise ValueError("alpha and beta must be positive")
    return alpha >= 2 * beta


def solve_quadratic_system(alpha: float, beta: float) -> tuple[float, float]:
    """Positive ``(p, q)`` with ``p <= q``: the roots of ``t^2 - sqrt(alpha + 2 beta) t + beta``."""
    if not check_quadratic_system(alpha, beta * (1 - SIGN_SLACK)):
        raise NotRealizableError(f"no positive solution for alpha={alpha}, beta={beta}")
    total = math.sqrt(alpha + 2 * beta)
    diff = math.sqrt(max(alpha - 2 * beta, 0.0))
    q = (total + diff) / 2
    return beta / q, q


def _resolve(family) -> Family:
    try:
        return family if isinstance(family, Family) else family_of(family)
    except ValueError as exc:
        raise UnsupportedFamilyError(str(exc)) from None


def check_three_distinct(family, lam: float, mu: float) -> bool:
    """Is ``{0, lam^(n-2), mu}`` realizable?  ``family`` is a shorthand or :class:`Family`."""
    fam = _resolve(family)
    if lam <= 0 or mu <= 0 or lam == mu:
        raise ValueError("need lam, mu > 0 and lam != mu")
    kind, n = fam.kind, fam.n
    if kind == "complete" and n >= 3:
        return True
    if kind == "star" and n >= 4:
        return math.isclose(mu, n * lam, rel_tol=SIGN_SLACK, abs_tol=0.0)
    if kind == "paw":
        return mu >= (2 + SQRT3) * lam or mu <= (2 - SQRT3) * lam
    if kind == "cycle" and n == 4:
        return mu >= 2 * lam
    if kind == "K4-e":
        return mu > 2 * lam or mu <= lam / 2
    raise UnsupportedFamilyError(f"no three-distinct result for {fam.graph}")


def _paw_vector(g: float) -> np.ndarray:
    if g > 0:
        p, q = solve_quadratic_system(1 - 1 / g, SQRT3 / (2 * g))
        x, z = p / math.sqrt(6), q / math.sqrt(2)
    else:
        p, q = solve_quadratic_system(1 - 1 / g, -SQRT3 / (2 * g))
        x, z = p / math.sqrt(6), -q / math.sqrt(2)
    return np.array([x, x, z, -(2 * x + z)])


def _c4_vector(g: float) -> np.ndarray:
    x, y = solve_quadratic_system(0.5, 1 / (4 * g))
    return np.array([x, y, -x, -y])


def _k4e_vector(g: float) -> np.ndarray:
    if g > 0:
        eps = min((0.5 - 0.5 / g) / 2, 1 / (8 * g))
        x, y = solve_quadratic_system(0.5 - eps, 1 / (4 * g))
        a, b = solve_quadratic_system(0.5 + eps, 1 / (4 * g) - eps)
        return np.array([x, y, -a, -b])
    eps = 1 / (6 * g) - 1 / 6
    small, large = solve_quadratic_system(0.5 - eps, -1 / (4 * g))
    # z = w must be nonpositive here so that the coordinates sum to zero
    zw = -math.sqrt(max(1 / (12 * g) + 1 / 6, 0.0))
    return np.array([large, -small, zw, zw])


def realize_three_distinct(family, lam: float, mu: float) -> RealizationWitness:
    """Witness for ``{0, lam^(n-2), mu}``.

    For the 4-vertex families a unit vector ``u`` orthogonal to the all-ones
    vector is built so that ``I - J/4 + g u u^T`` (``g = (mu - lam)/lam``)
    has the graph's sign pattern; the witness is ``lam`` times that matrix.
    """
    fam = _resolve(family)
    if not check_three_distinct(fam, lam, mu):
        raise NotRealizableError(f"{{0, {lam}^({fam.n - 2}), {mu}}} is not realizable for {fam.graph}")
    kind, n, G = fam.kind, fam.n, fam.graph
    if kind == "complete":
        return realize_kn(sorted([0.0] + [lam] * (n - 2) + [mu]))
    if kind == "star":
        return _witness(G, np.full(G.m, float(lam)))
    g = (mu - lam) / lam
    u = {"paw": _paw_vector, "cycle": _c4_vector, "K4-e": _k4e_vector}[kind](g)
    B = np.eye(4) - np.ones((4, 4)) / 4 + g * np.outer(u, u)
    return witness_from_matrix(G, lam * B)
