"""Generalized Laplacians, their spectra, multiplicity lists and variance statistics."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import Graph, incidence_matrix

DEFAULT_TOL = 1e-8


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues plus the relative tolerance used to group them."""

    values: np.ndarray
    tol: float = DEFAULT_TOL

    @property
    def n(self) -> int:
        return len(self.values)

    def gap_threshold(self) -> float:
        if self.n == 0:
            return self.tol
        return self.tol * max(1.0, float(self.values[-1] - self.values[0]))

    def groups(self) -> list[tuple[float, int]]:
        """Distinct eigenvalues (cluster means) with their multiplicities."""
        return [(float(np.mean(c)), len(c)) for c in _clusters(self.values, self.gap_threshold())]

    def to_list(self) -> list[float]:
        return [float(v) for v in self.values]


def _clusters(values, threshold):
    out = []
    for v in values:
        if out and v - out[-1][-1] <= threshold:
            out[-1].append(v)
        else:
            out.append([v])
    return out


def as_weights(g: Graph, w) -> np.ndarray:
    w = np.asarray(w, dtype=float).reshape(-1)
    if w.shape[0] != g.m:
        raise ValueError(f"weight vector has length {w.shape[0]}, graph has {g.m} edges")
    if np.any(w < 0):
        raise ValueError("edge weights must be nonnegative")
    return w


def assemble_laplacian(g: Graph, w) -> np.ndarray:
    """``N diag(w) N^T``: off-diagonal ``-w_e`` on edge ``e``, zero row sums."""
    w = as_weights(g, w)
    L = np.zeros((g.n, g.n))
    for k, (i, j) in enumerate(g.edges):
        a, b = i - 1, j - 1
        L[a, b] -= w[k]
        L[b, a] -= w[k]
        L[a, a] += w[k]
        L[b, b] += w[k]
    return L


def assemble_laplacian_nwn(g: Graph, w) -> np.ndarray:
    """Same matrix as :func:`assemble_laplacian`, via the incidence factorization."""
    N = incidence_matrix(g)
    return N @ np.diag(as_weights(g, w)) @ N.T


def spectrum_of(A, tol: float = DEFAULT_TOL) -> Spectrum:
    """Eigenvalues of a symmetric matrix, ascending (dense LAPACK ``syevd``)."""
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("spectrum_of needs a square matrix")
    scale = max(1.0, float(np.max(np.abs(A)))) if A.size else 1.0
    if A.size and np.max(np.abs(A - A.T)) > tol * scale:
        raise ValueError("matrix is not symmetric within tolerance")
    return Spectrum(np.linalg.eigvalsh(A), tol)


def multiplicity_list(s: Spectrum) -> tuple[int, ...]:
    """Ordered multiplicity list: sizes of the eigenvalue clusters, ascending."""
    return tuple(len(c) for c in _clusters(s.values, s.gap_threshold()))


def multiplicity_lists(spectra: np.ndarray, tol: float = DEFAULT_TOL) -> list[tuple[int, ...]]:
    """Row-wise :func:`multiplicity_list` for a ``(samples, n)`` array of sorted spectra."""
    spectra = np.asarray(spectra, dtype=float)
    thresh = tol * np.maximum(1.0, spectra[:, -1] - spectra[:, 0])
    breaks = np.diff(spectra, axis=1) > thresh[:, None]
    out = []
    for row in breaks:
        cuts = np.flatnonzero(row) + 1
        edges = np.concatenate(([0], cuts, [spectra.shape[1]]))
        out.append(tuple(np.diff(edges).tolist()))
    return out


def variance_stats(s: Spectrum) -> tuple[float, float, float]:
    """``(mean, variance, p2)`` of the nonzero part ``lambda_2..lambda_n``.

    The first (zero) eigenvalue is dropped once; the variance uses the
    population normalisation ``1/(n-1)``.
    """
    if s.n < 2:
        raise ValueError("variance needs at least two eigenvalues")
    lam = np.asarray(s.values[1:], dtype=float)
    k = len(lam)
    mean = float(lam.sum() / k)
    var = float(np.sum((lam - mean) ** 2) / k)
    p2 = float(np.sum(lam**2))
    return mean, var, p2


def variance_from_moments(p2: float, mean: float, n: int) -> float:
    """``p2/(n-1) - mean^2``."""
    return p2 / (n - 1) - mean**2


def normalize_trace(g: Graph, w) -> np.ndarray:
    """Rescale so the weights sum to ``m`` (trace of the Laplacian becomes ``2m``)."""
    w = as_weights(g, w)
    total = w.sum()
    if total <= 0:
        raise ValueError("cannot normalize an all-zero weight vector")
    return w / (total / g.m)
