"""Monte Carlo sampling of trace-normalized spectra.

Each sample draws edge weights uniformly from (0, 1], rescales them so the
weights sum to ``m`` (trace ``2m``), and records the ascending spectrum.
Sample ``i`` uses its own substream ``SeedSequence(seed, spawn_key=(i,))``
of PCG64, so the records do not depend on how the work is split up.
"""
from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .graphs import Graph, format_graph
from .spectral import assemble_laplacian

DEFAULT_COUNT = 100_000
_CHUNK = 4096


@dataclass(frozen=True)
class SampleRun:
    graph: Graph
    count: int
    seed: int
    records: np.ndarray  # (count, n), rows ascending
    anchor: bool = False


def _sample_weights(m: int, seed: int, index: int) -> np.ndarray:
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(index,))))
    return 1.0 - rng.random(m)


def _worker_count(workers) -> int:
    if workers is None:
        workers = os.cpu_count() or 1
    cap = os.environ.get("IEPL_THREADS")
    if cap:
        workers = min(workers, max(1, int(cap)))
    return max(1, int(workers))


def _batch(g: Graph, seed: int, start: int, stop: int, anchor: bool) -> np.ndarray:
    W = np.empty((stop - start, g.m))
    for r, i in enumerate(range(start, stop)):
        W[r] = 1.0 if (anchor and i == 0) else _sample_weights(g.m, seed, i)
    W = W / (W.sum(axis=1, keepdims=True) / g.m)
    # N diag(w) N^T for every row at once
    I = np.array([i - 1 for i, _ in g.edges], dtype=int)
    J = np.array([j - 1 for _, j in g.edges], dtype=int)
    L = np.zeros((len(W), g.n, g.n))
    for k in range(g.m):
        L[:, I[k], J[k]] -= W[:, k]
        L[:, J[k], I[k]] -= W[:, k]
        L[:, I[k], I[k]] += W[:, k]
        L[:, J[k], J[k]] += W[:, k]
    return np.linalg.eigvalsh(L)


def sample_spectra(g: Graph, count: int = DEFAULT_COUNT, seed: int = 0,
                   anchor: bool = False, workers: int | None = None) -> SampleRun:
    """Draw ``count`` normalized spectra of ``g``.

    With ``anchor=True`` sample 0 uses the all-ones weighting, i.e. the
    combinatorial Laplacian.  Results are ordered by sample index whatever
    the number of workers (``IEPL_THREADS`` caps it).
    """
    if not g.is_connected():
        raise ValueError(f"{g} is not connected")
    if count < 0:
        raise ValueError("count must be nonnegative")
    seed = int(seed)
    if count == 0 or g.m == 0:
        return SampleRun(g, count, seed, np.zeros((count, g.n)), anchor)
    bounds = [(a, min(a + _CHUNK, count)) for a in range(0, count, _CHUNK)]
    n_workers = min(_worker_count(workers), len(bounds))
    if n_workers == 1:
        parts = [_batch(g, seed, a, b, anchor) for a, b in bounds]
    else:
        with ThreadPoolExecutor(n_workers) as pool:
            parts = list(pool.map(lambda ab: _batch(g, seed, ab[0], ab[1], anchor), bounds))
    return SampleRun(g, count, seed, np.vstack(parts), anchor)


def anchor_point(g: Graph) -> np.ndarray:
    """Spectrum of the combinatorial Laplacian (all-ones weights, already trace ``2m``)."""
    return np.linalg.eigvalsh(assemble_laplacian(g, np.ones(g.m)))


def export_csv(run: SampleRun, path) -> Path:
    """Write ``lambda2..lambdan`` rows plus a ``<stem>.meta.json`` sidecar.

    The sidecar carries the reference lines used when plotting ``(lambda2,
    lambda3)`` clouds, along with the graph, seed and count.
    """
    path = Path(path)
    n = run.graph.n
    header = ",".join(f"lambda{k}" for k in range(2, n + 1))
    lines = [header]
    for row in run.records:
        lines.append(",".join(format(float(v), ".17g") for v in row[1:]))
    path.write_text("\n".join(lines) + "\n")
    m2 = 2 * run.graph.m
    meta = {
        "graph": format_graph(run.graph),
        "name": run.graph.name,
        "count": run.count,
        "seed": run.seed,
        "anchor": run.anchor,
        "trace": m2,
        "reference_lines": [
            {"label": "x = y", "a": 1, "b": -1, "c": 0},
            {"label": f"x + 2y = {m2}", "a": 1, "b": 2, "c": m2},
            {"label": f"x + y = {m2}", "a": 1, "b": 1, "c": m2},
        ],
        "line_form": "a*x + b*y = c, with x = lambda2 and y = lambda3",
    }
    path.with_name(path.stem + ".meta.json").write_text(json.dumps(meta, indent=2) + "\n")
    return path
