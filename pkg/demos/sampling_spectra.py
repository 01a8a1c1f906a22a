"""
Where do the spectra of a small graph live?
===========================================

Sample random weightings, scale so the trace is 2m, and look at the
nonzero eigenvalues as points.  The CSV written here is ready for plotting.
"""
import tempfile
from pathlib import Path

import numpy as np

from iepl import export_csv, graphs, sample_spectra
from iepl.sampler import anchor_point

g = graphs.path(3)
run = sample_spectra(g, 20_000, seed=3, anchor=True)
ev = run.records
print(ev.shape, ev[0], anchor_point(g))

# every sample sits on the trace line, and P3 never crosses l3 = 3 l2
print(np.abs(ev.sum(axis=1) - 2 * g.m).max())
print((ev[:, 2] / ev[:, 1]).min())

# C4: the top eigenvalue is always simple
ev = sample_spectra(graphs.c4(), 20_000, seed=3).records
print(np.min(ev[:, 3] - ev[:, 2]))

out = Path(tempfile.mkdtemp()) / "p3.csv"
export_csv(run, out)
print(out.read_text().splitlines()[:3])
print(out.with_suffix(".meta.json").read_text())
