"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the summary lines are
printed at the end of the session (see ``conftest.py``).  Running this file
directly with ``python tests/test_acceptance.py`` prints the same lines.
"""
from __future__ import annotations

import math
import time
from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import least_squares

from iepl import graphs
from iepl.graphs import combinatorial_laplacian
from iepl.minvar import minvar_descent, minvar_exact, path_mv_exact, unconstrained_minimizer
from iepl.multiplicity import allowed_lists, construct_all_distinct, star_witness_for_list, witness_list
from iepl.realizability import (
    check_star,
    check_three_distinct,
    realize_kn,
    realize_star,
    realize_three_distinct,
)
from iepl.sampler import anchor_point, sample_spectra
from iepl.spectral import assemble_laplacian, multiplicity_lists, spectrum_of

from conftest import atlas_graphs, graphs_m_le_10

RESULTS: dict[int, tuple[bool, str]] = {}
SQ3 = math.sqrt(3)


def report(k: int, ok: bool, detail: str):
    RESULTS[k] = (ok, detail)
    print(f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
    return ok


def summary_lines():
    return [f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {d}" for k, (ok, d) in sorted(RESULTS.items())]


# --- 1 -------------------------------------------------------------------------

def test_criterion_01_closed_form_mv():
    t0 = time.perf_counter()
    cases = []
    for n in range(2, 9):
        cases.append((f"K{n}", graphs.complete(n), 0.0))
    for n in range(3, 9):
        cases.append((f"K1,{n - 1}", graphs.star(n - 1), n - 2.0))
    for n in range(3, 9):
        cases.append((f"C{n}", graphs.cycle(n), 2 * n / (n - 1) * (1 - 2 / (n - 1))))
    worst, bad = 0.0, []
    for name, g, expected in cases:
        for res in (minvar_exact(g, max_edges=28), minvar_descent(g)):
            err = abs(res.variance - expected)
            worst = max(worst, err)
            if err >= 1e-9:
                bad.append(f"{name}/{res.solver}")
    dt = time.perf_counter() - t0
    ok = not bad and dt < 5
    report(1, ok, f"{len(cases)} graphs x 2 solvers, max err {worst:.2e}, {dt:.2f}s (< 5s){' bad: ' + ','.join(bad) if bad else ''}")
    assert ok


# --- 2 -------------------------------------------------------------------------

def test_criterion_02_path_asymptotics():
    t0 = time.perf_counter()
    v200 = path_mv_exact(200)
    gap = abs(v200 - 2)
    worst = max(abs(path_mv_exact(n) - minvar_exact(graphs.path(n)).variance) for n in range(2, 11))
    dt = time.perf_counter() - t0
    ok = gap < 0.01 and worst < 1e-8 and dt < 10
    report(2, ok, f"|mv(P200) - 2| = {gap:.5f} (need < 0.01); closed form vs exact n=2..10 max err {worst:.1e}; {dt:.2f}s")
    assert worst < 1e-8, "closed form disagrees with the exact solver"
    assert gap < 0.01, f"mv(P200) = {v200!r} is {gap:.5f} from 2 (see decisions ledger)"


# --- 3 -------------------------------------------------------------------------

def test_criterion_03_double_star_split():
    problems = []
    worst = 0.0
    for p in range(1, 6):
        for q in range(1, 6):
            g = graphs.double_star(p, q)
            _, _, eligible = unconstrained_minimizer(g)
            if eligible != (p * q < 9):
                problems.append(f"eligibility p={p} q={q}")
            res = minvar_exact(g)
            if p * q >= 9:
                k2 = Fraction(p + q + 1, 2 * p * q + 3 * p + 3 * q)
                expected = np.array([float(k2 * (q + 3))] * p + [0.0] + [float(k2 * (p + 3))] * q)
                if p in res.support:  # bridge edge index is p
                    problems.append(f"bridge kept p={p} q={q}")
                err = float(np.abs(res.weights - expected).max())
                worst = max(worst, err)
                if err >= 1e-9:
                    problems.append(f"weights p={p} q={q} err {err:.1e}")
            elif len(res.support) != g.m:
                problems.append(f"support not full p={p} q={q}")
    ok = not problems
    report(3, ok, f"25 double stars, eligible iff pq < 9, bridge-free weights max err {worst:.1e}"
           + (f" problems: {problems}" if problems else ""))
    assert ok


# --- 4 -------------------------------------------------------------------------

def test_criterion_04_witness_spectra():
    paw_a = np.array([[5, -3, 0, -2], [-3, 5, 0, -2], [0, 0, 2, -2], [-2, -2, -2, 6]], dtype=float)
    # the {0,5,5,24} paw matrix is lam*(I - J/4 + g uu^T) with lam = 5, g = 19/5 from the construction
    paw_b = realize_three_distinct("paw", 5, 24).matrix
    k4e = np.array([[4, 0, -3, -1], [0, 4, -3, -1], [-3, -3, 7, -1], [-1, -1, -1, 3]], dtype=float)
    checks = [
        ("paw A", paw_a, [0, 2, 8, 8]),
        ("paw B", paw_b, [0, 5, 5, 24]),
        ("K4-e", k4e, [0, 4, 4, 10]),
        ("L(C4)", combinatorial_laplacian(graphs.c4()), [0, 2, 2, 4]),
        ("L(K4-e)", combinatorial_laplacian(graphs.k4_minus_e()), [0, 2, 4, 4]),
    ]
    errs = {name: float(np.abs(spectrum_of(A).values - t).max()) for name, A, t in checks}
    ok = max(errs.values()) < 1e-9
    report(4, ok, "max spectrum err " + ", ".join(f"{k} {v:.1e}" for k, v in errs.items()))
    assert ok


# --- 5 -------------------------------------------------------------------------

def _bisect_flip(fam, lo, hi, steps=200):
    f_lo = check_three_distinct(fam, 1.0, lo)
    assert check_three_distinct(fam, 1.0, hi) != f_lo
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if check_three_distinct(fam, 1.0, mid) == f_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def test_criterion_05_three_distinct_boundaries():
    flips = [
        ("paw", 3.0, 4.5, 2 + SQ3),
        ("paw", 0.05, 0.9, 2 - SQ3),
        ("C4", 1.5, 3.0, 2.0),
        ("K4-e", 1.5, 3.0, 2.0),
        ("K4-e", 0.2, 0.9, 0.5),
    ]
    loc_err = max(abs(_bisect_flip(f, lo, hi) - b) for f, lo, hi, b in flips)
    # admissible boundary points (K4-e at mu = 2 is excluded by its strict inequality)
    admissible = [("paw", 2 + SQ3), ("paw", 2 - SQ3), ("C4", 2.0), ("K4-e", 0.5)]
    wit_err = 0.0
    for fam, mu in admissible:
        w = realize_three_distinct(fam, 1.0, mu)
        wit_err = max(wit_err, w.spectrum_error(np.sort([0.0, 1.0, 1.0, mu])))
    excluded = not check_three_distinct("K4-e", 1.0, 2.0)
    ok = loc_err < 1e-9 and wit_err < 1e-8 and excluded
    report(5, ok, f"flip location err {loc_err:.1e} (< 1e-9), boundary witness err {wit_err:.1e} (< 1e-8)")
    assert ok


# --- 6 -------------------------------------------------------------------------

def _star_spectra(W):
    B, k = W.shape
    L = np.zeros((B, k + 1, k + 1))
    idx = np.arange(1, k + 1)
    L[:, 0, 0] = W.sum(axis=1)
    L[:, 0, idx] = -W
    L[:, idx, 0] = -W
    L[:, idx, idx] = W
    return np.linalg.eigvalsh(L)


def _star_jac(th):
    # d lambda_j / d w_e = (v_j[centre] - v_j[leaf e])^2, chained through w = th^2
    w = th**2
    _, V = np.linalg.eigh(_star_spectra_matrix(w))
    D = (V[0:1, :] - V[1:, :]) ** 2
    return D.T[1:] * (2 * th)[None, :]


def _star_spectra_matrix(w):
    k = len(w)
    L = np.zeros((k + 1, k + 1))
    L[0, 0] = w.sum()
    L[0, 1:] = L[1:, 0] = -w
    L[np.arange(1, k + 1), np.arange(1, k + 1)] = w
    return L


class StarOracle:
    """Brute force: 10^5 random star weightings, polished from the nearest few by least squares.

    A hit means some positive weighting reproduces the target to 1e-10
    (relative to the trace); it never consults the sign test.
    """

    def __init__(self, n, rng, size=100_000):
        W = 1 - rng.random((size, n - 1))
        E = _star_spectra(W)[:, 1:]
        s = E.sum(axis=1, keepdims=True)
        self.W, self.E = W / s, E / s

    def fit(self, target, starts=4):
        lam = np.asarray(target[1:], dtype=float)
        scale = lam.sum()
        t = lam / scale
        order = np.argsort(np.abs(self.E - t).max(axis=1))[:starts]
        best = np.inf
        for i in order:
            r = least_squares(lambda th: _star_spectra(th[None] ** 2)[0, 1:] - t, np.sqrt(self.W[i]),
                              jac=_star_jac, xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=200)
            best = min(best, float(np.abs(r.fun).max()))
            if best < 1e-10:
                break
        return best < 1e-10


def _star_targets(rng, count=1000):
    out = []
    for i in range(count):
        n = 2 + i % 7
        kind = ("weights", "repeated", "uniform", "near")[(i // 7) % 4]
        if kind == "uniform" or n == 2:
            lam = np.concatenate(([0.0], np.sort(rng.uniform(0.05, 5, n - 1))))
        else:
            if kind == "repeated":
                w = rng.choice(rng.uniform(0.2, 3, 2), n - 1)
            else:
                w = rng.uniform(0.05, 3, n - 1)
            lam = np.linalg.eigvalsh(assemble_laplacian(graphs.star(n - 1), w))
            lam[0] = 0.0
            if kind == "near":
                k = rng.integers(1, n)
                lam[k] *= 1 + rng.choice([-1.0, 1.0]) * 10 ** rng.uniform(-7, -2)
                lam = np.sort(lam)
        out.append((kind, lam))
    return out


def test_criterion_06_star_round_trip():
    rng = np.random.default_rng(6)
    targets = _star_targets(rng)
    oracles = {n: StarOracle(n, rng) for n in range(3, 9)}
    false_neg, pos, realized_bad, worst = 0, 0, 0, 0.0
    weights_total, weights_hit = 0, 0
    for kind, lam in targets:
        n = len(lam)
        verdict = check_star(lam)
        pos += verdict
        if n > 2:
            hit = oracles[n].fit(lam)
            if kind in ("weights", "repeated"):
                weights_total += 1
                weights_hit += hit
            if hit and not verdict:
                false_neg += 1
        if verdict:
            err = realize_star(lam).spectrum_error(lam)
            worst = max(worst, err)
            realized_bad += err >= 1e-8
    # the oracle must be able to find witnesses for spectra that come from weights,
    # otherwise "zero false negatives" would mean nothing
    recall = weights_hit / weights_total
    ok = false_neg == 0 and realized_bad == 0 and recall > 0.9
    report(6, ok, f"{len(targets)} targets, {pos} check-positive, {false_neg} check-no/oracle-hit events, "
           f"oracle recall on weight spectra {recall:.3f}, realize_star max err {worst:.1e} (< 1e-8)")
    assert ok


# --- 7 -------------------------------------------------------------------------

def test_criterion_07_kn_constructor():
    rng = np.random.default_rng(7)
    worst, bad = 0.0, 0
    for i in range(1000):
        n = 2 + i % 7
        vals = rng.uniform(0.01, 10, n - 1)
        if i % 5 == 0:
            vals = rng.choice(vals[:2], n - 1)  # repeated eigenvalues
        lam = np.concatenate(([0.0], np.sort(vals)))
        w = realize_kn(lam)
        err = w.spectrum_error(lam)
        worst = max(worst, err)
        off = w.matrix[~np.eye(n, dtype=bool)]
        bad += err >= 1e-8 or not np.all(off < 0)
    ok = bad == 0
    report(7, ok, f"1000 targets n <= 8, max spectrum err {worst:.1e} (< 1e-8), {bad} failures")
    assert ok


# --- 8 -------------------------------------------------------------------------

def test_criterion_08_all_distinct():
    gs = atlas_graphs(6, min_n=2)
    bad, worst_ratio = [], np.inf
    for g in gs:
        ev = construct_all_distinct(g).achieved.values
        ratio = float(np.min(np.diff(ev)) / ev[-1])
        worst_ratio = min(worst_ratio, ratio)
        if ratio <= 1e-12:
            bad.append(str(g))
    n6 = sum(g.n == 6 for g in gs)
    ok = not bad
    report(8, ok, f"{len(gs)} connected graphs on 2..6 vertices ({n6} on 6), smallest gap/lambda_n {worst_ratio:.2e} (> 1e-12)")
    assert ok


# --- 9 -------------------------------------------------------------------------

def test_criterion_09_catalogs():
    rng = np.random.default_rng(9)
    seen = {}
    stray = []
    for spec in ("P4", "K1,3", "C4", "paw", "K4-e", "K4"):
        g = graphs.named_graph(spec)
        W = 1 - rng.random((100_000, g.m))
        L = np.zeros((len(W), 4, 4))
        for k, (i, j) in enumerate(g.edges):
            a, b = i - 1, j - 1
            L[:, a, b] -= W[:, k]
            L[:, b, a] -= W[:, k]
            L[:, a, a] += W[:, k]
            L[:, b, b] += W[:, k]
        lists = set(multiplicity_lists(np.linalg.eigvalsh(L)))
        cat = allowed_lists(spec)
        seen[spec] = sorted(lists)
        stray += [(spec, x) for x in lists if x not in cat]
    trips = 0
    trip_bad = []
    for n in range(2, 8):
        for lst in allowed_lists(graphs.star(n - 1)).lists:
            trips += 1
            if witness_list(star_witness_for_list(lst)) != lst:
                trip_bad.append(lst)
    ok = not stray and not trip_bad
    report(9, ok, f"6 four-vertex graphs x 1e5 samples, {len(stray)} lists outside the catalog; "
           f"{trips} star lists round-trip, {len(trip_bad)} failures")
    assert ok


# --- 10 ------------------------------------------------------------------------

def test_criterion_10_solver_agreement():
    gs = graphs_m_le_10()
    worst, mismatched = 0.0, []
    for g in gs:
        a = minvar_exact(g)
        b = minvar_descent(g)
        worst = max(worst, abs(a.objective - b.objective))
        if a.support != b.support or abs(a.objective - b.objective) >= 1e-8:
            mismatched.append(g.edges)
    ok = not mismatched
    report(10, ok, f"{len(gs)} connected graphs with m <= 10, max objective gap {worst:.1e}, "
           f"{len(mismatched)} support/objective mismatches")
    assert ok


# --- 11 ------------------------------------------------------------------------

def test_criterion_11_sampler_invariants():
    problems = []
    for spec in ("P3", "C4", "K1,3"):
        g = graphs.named_graph(spec)
        run = sample_spectra(g, 10_000, seed=11, anchor=True)
        ev = run.records
        trace_err = float(np.abs(ev.sum(axis=1) - 2 * g.m).max())
        if trace_err >= 1e-9:
            problems.append(f"{spec} trace err {trace_err:.1e}")
        if not np.allclose(ev[0], anchor_point(g), atol=1e-12):
            problems.append(f"{spec} anchor")
        if spec == "P3" and np.any(ev[:, 2] < 3 * ev[:, 1] * (1 - 1e-12)):
            problems.append("P3 lambda3 < 3 lambda2")
        if spec == "C4" and any(lst[-1] != 1 for lst in multiplicity_lists(ev)):
            problems.append("C4 repeated top eigenvalue")
    c4_anchor = sample_spectra(graphs.c4(), 1, seed=0, anchor=True).records[0]
    if not np.allclose(c4_anchor[1:3], [2, 2], atol=1e-12):
        problems.append("C4 anchor not at (2, 2)")
    ok = not problems
    report(11, ok, "1e4 samples each on P3, C4, K1,3: trace, P3 bound, C4 simple top, anchor point"
           + (f" problems: {problems}" if problems else ""))
    assert ok


if __name__ == "__main__":
    import sys
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) else 1)
