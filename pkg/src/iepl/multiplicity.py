"""Ordered multiplicity lists: catalogs per family and explicit witnesses."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import graphs
from .errors import NotRealizableError, UnsupportedFamilyError
from .graphs import Family, Graph, family_of
from .realizability import RealizationWitness, _witness
from .spectral import assemble_laplacian, multiplicity_list, spectrum_of

# Internal grouping tolerance while growing the all-distinct weighting; far
# below the public default so tiny late weights still count as splits.
_CONSTRUCTION_TOL = 1e-11

_FOUR_VERTEX_TABLES = {
    "paw": [(1, 1, 1, 1), (1, 1, 2), (1, 2, 1)],
    "C4": [(1, 1, 1, 1), (1, 2, 1)],
    "K4-e": [(1, 1, 1, 1), (1, 1, 2), (1, 2, 1)],
}


@dataclass(frozen=True)
class ListCatalog:
    family: str
    lists: tuple[tuple[int, ...], ...]

    def __contains__(self, item) -> bool:
        return tuple(item) in self.lists


def compositions(n: int):
    """All ordered tuples of positive integers summing to ``n``."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield (first,) + rest


def is_star_list(lst) -> bool:
    """First and last entries 1, and no two consecutive entries both at least 2."""
    lst = tuple(lst)
    if not lst or lst[0] != 1 or lst[-1] != 1:
        return False
    return all(not (a >= 2 and b >= 2) for a, b in zip(lst, lst[1:]))


def allowed_lists(family) -> ListCatalog:
    fam = family if isinstance(family, Family) else _family(family)
    kind, n = fam.kind, fam.n
    if kind == "path":
        lists = [(1,) * n]
    elif kind == "complete":
        lists = [c for c in compositions(n) if c[0] == 1]
    elif kind == "star":
        lists = [c for c in compositions(n) if is_star_list(c)]
    elif kind in ("paw", "K4-e"):
        lists = _FOUR_VERTEX_TABLES[kind]
    elif kind == "cycle" and n == 4:
        lists = _FOUR_VERTEX_TABLES["C4"]
    elif kind == "cycle" and n == 3:
        lists = [c for c in compositions(3) if c[0] == 1]  # C3 = K3
    else:
        raise UnsupportedFamilyError(f"no multiplicity catalog for {fam.graph}")
    return ListCatalog(str(fam.graph), tuple(sorted(lists)))


def _family(spec) -> Family:
    try:
        return family_of(spec)
    except ValueError as exc:
        raise UnsupportedFamilyError(str(exc)) from None


def _distinct_values(values, tol):
    thresh = tol * max(1.0, float(values[-1] - values[0]))
    out = [values[0]]
    for v in values[1:]:
        if v - out[-1] > thresh:
            out.append(v)
    return np.array(out)


def _min_gap(L) -> float:
    distinct = _distinct_values(np.linalg.eigvalsh(L), _CONSTRUCTION_TOL)
    return float(np.min(np.diff(distinct)))


def construct_all_distinct(g: Graph) -> RealizationWitness:
    """Positive weights whose generalized Laplacian has ``n`` distinct eigenvalues.

    The BFS spanning tree is grown edge by edge: the first edge gets weight 1
    and each later edge ``delta/7``, where ``delta`` is the smallest gap
    between distinct eigenvalues so far.  By Weyl's inequality a weight ``w``
    moves eigenvalues by at most ``2w``, so no two distinct eigenvalues can
    merge, while each new tree edge splits one eigenvalue off zero.
    Non-tree edges are then added the same way.
    """
    if not g.is_connected():
        raise ValueError(f"{g} is not connected")
    if g.m == 0:
        return _witness(g, np.zeros(0))
    tree = graphs.spanning_tree(g)
    rest = [k for k in range(g.m) if k not in set(tree)]
    w = np.zeros(g.m)
    w[tree[0]] = 1.0
    for k in tree[1:] + rest:
        w[k] = _min_gap(assemble_laplacian(g, w)) / 7
    return _witness(g, w)


def star_reduced_list(lst) -> tuple[int, ...]:
    """Drop the leading 1 and fold every ``(m_k >= 2, 1)`` pair into ``m_k + 1``.

    These are the multiplicities of the leaf weights that produce ``lst``.
    """
    body = list(lst)[1:]
    out = []
    k = 0
    while k < len(body):
        if body[k] >= 2:
            out.append(body[k] + 1)
            k += 2
        else:
            out.append(1)
            k += 1
    return tuple(out)


def star_witness_for_list(lst) -> RealizationWitness:
    """Star weighting realizing the ordered multiplicity list ``lst`` (``n = sum(lst)``).

    Leaf weights are the integers 1, 2, 3, ... repeated per the reduced list;
    a weight of multiplicity ``r`` becomes an eigenvalue of multiplicity
    ``r - 1`` and one new eigenvalue appears in each gap between weights.
    """
    lst = tuple(int(x) for x in lst)
    if not is_star_list(lst):
        raise NotRealizableError(f"{lst} is not an ordered multiplicity list of a star")
    n = sum(lst)
    if n < 2:
        raise ValueError("a star needs at least two vertices")
    if n == 2:
        return _witness(graphs.star(1), [1.0])
    reduced = star_reduced_list(lst)
    w = np.repeat(np.arange(1, len(reduced) + 1, dtype=float), reduced)
    return _witness(graphs.star(n - 1), w)


def witness_list(w: RealizationWitness, tol: float = 1e-8) -> tuple[int, ...]:
    return multiplicity_list(spectrum_of(w.matrix, tol))
