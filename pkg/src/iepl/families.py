"""Family-level realizability: pick the right test or construction for a target.

A family token is either a sized name (``K1,3``, ``P3``, ``K4``, ``C4``,
``paw``, ``K4-e``) or a bare family (``star``, ``path``, ``complete``) whose
size is taken from the length of the target spectrum.
"""
from __future__ import annotations

import numpy as np

from . import graphs
from .errors import NotRealizableError, UnsupportedFamilyError
from .graphs import Family, family_of
from .multiplicity import allowed_lists
from .realizability import (
    RealizationWitness,
    as_target,
    check_p3,
    check_star,
    check_three_distinct,
    realize_kn,
    realize_p3,
    realize_star,
    realize_three_distinct,
)
from .spectral import DEFAULT_TOL, Spectrum, multiplicity_list

_BARE = {
    "star": lambda n: graphs.star(n - 1),
    "path": graphs.path,
    "complete": graphs.complete,
    "cycle": lambda n: graphs.c4() if n == 4 else graphs.cycle(n),
}


def resolve_family(token: str, n: int | None = None) -> Family:
    """Turn a family token into a :class:`Family`, sizing bare names by ``n``."""
    key = token.strip().lower()
    if key in _BARE:
        if n is None:
            raise ValueError(f"family {token!r} needs a size")
        if n < 2:
            raise ValueError("targets need at least two values")
        return family_of(_BARE[key](n))
    try:
        fam = family_of(token)
    except ValueError as exc:
        raise UnsupportedFamilyError(str(exc)) from None
    if n is not None and fam.n != n:
        raise ValueError(f"{fam.graph} has {fam.n} vertices but the target has {n} values")
    return fam


def _three_distinct_params(lam: np.ndarray, tol: float):
    """``(lam, mu)`` for a target of the form ``{0, lam^(n-2), mu}``, else ``None``."""
    groups = Spectrum(lam, tol).groups()
    if len(groups) != 3:
        return None
    (_, _), (a, ka), (b, kb) = groups
    if ka == 1 and kb == len(lam) - 2:
        return b, a
    if kb == 1 and ka == len(lam) - 2:
        return a, b
    return None


def _four_vertex(fam: Family, lam, tol, build: bool):
    lst = multiplicity_list(Spectrum(lam, tol))
    if lst not in allowed_lists(fam):
        if build:
            raise NotRealizableError(f"multiplicity list {lst} never occurs for {fam.graph}")
        return False
    params = _three_distinct_params(lam, tol)
    if params is None:
        raise UnsupportedFamilyError(f"no criterion for all-distinct spectra of {fam.graph}")
    if build:
        return realize_three_distinct(fam, *params)
    return check_three_distinct(fam, *params)


def check(family, target, tol: float = DEFAULT_TOL) -> bool:
    """Is ``target`` Laplacian realizable for the family?

    Raises :class:`UnsupportedFamilyError` when no criterion is known, rather
    than guessing.
    """
    lam = as_target(target)
    fam = family if isinstance(family, Family) else resolve_family(family, len(lam))
    kind, n = fam.kind, fam.n
    if fam.n != len(lam):
        raise ValueError(f"{fam.graph} has {n} vertices but the target has {len(lam)} values")
    if n == 2 or kind == "complete" or (kind == "cycle" and n == 3):
        return True
    if kind == "star":
        return check_star(lam)
    if kind == "path":
        if n == 3:
            return check_p3(lam)
        if multiplicity_list(Spectrum(lam, tol)) != (1,) * n:
            return False
        raise UnsupportedFamilyError(f"no criterion for all-distinct spectra of {fam.graph}")
    if kind in ("paw", "K4-e") or (kind == "cycle" and n == 4):
        return _four_vertex(fam, lam, tol, build=False)
    raise UnsupportedFamilyError(f"no realizability criterion for {fam.graph}")


def realize(family, target, tol: float = DEFAULT_TOL) -> RealizationWitness:
    """Witness matrix for ``target``, or :class:`NotRealizableError`."""
    lam = as_target(target)
    fam = family if isinstance(family, Family) else resolve_family(family, len(lam))
    kind, n = fam.kind, fam.n
    if fam.n != len(lam):
        raise ValueError(f"{fam.graph} has {n} vertices but the target has {len(lam)} values")
    if n == 2 or kind == "complete" or (kind == "cycle" and n == 3):
        # K_2 = P_2 = K_{1,1} and C_3 = K_3
        return realize_kn(lam)
    if kind == "star":
        return realize_star(lam)
    if kind == "path" and n == 3:
        return realize_p3(lam)
    if kind == "path":
        if multiplicity_list(Spectrum(lam, tol)) != (1,) * n:
            raise NotRealizableError(f"{fam.graph} only has simple eigenvalues")
        raise UnsupportedFamilyError(f"no construction for all-distinct spectra of {fam.graph}")
    if kind in ("paw", "K4-e") or (kind == "cycle" and n == 4):
        return _four_vertex(fam, lam, tol, build=True)
    raise UnsupportedFamilyError(f"no realizability criterion for {fam.graph}")
