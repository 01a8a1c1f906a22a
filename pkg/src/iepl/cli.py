"""``iepl`` command line.

Exit status: 0 success, 1 runtime error, 2 not realizable, 3 unsupported
family, 64 bad usage or unparsable input.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import families
from .errors import IEPLError, NotRealizableError, UnsupportedFamilyError
from .graphs import load_graph
from .minvar import EXHAUSTIVE_LIMIT, minimum_variance
from .multiplicity import allowed_lists, construct_all_distinct
from .sampler import DEFAULT_COUNT, export_csv, sample_spectra

EXIT_OK, EXIT_ERROR, EXIT_NOT_REALIZABLE, EXIT_UNSUPPORTED, EXIT_USAGE = 0, 1, 2, 3, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def to_json(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON text with every float written to 17 significant digits."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{to_json(str(k))}: {to_json(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(not isinstance(x, (dict, list, tuple, np.ndarray)) for x in seq):
            return "[" + ", ".join(to_json(x) for x in seq) + "]"
        return "[\n" + ",\n".join(pad + to_json(x, indent, _level + 1) for x in seq) + "\n" + end + "]"
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return "null"
        return format(x, ".17g")
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _graph(tokens):
    try:
        return load_graph(" ".join(tokens))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _target(values):
    try:
        lam = [float(v) for v in values]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if len(lam) < 2:
        raise UsageError("a spectrum needs at least two values")
    if lam[0] != 0.0:
        raise UsageError("the spectrum must start with 0")
    if any(b < a for a, b in zip(lam, lam[1:])):
        raise UsageError("spectrum values must be ascending (they are not sorted for you)")
    if any(v <= 0 for v in lam[1:]):
        raise UsageError("nonzero eigenvalues must be positive")
    return lam


def _cmd_check(args, out):
    lam = _target(args.spectrum)
    ok = families.check(args.family, lam, tol=args.tol)
    out.write(to_json({"family": args.family, "spectrum": lam, "realizable": ok}) + "\n")
    return EXIT_OK if ok else EXIT_NOT_REALIZABLE


def _cmd_realize(args, out):
    lam = _target(args.spectrum)
    w = families.realize(args.family, lam, tol=args.tol)
    d = w.to_dict()
    d["error"] = w.spectrum_error(lam)
    out.write(to_json(d) + "\n")
    return EXIT_OK


def _cmd_lists(args, out):
    try:
        cat = allowed_lists(" ".join(args.family))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out.write(to_json([list(x) for x in cat.lists]) + "\n")
    return EXIT_OK


def _cmd_mv(args, out):
    g = _graph(args.graph)
    res = minimum_variance(g, solver=args.solver, tol=args.tol, exact_step=args.exact_step,
                           max_edges=args.max_edges, max_iter=args.max_iter)
    out.write(to_json(res.to_dict()) + "\n")
    return EXIT_OK


def _cmd_sample(args, out):
    g = _graph(args.graph)
    if args.count < 0:
        raise UsageError("--count must be nonnegative")
    run = sample_spectra(g, args.count, args.seed, anchor=args.anchor)
    if args.out:
        export_csv(run, args.out)
    else:
        out.write(",".join(f"lambda{k}" for k in range(2, g.n + 1)) + "\n")
        for row in run.records:
            out.write(",".join(format(float(v), ".17g") for v in row[1:]) + "\n")
    return EXIT_OK


def _cmd_distinct(args, out):
    g = _graph(args.graph)
    w = construct_all_distinct(g)
    out.write(to_json(w.to_dict()) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="iepl", description="Inverse eigenvalue tools for generalized graph Laplacians.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    graph_help = "graph file ('n m' header plus edge lines) or shorthand such as C4, K1,3, paw, 'doublestar 3 3'"
    fam_help = "family: star, path, complete, cycle (sized by the spectrum) or a sized name such as paw, C4, K4-e, K1,3"

    c = sub.add_parser("check", help="decide whether a spectrum is realizable")
    c.add_argument("family", help=fam_help)
    c.add_argument("spectrum", nargs="+", help="ascending eigenvalues, starting with 0")
    c.add_argument("--tol", type=float, default=1e-8, help="multiplicity grouping tolerance")
    c.set_defaults(func=_cmd_check)

    r = sub.add_parser("realize", help="build a witness matrix for a spectrum")
    r.add_argument("family", help=fam_help)
    r.add_argument("spectrum", nargs="+", help="ascending eigenvalues, starting with 0")
    r.add_argument("--tol", type=float, default=1e-8, help="multiplicity grouping tolerance")
    r.set_defaults(func=_cmd_realize)

    ls = sub.add_parser("lists", help="ordered multiplicity lists of a family")
    ls.add_argument("family", nargs="+", help="sized family name: P5, K4, K1,4, paw, C4, K4-e")
    ls.set_defaults(func=_cmd_lists)

    mv = sub.add_parser("mv", help="minimum variance over trace-normalized weightings")
    mv.add_argument("graph", nargs="+", help=graph_help)
    mv.add_argument("--solver", choices=["auto", "exact", "descent"], default="auto")
    mv.add_argument("--tol", type=float, default=1e-10, help="descent stopping tolerance on eta")
    mv.add_argument("--exact-step", action="store_true", help="descent step 6 for incident edge pairs")
    mv.add_argument("--max-edges", type=int, default=EXHAUSTIVE_LIMIT, help="edge limit of the exact scan")
    mv.add_argument("--max-iter", type=int, default=10**6)
    mv.set_defaults(func=_cmd_mv)

    s = sub.add_parser("sample", help="Monte Carlo spectra of random normalized weightings")
    s.add_argument("graph", nargs="+", help=graph_help)
    s.add_argument("--count", type=int, default=DEFAULT_COUNT)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", help="CSV path (a .meta.json sidecar is written next to it); stdout if omitted")
    s.add_argument("--anchor", action="store_true", help="sample 0 uses all-ones weights")
    s.set_defaults(func=_cmd_sample)

    d = sub.add_parser("distinct", help="weighting with n distinct eigenvalues")
    d.add_argument("graph", nargs="+", help=graph_help)
    d.set_defaults(func=_cmd_distinct)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"iepl: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotRealizableError as exc:
        out.write(to_json({"realizable": False, "reason": str(exc)}) + "\n")
        return EXIT_NOT_REALIZABLE
    except UnsupportedFamilyError as exc:
        print(f"iepl: unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (IEPLError, ValueError) as exc:
        print(f"iepl: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
