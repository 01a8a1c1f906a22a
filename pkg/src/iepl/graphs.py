"""Graphs, incidence/line-graph matrices and the structural queries built on them.

Vertices are numbered ``1..n`` as in the usual textbook notation; edges are
indexed ``0..m-1`` by their position in :attr:`Graph.edges`.  That edge order is
the canonical order of every weight vector and of the rows/columns of
:func:`m2_matrix`.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from pathlib import Path

import numpy as np


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph with a fixed edge order.

    Each edge is stored as ``(i, j)`` with ``i < j``.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    name: str | None = None

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"vertex count must be a positive integer, got {self.n!r}")
        normalized = []
        seen = set()
        for e in self.edges:
            i, j = (int(v) for v in e)
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"edge {e} out of range for n={self.n}")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
            normalized.append(key)
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "edges", tuple(normalized))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degrees(self) -> np.ndarray:
        d = np.zeros(self.n, dtype=int)
        for i, j in self.edges:
            d[i - 1] += 1
            d[j - 1] += 1
        return d

    def neighbors(self) -> list[list[tuple[int, int]]]:
        """Per vertex (0-based), the list of ``(edge_index, other_vertex)``, in edge order."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for k, (i, j) in enumerate(self.edges):
            adj[i - 1].append((k, j - 1))
            adj[j - 1].append((k, i - 1))
        return adj

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=int)
        for i, j in self.edges:
            a[i - 1, j - 1] = a[j - 1, i - 1] = 1
        return a

    def components(self) -> list[list[int]]:
        """Connected components as sorted lists of 1-based vertices."""
        adj = self.neighbors()
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, queue = [], deque([s])
            while queue:
                v = queue.popleft()
                comp.append(v + 1)
                for _, u in adj[v]:
                    if not seen[u]:
                        seen[u] = True
                        queue.append(u)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def edge_index(self, i: int, j: int) -> int:
        return self.edges.index((min(i, j), max(i, j)))

    def __str__(self):
        return self.name or f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Bipartition:
    """Two-colouring of a connected bipartite graph; ``X`` holds vertex 1."""

    X: frozenset[int]
    Y: frozenset[int]

    def signature(self, n: int) -> np.ndarray:
        """Diagonal of the +1/-1 signature matrix (+1 on ``X``)."""
        return np.array([1 if v in self.X else -1 for v in range(1, n + 1)])


def _require_connected(g: Graph):
    if not g.is_connected():
        raise ValueError(f"{g} is not connected")


# --- matrices ---------------------------------------------------------------

def incidence_matrix(g: Graph) -> np.ndarray:
    """Oriented ``n x m`` incidence matrix; the lower-numbered endpoint gets +1."""
    N = np.zeros((g.n, g.m))
    for k, (i, j) in enumerate(g.edges):
        N[i - 1, k] = 1.0
        N[j - 1, k] = -1.0
    return N


def line_graph_adjacency(g: Graph) -> np.ndarray:
    """Adjacency matrix ``B`` of the line graph, in edge order."""
    m = g.m
    B = np.zeros((m, m), dtype=int)
    for v_edges in g.neighbors():
        ks = [k for k, _ in v_edges]
        for a in ks:
            for b in ks:
                if a != b:
                    B[a, b] = 1
    return B


def m2_matrix(g: Graph) -> np.ndarray:
    """``4I + B``: the Gram matrix of the quadratic form ``sum(lambda_i^2) = w^T M2 w``."""
    if g.m == 0:
        raise ValueError("m2_matrix needs at least one edge")
    return 4 * np.eye(g.m, dtype=int) + line_graph_adjacency(g)


def combinatorial_laplacian(g: Graph) -> np.ndarray:
    return np.diag(g.degrees()) - g.adjacency_matrix()


# --- structure ----------------------------------------------------------------

def bipartition(g: Graph) -> Bipartition | None:
    """BFS two-colouring; ``None`` when an odd cycle exists."""
    _require_connected(g)
    adj = g.neighbors()
    colour = [-1] * g.n
    colour[0] = 0
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for _, u in adj[v]:
            if colour[u] < 0:
                colour[u] = 1 - colour[v]
                queue.append(u)
            elif colour[u] == colour[v]:
                return None
    X = frozenset(v + 1 for v in range(g.n) if colour[v] == 0)
    Y = frozenset(v + 1 for v in range(g.n) if colour[v] == 1)
    return Bipartition(X, Y)


def spanning_tree(g: Graph) -> list[int]:
    """Edge indices of the BFS tree from vertex 1, in discovery order.

    Neighbours of each dequeued vertex are scanned in edge-index order.
    """
    _require_connected(g)
    adj = g.neighbors()
    seen = [False] * g.n
    seen[0] = True
    queue = deque([0])
    tree = []
    while queue:
        v = queue.popleft()
        for k, u in adj[v]:
            if not seen[u]:
                seen[u] = True
                tree.append(k)
                queue.append(u)
    return tree


def line_graph_degrees(g: Graph) -> np.ndarray:
    """Degree of every edge in the line graph: ``d_i + d_j - 2``."""
    d = g.degrees()
    return np.array([d[i - 1] + d[j - 1] - 2 for i, j in g.edges], dtype=int)


# --- named graphs -------------------------------------------------------------

def path(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(1, n)), name=f"P{n}")


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, tuple((i, i + 1) for i in range(1, n)) + ((1, n),), name=f"C{n}")


def complete(n: int) -> Graph:
    return Graph(n, tuple((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)), name=f"K{n}")


def star(k: int) -> Graph:
    """``K_{1,k}``: centre 1, leaves ``2..k+1``."""
    if k < 1:
        raise ValueError("a star needs at least one leaf")
    return Graph(k + 1, tuple((1, j) for j in range(2, k + 2)), name=f"K1,{k}")


def paw() -> Graph:
    """Triangle 1-2-4 with the leaf 3 hanging off vertex 4."""
    return Graph(4, ((1, 2), (1, 4), (2, 4), (3, 4)), name="paw")


def c4() -> Graph:
    """4-cycle 3-1-4-2-3, so the parts are {1,2} and {3,4}."""
    return Graph(4, ((1, 3), (1, 4), (2, 3), (2, 4)), name="C4")


def k4_minus_e() -> Graph:
    """``K_4`` without the edge {1,2}."""
    return Graph(4, ((1, 3), (1, 4), (2, 3), (2, 4), (3, 4)), name="K4-e")


def double_star(p: int, q: int) -> Graph:
    """Stars ``K_{1,p}`` and ``K_{1,q}`` joined at their centres.

    Edge order is the ``p`` left leaf edges, the bridge, then the ``q`` right
    leaf edges.  Left centre is vertex 1, right centre is vertex ``p + 2``.
    """
    left, right = 1, p + 2
    edges = [(left, 1 + a) for a in range(1, p + 1)]
    edges.append((left, right))
    edges += [(right, right + b) for b in range(1, q + 1)]
    return Graph(p + q + 2, tuple(edges), name=f"doublestar {p} {q}")


_NAMED = [
    (re.compile(r"^[Pp](\d+)$"), lambda mt: path(int(mt[1]))),
    (re.compile(r"^[Cc](\d+)$"), lambda mt: c4() if int(mt[1]) == 4 else cycle(int(mt[1]))),
    (re.compile(r"^[Kk]4-e$"), lambda mt: k4_minus_e()),
    (re.compile(r"^[Kk]1,(\d+)$"), lambda mt: star(int(mt[1]))),
    (re.compile(r"^[Kk](\d+)$"), lambda mt: complete(int(mt[1]))),
    (re.compile(r"^paw$", re.I), lambda mt: paw()),
    (re.compile(r"^doublestar\s+(\d+)\s+(\d+)$", re.I), lambda mt: double_star(int(mt[1]), int(mt[2]))),
]


def named_graph(spec: str) -> Graph:
    """Build a graph from shorthand such as ``P4``, ``K1,3``, ``K4-e`` or ``doublestar 3 3``.

    ``C4`` uses the labelling with parts {1,2}/{3,4}; other cycles are ``1-2-...-n-1``.
    """
    s = " ".join(spec.split())
    for pattern, build in _NAMED:
        mt = pattern.match(s)
        if mt:
            return build(mt)
    raise ValueError(f"unknown graph shorthand {spec!r}")


def parse_graph(text: str) -> Graph:
    """Parse the ``n m`` + edge-list text format, or a named shorthand."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.strip().splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty graph description")
    header = lines[0].split()
    if len(header) == 2 and all(tok.isdigit() for tok in header):
        n, m = int(header[0]), int(header[1])
        body = lines[1:]
        if len(body) != m:
            raise ValueError(f"header announces {m} edges, found {len(body)}")
        edges = []
        for ln in body:
            parts = ln.split()
            if len(parts) != 2:
                raise ValueError(f"bad edge line {ln!r}")
            edges.append((int(parts[0]), int(parts[1])))
        return Graph(n, tuple(edges))
    return named_graph(" ".join(lines))


def load_graph(source: str) -> Graph:
    """Accept either a path to a graph file or a named shorthand."""
    p = Path(source)
    if p.is_file():
        return parse_graph(p.read_text())
    return parse_graph(source)


def format_graph(g: Graph) -> str:
    return "\n".join([f"{g.n} {g.m}"] + [f"{i} {j}" for i, j in g.edges]) + "\n"


@dataclass(frozen=True)
class Family:
    """A named graph plus the family it belongs to (``path``, ``cycle``, ``complete``,
    ``star``, ``paw``, ``K4-e`` or ``doublestar``)."""

    kind: str
    graph: Graph

    @property
    def n(self) -> int:
        return self.graph.n


def family_of(spec: str | Graph) -> Family:
    """Resolve a shorthand (or a named :class:`Graph`) to its family."""
    g = spec if isinstance(spec, Graph) else named_graph(spec)
    name = g.name or ""
    if name == "paw":
        kind = "paw"
    elif name == "K4-e":
        kind = "K4-e"
    elif name.startswith("doublestar"):
        kind = "doublestar"
    elif name.startswith("K1,"):
        kind = "star"
    elif name.startswith("K"):
        kind = "complete"
    elif name.startswith("P"):
        kind = "path"
    elif name.startswith("C"):
        kind = "cycle"
    else:
        raise ValueError(f"graph {g} is not a named family")
    return Family(kind, g)
