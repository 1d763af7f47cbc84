"""Undirected graph representation and the spectral quantities gain design needs."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from .errors import ConfigError, NotConnected
from . import numerics


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on nodes 0..n_nodes-1.

    Edges are stored as (i, j) pairs with i < j; duplicates and self-loops
    are rejected.
    """

    n_nodes: int
    edges: tuple[tuple[int, int], ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.n_nodes < 1:
            raise ConfigError("graph needs at least one node")
        norm_edges = []
        seen = set()
        for e in self.edges:
            i, j = int(e[0]), int(e[1])
            if i == j:
                raise ConfigError(f"self-loop ({i}, {j}) not allowed")
            if not (0 <= i < self.n_nodes and 0 <= j < self.n_nodes):
                raise ConfigError(f"edge ({i}, {j}) out of range for {self.n_nodes} nodes")
            if i > j:
                i, j = j, i
            if (i, j) in seen:
                raise ConfigError(f"duplicate edge ({i}, {j})")
            seen.add((i, j))
            norm_edges.append((i, j))
        object.__setattr__(self, "edges", tuple(norm_edges))

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def neighbors(self, i: int) -> list[int]:
        out = []
        for a, b in self.edges:
            if a == i:
                out.append(b)
            elif b == i:
                out.append(a)
        return sorted(out)

    def degree_sum(self) -> int:
        """Sum over nodes of |N_i| (counts ordered neighbor pairs; equals 2E)."""
        return 2 * self.n_edges


def incidence_matrix(g: Graph) -> NDArray[np.float64]:
    """n_nodes x n_edges incidence matrix.

    Column k for edge (i, j) has +1 at row i and -1 at row j; the lower
    index is the tail. The Laplacian is invariant to this choice.
    """
    D = np.zeros((g.n_nodes, g.n_edges))
    for k, (i, j) in enumerate(g.edges):
        D[i, k] = 1.0
        D[j, k] = -1.0
    return D


def laplacian(g: Graph) -> NDArray[np.float64]:
    """Graph Laplacian: degree matrix minus adjacency matrix (= D D^T)."""
    L = np.zeros((g.n_nodes, g.n_nodes))
    for i, j in g.edges:
        L[i, i] += 1.0
        L[j, j] += 1.0
        L[i, j] -= 1.0
        L[j, i] -= 1.0
    return L


def is_connected(g: Graph) -> bool:
    """True iff every node pair is joined by a path (BFS from node 0)."""
    if g.n_nodes == 1:
        return True
    adj: list[list[int]] = [[] for _ in range(g.n_nodes)]
    for i, j in g.edges:
        adj[i].append(j)
        adj[j].append(i)
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == g.n_nodes


def lambda2(g: Graph) -> float:
    """Algebraic connectivity: second-smallest Laplacian eigenvalue.

    Raises NotConnected on disconnected graphs (the zero eigenvalue would
    not be simple).
    """
    if not is_connected(g):
        raise NotConnected("lambda2 requires a connected graph")
    vals, _ = numerics.sym_eig(laplacian(g))
    return float(vals[1])
