"""Explicit Erdős–Rényi graphs and the vertex-level greedy exploration on them."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .model import ModelParams, ParameterError, rng_from_seed

__all__ = [
    "Graph",
    "ExplorationRecord",
    "sample_er_graph",
    "greedy_explore",
    "verify_independent_maximal",
    "read_edge_list",
    "write_edge_list",
    "enumerate_stop_time_law",
]


class Graph:
    """Simple undirected graph on vertices ``0..n-1`` with sorted adjacency lists."""

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ParameterError("vertex count must be >= 0")
        self.n = int(n)
        pairs = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ParameterError(f"self-loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in pairs:
                raise ParameterError(f"duplicate edge {key}")
            pairs.add(key)
        self._edges = tuple(sorted(pairs))
        adj = [[] for _ in range(self.n)]
        for u, v in self._edges:
            adj[u].append(v)
            adj[v].append(u)
        self.adjacency = tuple(tuple(sorted(a)) for a in adj)

    @classmethod
    def _from_sorted_edges(cls, n: int, us: np.ndarray, vs: np.ndarray) -> "Graph":
        # trusted fast path: us < vs, no duplicates, lexicographically sorted
        g = cls.__new__(cls)
        g.n = int(n)
        g._edges = tuple(zip(us.tolist(), vs.tolist()))
        src = np.concatenate([us, vs])
        dst = np.concatenate([vs, us])
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        bounds = np.searchsorted(src, np.arange(n + 1))
        dst_list = dst.tolist()
        g.adjacency = tuple(tuple(dst_list[bounds[i]:bounds[i + 1]]) for i in range(n))
        return g

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    @property
    def m(self) -> int:
        return len(self._edges)

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self._edges == other._edges

    def __hash__(self):
        return hash((self.n, self._edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class ExplorationRecord:
    active: tuple[int, ...]
    blocked: frozenset
    z_steps: tuple[int, ...]

    @property
    def stop_time(self) -> int:
        return len(self.active)


def _pair_from_index(k: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Map linear indices to pairs ``(u, v)``, ``u < v``, enumerated as (0,1), (0,2), (1,2), (0,3), ...

    Index ``k`` belongs to column ``v`` with ``v(v-1)/2 <= k < v(v+1)/2``.
    """
    v = np.floor((1.0 + np.sqrt(1.0 + 8.0 * k.astype(float))) / 2.0).astype(np.int64)
    # integer correction of the float sqrt
    v = np.where(v * (v - 1) // 2 > k, v - 1, v)
    v = np.where((v + 1) * v // 2 <= k, v + 1, v)
    u = k - v * (v - 1) // 2
    return u, v


def sample_er_graph(params: ModelParams, seed: int) -> Graph:
    """Sample G(n, c/n) by geometric skipping over the pair enumeration.

    Each of the ``n(n-1)/2`` pairs is present independently with probability
    ``p = c/n``; the gaps between successive present pairs are geometric, so
    the cost is proportional to ``n + #edges``.
    """
    n = params.require_n()
    p = params.p
    rng = rng_from_seed(seed)
    total = n * (n - 1) // 2
    if total == 0:
        return Graph(n)
    if p >= 1.0:
        k = np.arange(total, dtype=np.int64)
    else:
        chunks = []
        pos = -1
        batch = max(16, int(total * p * 1.1 + 10 * math.sqrt(total * p) + 16))
        while True:
            gaps = rng.geometric(p, size=batch)
            idx = pos + np.cumsum(gaps)
            if idx[-1] >= total:
                chunks.append(idx[idx < total])
                break
            chunks.append(idx)
            pos = int(idx[-1])
        k = np.concatenate(chunks).astype(np.int64)
    u, v = _pair_from_index(k)
    order = np.lexsort((v, u))
    return Graph._from_sorted_edges(n, u[order], v[order])


def greedy_explore(graph: Graph, seed: Optional[int] = None,
                   selection: Optional[Sequence[int]] = None) -> ExplorationRecord:
    """Greedy exploration: activate a uniform unexplored vertex, block its unexplored neighbours.

    Parameters
    ----------
    graph : Graph
    seed : int, optional
        Seed of the selection stream.
    selection : sequence of int, optional
        Force the activation order. Entry ``i`` must be unexplored when step
        ``i`` runs; once the sequence is exhausted, selection falls back to
        uniform picks from ``seed``.

    Notes
    -----
    Unexplored vertices live in a compaction array with an inverse position
    index, giving O(1) uniform picks and O(1) removals.
    """
    n = graph.n
    adj = graph.adjacency
    pool = list(range(n))
    where = list(range(n))
    size = n
    rng = rng_from_seed(seed) if seed is not None else None
    forced = list(selection) if selection is not None else []

    def remove(w):
        nonlocal size
        i = where[w]
        last = pool[size - 1]
        pool[i] = last
        where[last] = i
        pool[size - 1] = w
        where[w] = size - 1
        size -= 1

    def unexplored(w):
        return where[w] < size

    active = []
    blocked = []
    z = [0]
    step = 0
    while size:
        if step < len(forced):
            v = int(forced[step])
            if not (0 <= v < n) or not unexplored(v):
                raise ParameterError(f"forced selection {v} is not unexplored at step {step}")
        else:
            if rng is None:
                raise ParameterError("a seed is needed once the forced selection runs out")
            v = pool[int(rng.integers(size))]
        remove(v)
        active.append(v)
        for w in adj[v]:
            if unexplored(w):
                remove(w)
                blocked.append(w)
        z.append(n - size)
        step += 1
    return ExplorationRecord(active=tuple(active), blocked=frozenset(blocked), z_steps=tuple(z))


def verify_independent_maximal(graph: Graph, vertex_set) -> dict:
    """Check independence and maximality of ``vertex_set`` in ``graph``.

    Returns ``{"independent": bool, "maximal": bool}``; maximal implies independent.
    """
    s = set(int(v) for v in vertex_set)
    for v in s:
        if not 0 <= v < graph.n:
            raise ParameterError(f"vertex {v} out of range for n={graph.n}")
    adj = graph.adjacency
    independent = all(w not in s for v in s for w in adj[v])
    maximal = independent and all(
        v in s or any(w in s for w in adj[v]) for v in range(graph.n))
    return {"independent": independent, "maximal": maximal}


def write_edge_list(graph: Graph, fh) -> None:
    """Write ``n m`` then one sorted ``u v`` line per edge."""
    fh.write(f"{graph.n} {graph.m}\n")
    for u, v in graph.edges:
        fh.write(f"{u} {v}\n")


def read_edge_list(fh) -> Graph:
    header = fh.readline().split()
    if len(header) != 2:
        raise ParameterError("edge list must start with 'n m'")
    n, m = int(header[0]), int(header[1])
    edges = []
    for line in fh:
        if not line.strip():
            continue
        u, v = line.split()
        edges.append((int(u), int(v)))
    if len(edges) != m:
        raise ParameterError(f"header announces {m} edges, found {len(edges)}")
    return Graph(n, edges)


def enumerate_stop_time_law(n: int, p) -> dict[int, Fraction]:
    """Exact law of the greedy stop time on G(n, p) by brute-force enumeration.

    Sums over all ``2^(n(n-1)/2)`` graphs, each weighted by its edge
    probabilities, and over every selection history (each unexplored vertex
    chosen with probability ``1/|U|``). Rational ``p`` gives an exact result.
    Feasible for ``n <= 5``.
    """
    p = Fraction(p)
    pairs = list(itertools.combinations(range(n), 2))
    law: dict[int, Fraction] = {}

    def walk(adj, unexplored, steps, weight):
        if not unexplored:
            law[steps] = law.get(steps, Fraction(0)) + weight
            return
        share = weight / len(unexplored)
        for v in unexplored:
            walk(adj, unexplored - {v} - adj[v], steps + 1, share)

    for mask in range(1 << len(pairs)):
        adj = [set() for _ in range(n)]
        weight = Fraction(1)
        for i, (u, v) in enumerate(pairs):
            if mask >> i & 1:
                adj[u].add(v)
                adj[v].add(u)
                weight *= p
            else:
                weight *= 1 - p
        if weight:
            walk([frozenset(a) for a in adj], frozenset(range(n)), 0, weight)
    return dict(sorted(law.items()))
