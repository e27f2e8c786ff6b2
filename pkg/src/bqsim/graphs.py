"""Simple undirected graphs, Hamiltonian cycles, and 3-colorings."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def _norm_edge(u: int, v: int) -> tuple[int, int]:
    if u == v:
        raise ValueError("self-loops are not allowed")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n_vertices: int
    edges: frozenset[tuple[int, int]]

    @classmethod
    def from_edges(cls, n_vertices: int, edges) -> "Graph":
        norm = frozenset(_norm_edge(u, v) for u, v in edges)
        for u, v in norm:
            if not (0 <= u < n_vertices and 0 <= v < n_vertices):
                raise ValueError("edge endpoint out of range")
        return cls(n_vertices, norm)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return _norm_edge(u, v) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def adjacency_matrix(self) -> np.ndarray:
        m = np.zeros((self.n_vertices, self.n_vertices), dtype=np.uint8)
        for u, v in self.edges:
            m[u, v] = m[v, u] = 1
        return m

    def permuted(self, sigma: np.ndarray) -> "Graph":
        """Relabel vertex v to sigma[v]."""
        return Graph.from_edges(
            self.n_vertices, ((int(sigma[u]), int(sigma[v])) for u, v in self.edges)
        )


def triangle() -> Graph:
    return Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle_edges(cycle: tuple[int, ...]) -> set[tuple[int, int]]:
    n = len(cycle)
    return {_norm_edge(cycle[i], cycle[(i + 1) % n]) for i in range(n)}


def is_hamiltonian_cycle(graph: Graph, cycle: tuple[int, ...]) -> bool:
    if len(cycle) != graph.n_vertices or len(set(cycle)) != graph.n_vertices:
        return False
    if graph.n_vertices < 3:
        return False
    return all(e in graph.edges for e in cycle_edges(cycle))


def edge_set_is_hamiltonian_cycle(n_vertices: int, edges: set[tuple[int, int]]) -> bool:
    """Do these undirected edges form a single cycle through every vertex?"""
    if len(edges) != n_vertices or n_vertices < 3:
        return False
    adj: dict[int, list[int]] = {v: [] for v in range(n_vertices)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    if any(len(nb) != 2 for nb in adj.values()):
        return False
    # walk the cycle; it must close after visiting every vertex exactly once
    start, prev, cur, steps = 0, None, 0, 0
    while True:
        a, b = adj[cur]
        nxt = b if a == prev else a
        prev, cur = cur, nxt
        steps += 1
        if cur == start:
            return steps == n_vertices


def random_cycle(n_vertices: int, rng: np.random.Generator) -> tuple[int, ...]:
    """Uniform Hamiltonian cycle on [n_vertices], as a vertex order."""
    return tuple(int(v) for v in rng.permutation(n_vertices))


def random_hamiltonian_graph(
    n_vertices: int, extra_edges: int, rng: np.random.Generator
) -> tuple[Graph, tuple[int, ...]]:
    """Cycle-first construction with decoy edges; the witness is known by build."""
    cycle = random_cycle(n_vertices, rng)
    edges = set(cycle_edges(cycle))
    candidates = [
        (u, v)
        for u in range(n_vertices)
        for v in range(u + 1, n_vertices)
        if (u, v) not in edges
    ]
    rng.shuffle(candidates)
    edges.update(candidates[:extra_edges])
    return Graph.from_edges(n_vertices, edges), cycle


def two_witness_graph() -> tuple[Graph, tuple[int, ...], tuple[int, ...]]:
    """A 5-vertex graph carrying two distinct Hamiltonian cycles."""
    w1 = (0, 1, 2, 3, 4)
    w2 = (0, 2, 1, 3, 4)
    g = Graph.from_edges(5, cycle_edges(w1) | cycle_edges(w2))
    assert is_hamiltonian_cycle(g, w1) and is_hamiltonian_cycle(g, w2)
    return g, w1, w2


def non_hamiltonian_graph() -> Graph:
    """A 4-vertex claw plus one extra edge: connected, no Hamiltonian cycle."""
    g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2)])
    return g


def is_proper_3_coloring(graph: Graph, colors) -> bool:
    if len(colors) != graph.n_vertices or any(c not in (0, 1, 2) for c in colors):
        return False
    return all(colors[u] != colors[v] for u, v in graph.edges)
