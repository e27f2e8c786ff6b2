"""Graph-Hamiltonicity proof over weak bit commitments.

The prover commits entry-wise to the adjacency matrix of a uniformly
permuted copy of the public graph (one weak commitment per matrix cell).
Challenge 0 opens everything along with the permutation; challenge 1
opens exactly the cells of the permuted witness cycle.  The verifier
measures every commitment qubit on arrival in a fresh random basis, so
its policy never depends on the challenge.

The canned-challenge simulator needs no witness: challenge 0 commits to a
permuted copy honestly, challenge 1 commits to the adjacency matrix of a
uniformly random cycle and opens that cycle.  Both branches reproduce the
honest verifier view exactly, because unopened weak commitments leave the
receiver with uniform noise regardless of the committed bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..bits import bits_to_int, int_to_bits, rand_bits
from ..commitments import WeakBcOpening, weak_bc_verify
from ..graphs import Graph, cycle_edges, edge_set_is_hamiltonian_cycle, is_hamiltonian_cycle
from ..qubits import QuantumMessage, measure_bb84, prepare_bb84
from .base import FirstMessage, XiProtocolSpec


@dataclass(frozen=True)
class HamRecord:
    """Receiver bases and outcomes, one row per matrix cell."""

    thetas: np.ndarray  # shape (n_cells, n_commit)
    outcomes: np.ndarray


@dataclass
class _HamState:
    sigma: np.ndarray
    matrix: np.ndarray  # committed adjacency bits, shape (n_v, n_v)
    x_strings: np.ndarray  # shape (n_cells, n_commit)
    cycle_cells: list[tuple[int, int]]  # upper-triangle cells of the permuted cycle


def _vertex_bits(n_v: int) -> int:
    return max(1, math.ceil(math.log2(n_v)))


def _commit_matrix(matrix: np.ndarray, n_commit: int, rng) -> tuple[QuantumMessage, np.ndarray]:
    n_v = matrix.shape[0]
    cells = n_v * n_v
    x = rand_bits(rng, cells * n_commit).reshape(cells, n_commit)
    bases = np.repeat(matrix.reshape(-1), n_commit)
    return prepare_bb84(x.reshape(-1), bases), x


def _response_lengths(n_v: int, n_commit: int) -> tuple[int, int]:
    vb = _vertex_bits(n_v)
    len0 = n_v * vb + n_v * n_v * n_commit
    len1 = n_v * (2 * vb + n_commit)
    return len0, len1


def ham_protocol(graph: Graph, witness: tuple[int, ...] | None = None, n_commit: int = 8) -> XiProtocolSpec:
    """Bind the protocol to a graph instance; witness enables the prover side."""
    if graph.n_vertices < 3:
        raise ValueError("need at least three vertices")
    if witness is not None and not is_hamiltonian_cycle(graph, witness):
        raise ValueError("witness is not a Hamiltonian cycle of the graph")

    n_v = graph.n_vertices
    vb = _vertex_bits(n_v)
    len0, len1 = _response_lengths(n_v, n_commit)
    response_len = max(len0, len1)
    adjacency = graph.adjacency_matrix()

    def commit_permuted(rng) -> _HamState:
        sigma = rng.permutation(n_v)
        permuted = graph.permuted(sigma)
        matrix = permuted.adjacency_matrix()
        cells = None
        if witness is not None:
            image = tuple(int(sigma[v]) for v in witness)
            cells = sorted(cycle_edges(image))
        msg, x = _commit_matrix(matrix, n_commit, rng)
        return _HamState(sigma, matrix, x, cells), msg

    def prove(rng):
        state, msg = commit_permuted(rng)
        return state, FirstMessage(msg)

    def respond(state: _HamState, challenge: int) -> np.ndarray:
        out = np.zeros(response_len, dtype=np.uint8)
        if challenge == 0:
            pos = 0
            for v in state.sigma:
                out[pos : pos + vb] = int_to_bits(int(v), vb)
                pos += vb
            flat = state.x_strings.reshape(-1)
            out[pos : pos + len(flat)] = flat
        else:
            if state.cycle_cells is None:
                raise ValueError("cannot answer the cycle challenge without a witness")
            pos = 0
            for u, v in state.cycle_cells:
                out[pos : pos + vb] = int_to_bits(u, vb)
                pos += vb
                out[pos : pos + vb] = int_to_bits(v, vb)
                pos += vb
                out[pos : pos + n_commit] = state.x_strings[u * n_v + v]
                pos += n_commit
        return out

    def receive_and_measure(first: FirstMessage, rng) -> HamRecord:
        msg = first.quantum
        thetas = rand_bits(rng, msg.length)
        outcomes = measure_bb84(msg, thetas, rng).outcome_bits
        return HamRecord(thetas.reshape(-1, n_commit), outcomes.reshape(-1, n_commit))

    def verify(record: HamRecord, challenge: int, response: np.ndarray) -> bool:
        if record.thetas.shape != (n_v * n_v, n_commit) or len(response) != response_len:
            return False
        if challenge == 0:
            pos = 0
            sigma = []
            for _ in range(n_v):
                sigma.append(bits_to_int(response[pos : pos + vb]))
                pos += vb
            if sorted(sigma) != list(range(n_v)):
                return False
            sigma = np.array(sigma)
            matrix = adjacency[np.argsort(sigma)][:, np.argsort(sigma)]
            # equivalent to permuting the graph: entry (sigma u, sigma v) = adj(u, v)
            for cell in range(n_v * n_v):
                x = response[pos : pos + n_commit]
                pos += n_commit
                opening = WeakBcOpening(int(matrix.reshape(-1)[cell]), x)
                if not weak_bc_verify(record.thetas[cell], record.outcomes[cell], opening):
                    return False
            return True
        if challenge == 1:
            pos = 0
            cells = []
            xs = []
            for _ in range(n_v):
                u = bits_to_int(response[pos : pos + vb])
                pos += vb
                v = bits_to_int(response[pos : pos + vb])
                pos += vb
                xs.append(response[pos : pos + n_commit])
                pos += n_commit
                if not (0 <= u < v < n_v):
                    return False
                cells.append((u, v))
            if len(set(cells)) != n_v:
                return False
            if not edge_set_is_hamiltonian_cycle(n_v, set(cells)):
                return False
            for (u, v), x in zip(cells, xs):
                cell = u * n_v + v
                opening = WeakBcOpening(1, x)
                if not weak_bc_verify(record.thetas[cell], record.outcomes[cell], opening):
                    return False
            return True
        return False

    def simulate(challenge: int, rng):
        if challenge == 0:
            state, msg = commit_permuted(rng)
            return FirstMessage(msg), respond(state, 0)
        cycle = tuple(int(v) for v in rng.permutation(n_v))
        cells = sorted(cycle_edges(cycle))
        matrix = np.zeros((n_v, n_v), dtype=np.uint8)
        for u, v in cells:
            matrix[u, v] = matrix[v, u] = 1
        msg, x = _commit_matrix(matrix, n_commit, rng)
        state = _HamState(np.arange(n_v), matrix, x, cells)
        return FirstMessage(msg), respond(state, 1)

    return XiProtocolSpec(
        protocol_id="hamiltonicity",
        challenge_len=1,
        response_len=response_len,
        prove=prove if witness is not None else None,
        respond=respond,
        receive_and_measure=receive_and_measure,
        verify=verify,
        simulate=simulate,
    )
