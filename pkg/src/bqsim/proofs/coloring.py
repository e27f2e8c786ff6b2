"""Graph 3-coloring in committed-round form, with selective opening.

The prover fixes a random proper coloring (the witness composed with a
uniform permutation of the three colors), commits to each vertex's color
before the challenge is delivered, then opens only the two endpoints of
the challenged edge.  Unopened commitments never reach the verifier, so
the verifier's view is two uniformly random distinct colors -- exactly
what the canned simulator produces, making the zero-knowledge exact.

Colors travel as two bits; the value 3 is invalid and rejected at
opening.  The challenge indexes the lexicographically sorted edge list in
ceil(lg m) bits, rejection-sampled below m.
"""

from __future__ import annotations

import math

import numpy as np

from ..bits import bits_to_int, int_to_bits
from ..graphs import Graph, is_proper_3_coloring
from .base import RoundProtocol, RoundSpec

_COLOR_BITS = 2


def _encode_color(c: int) -> np.ndarray:
    return int_to_bits(c, _COLOR_BITS)


def _decode_color(bits: np.ndarray) -> int:
    return bits_to_int(bits)


def challenge_bits(graph: Graph) -> int:
    return max(1, math.ceil(math.log2(graph.n_edges)))


def coloring_protocol(graph: Graph, witness=None) -> RoundProtocol:
    """Bind to a graph; witness is a proper 3-coloring enabling the prover."""
    if graph.n_edges < 1:
        raise ValueError("graph needs at least one edge")
    if witness is not None and not is_proper_3_coloring(graph, witness):
        raise ValueError("witness is not a proper 3-coloring")

    n_v = graph.n_vertices
    cbits = challenge_bits(graph)
    edges = graph.sorted_edges()
    rounds = [RoundSpec(_COLOR_BITS, 0) for _ in range(n_v - 1)]
    rounds.append(RoundSpec(_COLOR_BITS, cbits))

    class _Prover:
        def __init__(self, rng):
            perm = rng.permutation(3)
            self.colors = [int(perm[c]) for c in witness]

        def message(self, i: int, challenges) -> np.ndarray:
            if i == n_v + 1:
                return np.zeros(0, dtype=np.uint8)
            return _encode_color(self.colors[i - 1])

    def sample_challenge(i: int, rng) -> np.ndarray:
        if i < n_v:
            return np.zeros(0, dtype=np.uint8)
        while True:
            draw = rng.integers(0, 2, size=cbits, dtype=np.uint8)
            if bits_to_int(draw) < len(edges):
                return draw

    def _edge_from_challenges(challenges):
        idx = bits_to_int(challenges[-1])
        if idx >= len(edges):
            return None
        return edges[idx]

    def reveal_set(challenges) -> list[int]:
        edge = _edge_from_challenges(challenges)
        if edge is None:
            return []
        return [edge[0] + 1, edge[1] + 1]

    def verify_transcript(opened: dict[int, np.ndarray], final: np.ndarray, challenges) -> bool:
        edge = _edge_from_challenges(challenges)
        if edge is None or len(final) != 0:
            return False
        u, v = edge
        if set(opened) != {u + 1, v + 1}:
            return False
        cu, cv = _decode_color(opened[u + 1]), _decode_color(opened[v + 1])
        return cu in (0, 1, 2) and cv in (0, 1, 2) and cu != cv

    def simulate(challenges, rng):
        edge = _edge_from_challenges(challenges)
        if edge is None:
            raise ValueError("cannot simulate a malformed challenge")
        u, v = edge
        cu = int(rng.integers(0, 3))
        cv = int((cu + 1 + rng.integers(0, 2)) % 3)
        messages = {}
        for i in range(1, n_v + 1):
            vertex = i - 1
            if vertex == u:
                messages[i] = _encode_color(cu)
            elif vertex == v:
                messages[i] = _encode_color(cv)
            else:
                messages[i] = _encode_color(0)  # never revealed
        return messages, np.zeros(0, dtype=np.uint8)

    return RoundProtocol(
        protocol_id="three-coloring",
        rounds=rounds,
        final_len=0,
        new_prover=(lambda rng: _Prover(rng)) if witness is not None else None,
        sample_challenge=sample_challenge,
        reveal_set=reveal_set,
        verify_transcript=verify_transcript,
        simulate=simulate,
        soundness_error=None,
    )
