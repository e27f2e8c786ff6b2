"""Protocol interfaces consumed by the two compilers.

XiProtocolSpec is a three-message proof with a quantum (or quantum plus
classical) first message, a short uniform challenge, and a classical
response of fixed bit length.  The verifier is receive-and-measure: its
measurement policy for the first message cannot depend on the challenge.

RoundProtocol is a k-round public-coin proof in the shape used by the
round-collapse compiler: prover messages a_1..a_{k+1}, with a_i committed
before challenge c_i is read, and a declared reveal policy saying which
committed messages the final verification opens.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..qubits import QuantumMessage


@dataclass(frozen=True)
class FirstMessage:
    """Prover's opening move: qubits, plus an optional classical component."""

    quantum: QuantumMessage
    classical: np.ndarray | None = None


@dataclass
class XiProtocolSpec:
    """Three-message protocol bound to one instance (and witness, if proving).

    prove(rng) -> (state, FirstMessage); None when no witness is available.
    respond(state, challenge) -> response bits of length response_len.
    receive_and_measure(first, rng) -> opaque measurement record; the basis
    policy is fixed, never challenge-dependent.
    verify(record, challenge, response) -> bool, total on garbage input.
    simulate(challenge, rng) -> (FirstMessage, response) whose verifier view
    matches an honest run with that challenge.
    """

    protocol_id: str
    challenge_len: int
    response_len: int
    prove: Callable | None
    respond: Callable
    receive_and_measure: Callable
    verify: Callable
    simulate: Callable


@dataclass(frozen=True)
class RoundSpec:
    commit_len: int
    challenge_len: int  # zero means no challenge follows this commitment


@dataclass
class RoundProtocol:
    """k-round public-coin proof in committed-message form.

    new_prover(rng) returns a session object with message(i, challenges)
    -> bits, where challenges holds c_1..c_{i-1} only; i = k+1 asks for the
    final uncommitted message.  reveal_set(challenges) lists the 1-based
    rounds the prover opens.  simulate produces messages for every round
    from the challenge vector alone.
    """

    protocol_id: str
    rounds: list[RoundSpec]
    final_len: int
    new_prover: Callable | None
    sample_challenge: Callable
    reveal_set: Callable
    verify_transcript: Callable
    simulate: Callable | None = None
    soundness_error: float | None = None

    @property
    def k(self) -> int:
        return len(self.rounds)


def uniform_challenge(bits_len: int):
    def sample(_i: int, rng: np.random.Generator) -> np.ndarray:
        return rng.integers(0, 2, size=bits_len, dtype=np.uint8)

    return sample


def reveal_everything(protocol_rounds: int):
    def reveal(_challenges) -> list[int]:
        return list(range(1, protocol_rounds + 1))

    return reveal
