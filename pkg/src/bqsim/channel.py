"""Ordered delivery with memory-bound enforcement.

A SessionChannel delivers items to the receiving party strictly in the
order the protocol box prescribes and refuses to hand anything out past an
unacknowledged memory-bound marker.  Acknowledging a marker declares the
quantum retention at that point, which must fit inside the party's q-qubit
budget; otherwise the game or session is invalidated rather than silently
continued.

The channel also accumulates the canonical transcript as a side effect, so
session runners never build event lists by hand.
"""

from __future__ import annotations

from dataclasses import dataclass

from .qubits import QuantumMessage
from .transcript import KIND_BOUND, KIND_CLASSICAL, KIND_QUANTUM, Transcript


class ProtocolViolation(Exception):
    """A party tried to read past an undelivered boundary or broke its bound."""


@dataclass
class _Pending:
    kind: str
    payload: object


class SessionChannel:
    """One-directional ordered queue with bound markers.

    q is the receiving party's qubit budget at bound markers; retained
    quantum state is declared via acknowledge_bound.
    """

    def __init__(self, transcript: Transcript, direction: str, q: int = 0):
        self.transcript = transcript
        self.direction = direction
        self.q = q
        self._queue: list[_Pending] = []
        self._bound_pending = False
        self.bound_checks: list[int] = []

    # -- sender side -------------------------------------------------------

    def send_quantum(self, msg: QuantumMessage, payload: bytes) -> None:
        """Queue a quantum message; payload is its symbolic rendering for the record."""
        self.transcript.add(self.direction, KIND_QUANTUM, payload)
        self._queue.append(_Pending(KIND_QUANTUM, msg))

    def send_classical(self, payload: bytes, item: object = None) -> None:
        self.transcript.add(self.direction, KIND_CLASSICAL, payload)
        self._queue.append(_Pending(KIND_CLASSICAL, item if item is not None else payload))

    def bound_marker(self) -> None:
        self.transcript.add(self.direction, KIND_BOUND)
        self._queue.append(_Pending(KIND_BOUND, None))

    # -- receiver side -----------------------------------------------------

    def receive(self) -> object:
        """Next delivered item; raises if none is due or a bound is unacknowledged."""
        if self._bound_pending:
            raise ProtocolViolation("memory bound must be acknowledged before reading on")
        if not self._queue:
            raise ProtocolViolation("read past the last delivered message")
        item = self._queue.pop(0)
        if item.kind == KIND_BOUND:
            self._bound_pending = True
            return BOUND_MARKER
        return item.payload

    def acknowledge_bound(self, retained_qubits: int) -> None:
        """Declare quantum retention at the pending marker; enforce the budget."""
        if not self._bound_pending:
            raise ProtocolViolation("no memory bound is pending")
        if retained_qubits > self.q:
            raise ProtocolViolation(
                f"retained {retained_qubits} qubits across a memory bound with q={self.q}"
            )
        self.bound_checks.append(retained_qubits)
        self._bound_pending = False

    def drained(self) -> bool:
        return not self._queue and not self._bound_pending


class _BoundToken:
    def __repr__(self):
        return "<memory-bound>"


BOUND_MARKER = _BoundToken()


def retained_qubit_count(state) -> int:
    """Qubit budget consumed by a retained object.

    None or classical data costs nothing; a quantum message costs its qubit
    count; a dense state costs its register count.
    """
    if state is None:
        return 0
    if isinstance(state, QuantumMessage):
        return state.length
    n = getattr(state, "n", None)
    if n is not None:
        return int(n)
    return 0
