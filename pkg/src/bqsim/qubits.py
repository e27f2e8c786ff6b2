"""Conjugate-coding qubits.

Honest parties only ever prepare product states |x>_theta and measure them
on reception, which admits an exact classical simulation: a qubit measured
in its preparation basis reproduces its bit, and in the conjugate basis
yields a fresh fair coin while collapsing to the measured value.  That is
the symbolic path used by all protocol flows.

A dense statevector oracle backs the symbolic path for verification and
for adversarial strategies that store or entangle qubits (EPR halves,
purification attacks).  Dense states are capped at DENSE_CAP qubits; the
oracle exists for desk-scale checks, not for production runs.

Messages and states are treated as immutable; measurement returns new
values rather than mutating in place.  Global phase is ignored throughout
(comparisons go through fidelity).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bits import bits as as_bits

PLUS = 0  # computational basis "+"
TIMES = 1  # Hadamard basis "x"

DENSE_CAP = 14
_NORM_TOL = 1e-9

_H = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / np.sqrt(2.0)


class CapacityError(Exception):
    """Dense representation would exceed the configured qubit cap."""


@dataclass(frozen=True)
class DenseState:
    """Pure state on len(labels) qubits; amplitudes indexed big-endian by qubit."""

    amplitudes: np.ndarray
    labels: tuple[str, ...]

    def __post_init__(self):
        n = len(self.labels)
        if self.amplitudes.shape != (2**n,):
            raise ValueError("amplitude vector length must be 2**n")
        norm = np.linalg.norm(self.amplitudes)
        if abs(norm - 1.0) > _NORM_TOL:
            raise ValueError(f"state norm {norm} outside tolerance")

    @property
    def n(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class QuantumMessage:
    """A labelled run of qubits, in exactly one of two forms.

    Symbolic form: per-qubit (bit, basis) pairs.  Dense form: a DenseState.
    """

    qubit_bits: np.ndarray | None
    qubit_bases: np.ndarray | None
    dense: DenseState | None

    def __post_init__(self):
        if (self.dense is None) == (self.qubit_bits is None):
            raise ValueError("message must be exactly one of symbolic or dense")

    @classmethod
    def symbolic(cls, qubit_bits, qubit_bases) -> "QuantumMessage":
        b, t = as_bits(qubit_bits), as_bits(qubit_bases)
        if len(b) != len(t):
            raise ValueError("bit and basis strings must have equal length")
        return cls(b, t, None)

    @classmethod
    def from_dense(cls, state: DenseState) -> "QuantumMessage":
        return cls(None, None, state)

    @property
    def is_symbolic(self) -> bool:
        return self.dense is None

    @property
    def length(self) -> int:
        return len(self.qubit_bits) if self.is_symbolic else self.dense.n


@dataclass(frozen=True)
class MeasurementRecord:
    """Outcome of measuring a message: bits read, bases used, collapsed message."""

    outcome_bits: np.ndarray
    bases_used: np.ndarray
    collapsed: QuantumMessage


def prepare_bb84(x, theta) -> QuantumMessage:
    """Prepare |x>_theta as a symbolic message."""
    return QuantumMessage.symbolic(x, theta)


def measure_bb84(msg: QuantumMessage, bases, rng: np.random.Generator) -> MeasurementRecord:
    """Measure every qubit of msg in the given bases.

    Symbolic: matched-basis qubits reproduce their bit; mismatched ones give
    fresh fair coins and relabel to (outcome, measurement basis).  Dense:
    Born-rule sampling with collapse.
    """
    b = as_bits(bases)
    if len(b) != msg.length:
        raise ValueError("basis string length must equal message length")
    if msg.is_symbolic:
        coins = rng.integers(0, 2, size=len(b), dtype=np.uint8)
        outcome = np.where(b == msg.qubit_bases, msg.qubit_bits, coins).astype(np.uint8)
        collapsed = QuantumMessage.symbolic(outcome, b)
        return MeasurementRecord(outcome, b, collapsed)
    outcome, post = measure_dense(msg.dense, np.arange(msg.length), b, rng)
    return MeasurementRecord(outcome, b, QuantumMessage.from_dense(post))


def densify(msg: QuantumMessage, cap: int = DENSE_CAP) -> QuantumMessage:
    """Convert a symbolic message to its dense statevector form."""
    if not msg.is_symbolic:
        return msg
    n = msg.length
    if n > cap:
        raise CapacityError(f"{n} qubits exceeds dense cap {cap}")
    amps = np.ones(1, dtype=complex)
    for bit, basis in zip(msg.qubit_bits, msg.qubit_bases):
        q = np.zeros(2, dtype=complex)
        q[bit] = 1.0
        if basis == TIMES:
            q = _H @ q
        amps = np.kron(amps, q)
    labels = tuple(f"q{i}" for i in range(n))
    return QuantumMessage.from_dense(DenseState(amps, labels))


def epr_pairs(pair_count: int, cap: int = DENSE_CAP) -> DenseState:
    """N maximally entangled pairs on registers (P_i, V_i), P block first."""
    n = 2 * pair_count
    if n > cap:
        raise CapacityError(f"{n} qubits exceeds dense cap {cap}")
    amps = np.zeros(2**n, dtype=complex)
    # index layout: bits of P registers (high) then V registers (low)
    for p in range(2**pair_count):
        amps[(p << pair_count) | p] = 1.0
    amps /= np.linalg.norm(amps)
    labels = tuple(f"P{i}" for i in range(pair_count)) + tuple(f"V{i}" for i in range(pair_count))
    return DenseState(amps, labels)


def apply_hadamard_mask(state: DenseState, mask) -> DenseState:
    """Apply H to every qubit where mask is 1."""
    m = as_bits(mask)
    if len(m) != state.n:
        raise ValueError("mask length must equal qubit count")
    arr = state.amplitudes.reshape([2] * state.n)
    for q in np.flatnonzero(m):
        arr = np.moveaxis(np.tensordot(_H, arr, axes=([1], [int(q)])), 0, int(q))
    amps = arr.reshape(-1)
    amps = amps / np.linalg.norm(amps)
    return DenseState(amps, state.labels)


def _subset_probs(state: DenseState, qubit_idx: np.ndarray) -> np.ndarray:
    """Marginal computational-basis outcome probabilities on a qubit subset."""
    n = state.n
    probs = np.abs(state.amplitudes.reshape([2] * n)) ** 2
    keep = set(int(q) for q in qubit_idx)
    other = tuple(i for i in range(n) if i not in keep)
    marg = probs.sum(axis=other)
    # surviving axes are in ascending qubit order; permute to requested order
    ranks = np.argsort(np.argsort(qubit_idx))
    return np.transpose(marg, ranks).reshape(-1)


def subset_outcome_probs(state: DenseState, qubit_idx, bases) -> np.ndarray:
    """Exact Born probabilities for measuring qubit_idx in the given bases.

    Returned array is indexed big-endian by the order of qubit_idx.
    """
    idx = np.asarray(qubit_idx, dtype=int)
    b = as_bits(bases)
    if len(idx) != len(b):
        raise ValueError("one basis per measured qubit")
    mask = np.zeros(state.n, dtype=np.uint8)
    mask[idx[b == TIMES]] = 1
    rotated = apply_hadamard_mask(state, mask)
    return _subset_probs(rotated, idx)


def measure_dense(
    state: DenseState, qubit_idx, bases, rng: np.random.Generator
) -> tuple[np.ndarray, DenseState]:
    """Born-rule measurement of a qubit subset with collapse.

    Returns (outcome bits in qubit_idx order, post-measurement state on all
    qubits, with measured qubits left in their post-measurement basis state).
    """
    idx = np.asarray(qubit_idx, dtype=int)
    b = as_bits(bases)
    probs = subset_outcome_probs(state, idx, b)
    pick = int(rng.choice(len(probs), p=probs / probs.sum()))
    outcome = np.array([(pick >> (len(idx) - 1 - i)) & 1 for i in range(len(idx))], dtype=np.uint8)
    return outcome, postselect(state, idx, b, outcome)


def postselect(state: DenseState, qubit_idx, bases, outcome) -> DenseState:
    """Project onto the given outcome of measuring qubit_idx in bases; renormalize."""
    idx = np.asarray(qubit_idx, dtype=int)
    b, o = as_bits(bases), as_bits(outcome)
    mask = np.zeros(state.n, dtype=np.uint8)
    mask[idx[b == TIMES]] = 1
    rotated = apply_hadamard_mask(state, mask)
    arr = rotated.amplitudes.reshape([2] * state.n).copy()
    for q, bit in zip(idx, o):
        sel = [slice(None)] * state.n
        sel[int(q)] = 1 - int(bit)
        arr[tuple(sel)] = 0.0
    flat = arr.reshape(-1)
    norm = np.linalg.norm(flat)
    if norm < 1e-12:
        raise ValueError("post-selection on a zero-probability outcome")
    projected = DenseState(flat / norm, state.labels)
    return apply_hadamard_mask(projected, mask)


def symbolic_outcome_probs(msg: QuantumMessage, bases) -> np.ndarray:
    """Exact outcome distribution of measuring a symbolic message in bases.

    Product rule: a matched-basis qubit is a point mass on its bit, a
    mismatched one is a fair coin.  Indexed big-endian like the dense oracle.
    """
    if not msg.is_symbolic:
        raise ValueError("symbolic message required")
    b = as_bits(bases)
    if len(b) != msg.length:
        raise ValueError("basis string length must equal message length")
    probs = np.ones(1)
    for bit, basis, meas in zip(msg.qubit_bits, msg.qubit_bases, b):
        if basis == meas:
            q = np.zeros(2)
            q[bit] = 1.0
        else:
            q = np.array([0.5, 0.5])
        probs = np.kron(probs, q)
    return probs


def fidelity(a: DenseState, b: DenseState) -> float:
    """|<a|b>|^2; insensitive to global phase."""
    if a.n != b.n:
        raise ValueError("qubit counts differ")
    return float(np.abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2)
