"""Quantum bit and string commitments for memory-bounded committers.

Three schemes, all built on conjugate coding:

* dfss: the receiver prepares |x>_theta; committing to b means measuring
  every qubit in basis b.  Opening sends (b, x') and the receiver checks
  agreement wherever theta_i = b.  Hiding is perfect by construction --
  no data flows from the committer before the reveal.
* weak: roles reversed -- the committer prepares |x>_b and the receiver
  measures immediately in a random basis.  Binding only holds in the
  weaker simultaneous-opening sense (see adversary.weak_bc_sum_binding_oracle).
* abo: a string commitment generalizing dfss, where the measurement basis
  for string a is the codeword G a of a linear code; the code's minimum
  distance keeps the bases of distinct strings far apart.

Verification is total: malformed openings are rejected, never raised.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bits import bits as as_bits
from .bits import rand_bits
from .codes import GeneratorMatrix
from .qubits import (
    DENSE_CAP,
    QuantumMessage,
    apply_hadamard_mask,
    densify,
    measure_bb84,
    prepare_bb84,
)


@dataclass(frozen=True)
class DfssReceiverReceipt:
    """Receiver's secret preparation data; withheld until verification."""

    x: np.ndarray
    theta: np.ndarray


@dataclass(frozen=True)
class DfssOpening:
    b: int
    x_prime: np.ndarray


@dataclass(frozen=True)
class WeakBcOpening:
    b: int
    x: np.ndarray


@dataclass(frozen=True)
class AboOpening:
    a: np.ndarray
    z: np.ndarray


# -- dfss bit commitment ----------------------------------------------------


def dfss_prepare(n: int, rng: np.random.Generator) -> tuple[QuantumMessage, DfssReceiverReceipt]:
    if n < 1:
        raise ValueError("n must be positive")
    x, theta = rand_bits(rng, n), rand_bits(rng, n)
    return prepare_bb84(x, theta), DfssReceiverReceipt(x, theta)


def dfss_commit(b: int, msg: QuantumMessage, rng: np.random.Generator) -> np.ndarray:
    """Commit to bit b by measuring every qubit in basis b; returns x'."""
    bases = np.full(msg.length, b, dtype=np.uint8)
    return measure_bb84(msg, bases, rng).outcome_bits


def dfss_verify(receipt: DfssReceiverReceipt, opening: DfssOpening) -> bool:
    if opening.b not in (0, 1):
        return False
    xp = np.asarray(opening.x_prime)
    if xp.shape != receipt.x.shape:
        return False
    checked = receipt.theta == opening.b
    return bool(np.all(xp[checked] == receipt.x[checked]))


def dfss_string_prepare(
    m: int, n: int, rng: np.random.Generator
) -> tuple[list[QuantumMessage], list[DfssReceiverReceipt]]:
    pairs = [dfss_prepare(n, rng) for _ in range(m)]
    return [p[0] for p in pairs], [p[1] for p in pairs]


def dfss_string_commit(
    a, msgs: list[QuantumMessage], rng: np.random.Generator
) -> list[DfssOpening]:
    """Bit-wise commitment to the string a, one message per bit."""
    v = as_bits(a)
    if len(v) != len(msgs):
        raise ValueError("one quantum message per committed bit")
    return [DfssOpening(int(bit), dfss_commit(int(bit), msg, rng)) for bit, msg in zip(v, msgs)]


def dfss_string_verify(receipts: list[DfssReceiverReceipt], openings: list[DfssOpening]) -> bool:
    if len(receipts) != len(openings):
        return False
    return all(dfss_verify(r, o) for r, o in zip(receipts, openings))


@dataclass(frozen=True)
class PackedStringReceipt:
    """Receiver data for an m-bit string commitment, one row per bit."""

    x: np.ndarray  # shape (m, n)
    theta: np.ndarray


def dfss_string_prepare_packed(
    m: int, n: int, rng: np.random.Generator
) -> tuple[QuantumMessage, PackedStringReceipt]:
    """Whole string commitment register as one m*n-qubit message.

    Equivalent to m independent preparations; the packed layout keeps
    long-string sessions to a handful of array operations.
    """
    x = rand_bits(rng, m * n)
    theta = rand_bits(rng, m * n)
    return prepare_bb84(x, theta), PackedStringReceipt(x.reshape(m, n), theta.reshape(m, n))


def dfss_string_commit_packed(a, msg: QuantumMessage, rng: np.random.Generator) -> np.ndarray:
    """Measure row j in constant basis a_j; returns outcomes of shape (m, n)."""
    v = as_bits(a)
    if msg.length % len(v):
        raise ValueError("message length must be a multiple of the string length")
    n = msg.length // len(v)
    bases = np.repeat(v, n)
    return measure_bb84(msg, bases, rng).outcome_bits.reshape(len(v), n)


def dfss_string_verify_packed(receipt: PackedStringReceipt, a, x_prime: np.ndarray) -> bool:
    v = np.asarray(a)
    if v.shape != (receipt.x.shape[0],) or x_prime.shape != receipt.x.shape:
        return False
    if v.size and v.max() > 1:
        return False
    checked = receipt.theta == v[:, None]
    return bool(np.all((x_prime == receipt.x) | ~checked))


# -- weak bit commitment ----------------------------------------------------


def weak_bc_commit(b: int, n: int, rng: np.random.Generator) -> tuple[QuantumMessage, WeakBcOpening]:
    """Commit to b by preparing a fresh random x in basis b everywhere."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if b not in (0, 1):
        raise ValueError("committed value must be a bit")
    x = rand_bits(rng, n)
    msg = prepare_bb84(x, np.full(n, b, dtype=np.uint8))
    return msg, WeakBcOpening(b, x)


def weak_bc_receive(msg: QuantumMessage, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Measure on reception in a fresh random basis; storage-free receiver."""
    theta = rand_bits(rng, msg.length)
    return theta, measure_bb84(msg, theta, rng).outcome_bits


def weak_bc_verify(theta: np.ndarray, x_prime: np.ndarray, opening: WeakBcOpening) -> bool:
    if opening.b not in (0, 1):
        return False
    x = np.asarray(opening.x)
    if x.shape != x_prime.shape or x.shape != theta.shape:
        return False
    checked = theta == opening.b
    return bool(np.all(x[checked] == x_prime[checked]))


# -- all-but-one string commitment ------------------------------------------


def code_bases(code: GeneratorMatrix, a) -> np.ndarray:
    """Basis mask for committing to a: the codeword G a."""
    return code.encode(a)


def abo_prepare(code: GeneratorMatrix, rng: np.random.Generator) -> tuple[QuantumMessage, DfssReceiverReceipt]:
    return dfss_prepare(code.rows, rng)


def abo_commit(a, code: GeneratorMatrix, msg: QuantumMessage, rng: np.random.Generator) -> AboOpening:
    """Commit to string a by measuring qubit i in basis (G a)_i."""
    v = as_bits(a)
    if msg.length != code.rows:
        raise ValueError("message length must equal the codeword length")
    z = measure_bb84(msg, code_bases(code, v), rng).outcome_bits
    return AboOpening(v, z)


def abo_verify(receipt: DfssReceiverReceipt, code: GeneratorMatrix, opening: AboOpening) -> bool:
    a = np.asarray(opening.a)
    z = np.asarray(opening.z)
    if len(a) != code.cols or z.shape != receipt.x.shape:
        return False
    mask = code_bases(code, a)
    checked = receipt.theta == mask
    return bool(np.all(z[checked] == receipt.x[checked]))


def basis_overlap(code: GeneratorMatrix, dense_check_cap: int = DENSE_CAP) -> float:
    """Maximal overlap between basis vectors of two distinct committed strings.

    Equals 2^(-w/2) where w is the minimum weight of a nonzero codeword;
    for codeword length within the dense cap the value is cross-checked
    against explicit statevector inner products.
    """
    c = 2.0 ** (-code.distance / 2)
    if code.rows <= dense_check_cap:
        numeric = _overlap_dense(code)
        if abs(numeric - c) > 1e-9:
            raise AssertionError(
                f"dense overlap {numeric} disagrees with 2^(-d/2) = {c}"
            )
    return c


def _overlap_dense(code: GeneratorMatrix) -> float:
    """max |<x|_a |y>_a'| over strings x, y and distinct messages a, a'.

    The overlap depends only on the mask difference, so it suffices to take
    |x> = |y> = |0...0> rotated by each mask and scan nonzero codewords.
    """
    n_qubits = code.rows
    worst = 0.0
    zero = prepare_bb84(np.zeros(n_qubits, dtype=np.uint8), np.zeros(n_qubits, dtype=np.uint8))
    base = densify(zero, cap=n_qubits).dense
    for a in range(1, 2**code.cols):
        v = np.array([(a >> (code.cols - 1 - i)) & 1 for i in range(code.cols)], dtype=np.uint8)
        mask = code.encode(v)
        rotated = apply_hadamard_mask(base, mask)
        worst = max(worst, float(np.max(np.abs(rotated.amplitudes))))
    return worst


def basis_overlap_formula_only(code: GeneratorMatrix) -> float:
    """2^(-d/2) without the dense cross-check, for codes over the cap."""
    return 2.0 ** (-code.distance / 2)


__all__ = [
    "AboOpening",
    "DfssOpening",
    "DfssReceiverReceipt",
    "WeakBcOpening",
    "abo_commit",
    "abo_prepare",
    "abo_verify",
    "basis_overlap",
    "basis_overlap_formula_only",
    "code_bases",
    "dfss_commit",
    "dfss_prepare",
    "dfss_string_commit",
    "dfss_string_prepare",
    "dfss_string_verify",
    "dfss_verify",
    "weak_bc_commit",
    "weak_bc_receive",
    "weak_bc_verify",
]
