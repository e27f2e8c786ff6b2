"""Non-interactive 1-out-of-2 oblivious transfer for memory-bounded receivers.

One message, sender to receiver: n conjugate-coded qubits, then -- after
the memory bound -- the bases, two fresh universal hashes, and the two
masked secrets.  The receiver measures everything in its choice basis c on
arrival and unmasks slot c.  Privacy of the other slot rests on the
receiver's storage bound; the quantitative bound is

    k * 2^(-n/4 + ell + q)

for k parallel instances with the same sender, ell-bit secrets, and a
q-qubit receiver.  Same-sender parallel repetition sends every quantum
part before the single memory bound, then every classical part.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bits import bits as as_bits
from .bits import rand_bits
from .hashing import UniversalHash, apply_hash, sample_hash
from .qubits import QuantumMessage, measure_bb84, prepare_bb84


@dataclass(frozen=True)
class OtClassicalPart:
    theta: np.ndarray
    h0: UniversalHash
    h1: UniversalHash
    m0: np.ndarray
    m1: np.ndarray


@dataclass(frozen=True)
class OtSenderSecret:
    """Sender-side record: the raw string and its basis-partitioned halves."""

    x: np.ndarray
    x_plus: np.ndarray
    x_times: np.ndarray


def split_by_basis(x: np.ndarray, theta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return x[theta == 0], x[theta == 1]


def pad_to(v: np.ndarray, n: int) -> np.ndarray:
    """Zero-pad a basis-partitioned substring to the fixed hash input length."""
    out = np.zeros(n, dtype=np.uint8)
    out[: len(v)] = v
    return out


def ot_send(
    s0, s1, n: int, rng: np.random.Generator
) -> tuple[QuantumMessage, OtClassicalPart, OtSenderSecret]:
    """Sender's whole flow; quantum part must be delivered before the classical part."""
    v0, v1 = as_bits(s0), as_bits(s1)
    ell = len(v0)
    if len(v1) != ell:
        raise ValueError("secrets must have equal length")
    if ell < 1:
        raise ValueError("secrets must be at least one bit")
    if n < 4 * ell:
        raise ValueError(f"n={n} too small for ell={ell}; need n >= 4*ell")
    x, theta = rand_bits(rng, n), rand_bits(rng, n)
    msg = prepare_bb84(x, theta)
    x_plus, x_times = split_by_basis(x, theta)
    h0, h1 = sample_hash(n, ell, rng), sample_hash(n, ell, rng)
    m0 = np.bitwise_xor(v0, apply_hash(h0, pad_to(x_plus, n)))
    m1 = np.bitwise_xor(v1, apply_hash(h1, pad_to(x_times, n)))
    return msg, OtClassicalPart(theta, h0, h1, m0, m1), OtSenderSecret(x, x_plus, x_times)


def ot_receive(
    c: int, qmsg: QuantumMessage, cpart: OtClassicalPart, rng: np.random.Generator
) -> np.ndarray | None:
    """Measure in constant basis c, then unmask slot c.  None signals abort.

    Measurement happens on reception; the classical part is only consulted
    afterwards, so any (possibly malformed) classical part still yields a
    well-defined outcome or an explicit abort.
    """
    c = int(c) & 1
    bases = np.full(qmsg.length, c, dtype=np.uint8)
    x_prime = measure_bb84(qmsg, bases, rng).outcome_bits
    n = qmsg.length
    if (
        len(cpart.theta) != n
        or cpart.h0.in_len != n
        or cpart.h1.in_len != n
        or len(cpart.m0) != cpart.h0.out_len
        or len(cpart.m1) != cpart.h1.out_len
        or cpart.h0.out_len != cpart.h1.out_len
    ):
        return None
    chosen = x_prime[cpart.theta == c]
    h = cpart.h0 if c == 0 else cpart.h1
    m = cpart.m0 if c == 0 else cpart.m1
    return np.bitwise_xor(m, apply_hash(h, pad_to(chosen, n)))


def ot_parallel_send(
    pairs: list[tuple], n: int, rng: np.random.Generator
) -> tuple[list[QuantumMessage], list[OtClassicalPart], list[OtSenderSecret]]:
    """k same-sender instances: all quantum parts precede one memory bound."""
    msgs, cparts, secrets = [], [], []
    for s0, s1 in pairs:
        msg, cpart, secret = ot_send(s0, s1, n, rng)
        msgs.append(msg)
        cparts.append(cpart)
        secrets.append(secret)
    return msgs, cparts, secrets


def ot_parallel_receive(
    choices, qmsgs: list[QuantumMessage], cparts: list[OtClassicalPart], rng: np.random.Generator
) -> list[np.ndarray | None]:
    if not (len(choices) == len(qmsgs) == len(cparts)):
        raise ValueError("one choice and one message pair per instance")
    return [ot_receive(c, q, cp, rng) for c, q, cp in zip(choices, qmsgs, cparts)]


def ot_security_bound(n: int, ell: int, q: int, k: int = 1) -> float:
    """Distance of the unchosen secret from uniform: k * 2^(-n/4 + ell + q)."""
    return k * 2.0 ** (-n / 4 + ell + q)


def default_n(ell: int, q: int = 0, stat_bits: int = 20) -> int:
    """Smallest n making the security exponent comfortably negative."""
    return max(4 * (ell + q + stat_bits), 64)
