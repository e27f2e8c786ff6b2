"""One-message compiler for three-message proofs with single-bit challenges.

For each of k repetitions the prover runs the base protocol's first
message, precomputes both possible responses, and masks them with
universal hashes of the basis-partitioned halves of a fresh conjugate
coded string -- the non-interactive oblivious-transfer trick.  The wire
layout delivers every quantum part before the single memory bound and
every classical part after it.

A receiving verifier measures each first message under the base
protocol's fixed policy and each masked-response carrier in one uniform
basis per repetition; that basis doubles as the challenge, and the
repetition verifies if the recovered response passes the base predicate.
Soundness error decays as 2^-k; a storage-bounded verifier's view of the
unchosen mask is within 2^(-n/4 + ell + q) of uniform.

Slot randomization (off by default) puts the response pair into the two
mask slots in a uniformly random order, carrying the swap bit in the
classical part; the effective challenge becomes c xor swap.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bits import rand_bits
from .hashing import apply_hash, sample_hash
from .ot import OtClassicalPart, default_n, ot_receive, pad_to, split_by_basis
from .proofs.base import FirstMessage, XiProtocolSpec
from .qubits import QuantumMessage, prepare_bb84


@dataclass(frozen=True)
class NipRepetition:
    first: FirstMessage
    carrier: QuantumMessage  # conjugate-coded string masking the responses
    classical: OtClassicalPart
    swap: int


@dataclass(frozen=True)
class NipMessage:
    reps: list[NipRepetition]
    response_len: int


@dataclass
class NipRepetitionView:
    """Everything one repetition leaves with an honest bounded verifier."""

    challenge: int
    effective_challenge: int
    record: object
    theta: np.ndarray
    h0: object
    h1: object
    m0: np.ndarray
    m1: np.ndarray
    swap: int
    first_classical: np.ndarray | None
    response: np.ndarray | None
    accepted: bool


def nip_soundness_error(k: int) -> float:
    return 2.0**-k


def nip_prove(
    spec: XiProtocolSpec,
    k: int,
    rng: np.random.Generator,
    n: int | None = None,
    randomize_order: bool = False,
) -> NipMessage:
    if spec.challenge_len != 1:
        raise ValueError("compiler handles single-bit challenges only")
    if spec.prove is None:
        raise ValueError("spec has no witness bound; cannot prove")
    ell = spec.response_len
    if n is None:
        n = default_n(ell)
    reps = []
    for _ in range(k):
        state, first = spec.prove(rng)
        responses = (spec.respond(state, 0), spec.respond(state, 1))
        swap = int(rng.integers(0, 2)) if randomize_order else 0
        x, theta = rand_bits(rng, n), rand_bits(rng, n)
        carrier = prepare_bb84(x, theta)
        x_plus, x_times = split_by_basis(x, theta)
        h0, h1 = sample_hash(n, ell, rng), sample_hash(n, ell, rng)
        m0 = np.bitwise_xor(responses[swap], apply_hash(h0, pad_to(x_plus, n)))
        m1 = np.bitwise_xor(responses[1 - swap], apply_hash(h1, pad_to(x_times, n)))
        reps.append(NipRepetition(first, carrier, OtClassicalPart(theta, h0, h1, m0, m1), swap))
    return NipMessage(reps, ell)


def _verify_repetition(
    spec: XiProtocolSpec, rep: NipRepetition, challenge: int, rng: np.random.Generator
) -> NipRepetitionView:
    record = spec.receive_and_measure(rep.first, rng)
    response = ot_receive(challenge, rep.carrier, rep.classical, rng)
    effective = challenge ^ rep.swap
    accepted = response is not None and bool(spec.verify(record, effective, response))
    cp = rep.classical
    return NipRepetitionView(
        challenge=challenge,
        effective_challenge=effective,
        record=record,
        theta=cp.theta,
        h0=cp.h0,
        h1=cp.h1,
        m0=cp.m0,
        m1=cp.m1,
        swap=rep.swap,
        first_classical=rep.first.classical,
        response=response,
        accepted=accepted,
    )


def nip_verify(
    spec: XiProtocolSpec, msg: NipMessage, rng: np.random.Generator
) -> tuple[bool, list[NipRepetitionView]]:
    """Receive-and-measure verification; returns the verdict and the views."""
    views = []
    for rep in msg.reps:
        c = int(rng.integers(0, 2))
        views.append(_verify_repetition(spec, rep, c, rng))
    return all(v.accepted for v in views), views


def nip_hvzk_simulate(
    spec: XiProtocolSpec,
    k: int,
    rng: np.random.Generator,
    n: int | None = None,
) -> list[NipRepetitionView]:
    """Honest-verifier view without the witness.

    The simulator plays both sides: it prepares the carrier itself, picks
    the challenge, measures, asks the base protocol's canned simulator for
    a matching transcript, masks the known slot properly, and fills the
    unchosen slot with uniform noise.
    """
    ell = spec.response_len
    if n is None:
        n = default_n(ell)
    views = []
    for _ in range(k):
        c = int(rng.integers(0, 2))
        first, response = spec.simulate(c, rng)
        record = spec.receive_and_measure(first, rng)
        x, theta = rand_bits(rng, n), rand_bits(rng, n)
        carrier = prepare_bb84(x, theta)
        coins = rng.integers(0, 2, size=n, dtype=np.uint8)
        x_prime = np.where(theta == c, x, coins).astype(np.uint8)
        chosen = x_prime[theta == c]
        h0, h1 = sample_hash(n, ell, rng), sample_hash(n, ell, rng)
        h = (h0, h1)[c]
        m_c = np.bitwise_xor(response, apply_hash(h, pad_to(chosen, n)))
        m_other = rand_bits(rng, ell)
        m0, m1 = (m_c, m_other) if c == 0 else (m_other, m_c)
        views.append(
            NipRepetitionView(
                challenge=c,
                effective_challenge=c,
                record=record,
                theta=theta,
                h0=h0,
                h1=h1,
                m0=m0,
                m1=m1,
                swap=0,
                first_classical=first.classical,
                response=response,
                accepted=True,
            )
        )
        del carrier
    return views


def deliver_nip_message(msg: NipMessage, channel) -> None:
    """Queue the wire layout: every quantum part, one bound, every classical part.

    A receiving party that tries to touch the classical parts before
    acknowledging the bound trips the channel's enforcement.
    """
    from .bits import pack_bits

    for rep in msg.reps:
        fq = rep.first.quantum
        channel.send_quantum(fq, pack_bits(fq.qubit_bits) + pack_bits(fq.qubit_bases))
        channel.send_quantum(
            rep.carrier, pack_bits(rep.carrier.qubit_bits) + pack_bits(rep.carrier.qubit_bases)
        )
    channel.bound_marker()
    for rep in msg.reps:
        cp = rep.classical
        payload = (
            pack_bits(cp.theta)
            + pack_bits(cp.h0.seed)
            + pack_bits(cp.h1.seed)
            + pack_bits(cp.m0)
            + pack_bits(cp.m1)
            + bytes([rep.swap])
        )
        channel.send_classical(payload, cp)


def nip_wi_test(
    spec_w1: XiProtocolSpec,
    spec_w2: XiProtocolSpec,
    trials: int,
    statistic,
    rng: np.random.Generator,
    k: int = 1,
    n: int | None = None,
):
    """Empirical view distance under two witnesses, as a TvEstimate.

    statistic maps a list of NipRepetitionView to a hashable projection;
    low-cardinality projections keep the estimate tight.
    """
    from .stats import tv_distance_estimate

    samples = ([], [])
    for arm, spec in enumerate((spec_w1, spec_w2)):
        for _ in range(trials):
            msg = nip_prove(spec, k, rng, n=n)
            _, views = nip_verify(spec, msg, rng)
            samples[arm].append(statistic(views))
    return tv_distance_estimate(samples[0], samples[1])
