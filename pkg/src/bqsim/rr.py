"""Round-collapse compiler: k-round public-coin proofs into two messages.

The verifier front-loads everything it would ever send: for each round a
fresh receiver-prepared commitment register P_i (one conjugate-coded
string per committed bit) and the round's challenge register C_i, with a
memory bound applying after each P_i.  A storage-bounded prover must
measure P_i -- fixing its round-i message -- before the channel will hand
over C_i, so a_i stays independent of c_i exactly as in the interactive
protocol.  The prover's single reply carries the revealed messages, the
commitment opening strings, and the final uncommitted message.

If the underlying protocol has soundness error eps and each commitment is
delta-binding, the compiled proof has soundness error eps + k^2 * delta.

The zero-knowledge simulator plays an unbounded prover: it reads every
challenge first, asks the protocol's challenge-first simulator for the
round messages, and only then commits.  For protocols whose simulator is
exact, the compiled proof inherits that exactness, because unopened
commitments contribute nothing to the verifier's view.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bits import pack_bits
from .channel import BOUND_MARKER, SessionChannel
from .commitments import (
    PackedStringReceipt,
    dfss_string_commit_packed,
    dfss_string_prepare_packed,
    dfss_string_verify_packed,
)
from .proofs.base import RoundProtocol
from .qubits import QuantumMessage
from .transcript import Transcript


@dataclass(frozen=True)
class RrRound:
    commit_msg: QuantumMessage  # commit_len * n qubits, one string register
    challenge: np.ndarray  # zero-length when the round carries no challenge


@dataclass(frozen=True)
class RrVerifierMessage:
    rounds: list[RrRound]


@dataclass(frozen=True)
class RrVerifierSecrets:
    receipts: list[PackedStringReceipt]
    challenges: list[np.ndarray]


@dataclass(frozen=True)
class RrProverMessage:
    revealed: dict[int, tuple[np.ndarray, np.ndarray]]  # round -> (a_i, opening rows)
    final: np.ndarray


def rr_soundness_bound(eps: float, k: int, delta: float) -> float:
    return eps + k * k * delta


def rr_verifier_message(
    pi: RoundProtocol, n: int, rng: np.random.Generator
) -> tuple[RrVerifierMessage, RrVerifierSecrets]:
    """Prepare every P_i and C_i; n is the qubit count per committed bit."""
    rounds, receipts, challenges = [], [], []
    for i, spec in enumerate(pi.rounds, start=1):
        msg, receipt = dfss_string_prepare_packed(spec.commit_len, n, rng)
        c = pi.sample_challenge(i, rng)
        if len(c) != spec.challenge_len:
            raise ValueError(f"round {i} challenge has wrong length")
        rounds.append(RrRound(msg, c))
        receipts.append(receipt)
        challenges.append(c)
    return RrVerifierMessage(rounds), RrVerifierSecrets(receipts, challenges)


def deliver_verifier_message(vmsg: RrVerifierMessage, channel: SessionChannel) -> None:
    """Queue P_1 [bound] C_1 ... P_k [bound] C_k in protocol order."""
    for rnd in vmsg.rounds:
        payload = pack_bits(rnd.commit_msg.qubit_bits) + pack_bits(rnd.commit_msg.qubit_bases)
        channel.send_quantum(rnd.commit_msg, payload)
        channel.bound_marker()
        if len(rnd.challenge):
            channel.send_classical(pack_bits(rnd.challenge), rnd.challenge)


def rr_prover_respond(
    pi: RoundProtocol, channel: SessionChannel, rng: np.random.Generator
) -> RrProverMessage:
    """Honest storage-free prover; consumes the channel in protocol order."""
    if pi.new_prover is None:
        raise ValueError("protocol has no witness bound; cannot prove")
    prover = pi.new_prover(rng)
    challenges: list[np.ndarray] = []
    committed: dict[int, tuple[np.ndarray, np.ndarray]] = {}
    for i, spec in enumerate(pi.rounds, start=1):
        msg = channel.receive()
        a_i = prover.message(i, challenges)
        if len(a_i) != spec.commit_len:
            raise ValueError(f"round {i} message has wrong length")
        committed[i] = (a_i, dfss_string_commit_packed(a_i, msg, rng))
        marker = channel.receive()
        assert marker is BOUND_MARKER
        channel.acknowledge_bound(retained_qubits=0)
        if spec.challenge_len:
            challenges.append(channel.receive())
        else:
            challenges.append(np.zeros(0, dtype=np.uint8))
    final = prover.message(pi.k + 1, challenges)
    if len(final) != pi.final_len:
        raise ValueError("final message has wrong length")
    revealed = {i: committed[i] for i in pi.reveal_set(challenges)}
    return RrProverMessage(revealed, final)


def rr_verify(pi: RoundProtocol, secrets: RrVerifierSecrets, pmsg: RrProverMessage) -> bool:
    """All commitment openings valid, reveal policy respected, transcript accepted."""
    expected = set(pi.reveal_set(secrets.challenges))
    if set(pmsg.revealed) != expected:
        return False
    opened_values: dict[int, np.ndarray] = {}
    for i in expected:
        a_i, rows = pmsg.revealed[i]
        spec = pi.rounds[i - 1]
        if len(a_i) != spec.commit_len:
            return False
        if not dfss_string_verify_packed(secrets.receipts[i - 1], a_i, np.asarray(rows)):
            return False
        opened_values[i] = a_i
    if len(pmsg.final) != pi.final_len:
        return False
    return bool(pi.verify_transcript(opened_values, pmsg.final, secrets.challenges))


def rr_zk_simulate(
    pi: RoundProtocol, vmsg: RrVerifierMessage, rng: np.random.Generator
) -> RrProverMessage:
    """Unbounded-simulator reply: read all challenges first, then commit.

    Never sees a witness; requires the protocol's challenge-first simulator.
    """
    if pi.simulate is None:
        raise ValueError("protocol has no challenge-first simulator")
    challenges = [rnd.challenge for rnd in vmsg.rounds]
    messages, final = pi.simulate(challenges, rng)
    revealed = {}
    for i in pi.reveal_set(challenges):
        a_i = messages[i]
        revealed[i] = (a_i, dfss_string_commit_packed(a_i, vmsg.rounds[i - 1].commit_msg, rng))
    return RrProverMessage(revealed, final)


def rr_session(
    pi: RoundProtocol,
    n: int,
    seed: int,
    protocol_id: str | None = None,
    prover=None,
) -> tuple[bool, Transcript]:
    """One compiled run with a full transcript.

    prover overrides the honest respond step with a callable
    (pi, channel, rng) -> RrProverMessage, for scripted strategies.
    """
    rng = np.random.default_rng(seed)
    t = Transcript(protocol_id or f"rr-{pi.protocol_id}", seed, {"n": str(n), "k": str(pi.k)})
    vmsg, secrets = rr_verifier_message(pi, n, rng)
    channel = SessionChannel(t, "V>P", q=0)
    deliver_verifier_message(vmsg, channel)
    respond = prover or rr_prover_respond
    pmsg = respond(pi, channel, rng)
    t.add("P>V", "classical", _encode_prover_message(pmsg))
    return rr_verify(pi, secrets, pmsg), t


def _encode_prover_message(pmsg: RrProverMessage) -> bytes:
    out = [len(pmsg.revealed).to_bytes(2, "big")]
    for i in sorted(pmsg.revealed):
        a_i, rows = pmsg.revealed[i]
        out.append(i.to_bytes(2, "big"))
        out.append(pack_bits(a_i))
        out.append(pack_bits(np.asarray(rows).reshape(-1)))
    out.append(pack_bits(pmsg.final))
    return b"".join(out)
