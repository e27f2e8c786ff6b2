"""Single-run protocol sessions: config in, transcript and verdict out.

Every runnable protocol gets one entry point keyed by its id; a session
is fully determined by (protocol, params, seed), so re-running a config
reproduces the transcript byte for byte.  Verdicts are accept, reject, or
protocol-violation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bits import pack_bits
from .channel import ProtocolViolation
from .commitments import (
    DfssOpening,
    abo_commit,
    abo_prepare,
    abo_verify,
    dfss_commit,
    dfss_prepare,
    dfss_verify,
    weak_bc_commit,
    weak_bc_receive,
    weak_bc_verify,
)
from .codes import CODE_TABLE
from .gf2m import field as gf_field
from .graphs import triangle
from .nip import nip_prove, nip_verify
from .ot import default_n, ot_parallel_receive, ot_parallel_send
from .polynomials import random_polynomial
from .proofs import coloring_protocol, ham_protocol, sumcheck_claim, sumcheck_protocol
from .rr import rr_session
from .transcript import KIND_BOUND, KIND_CLASSICAL, KIND_QUANTUM, Transcript

ACCEPT = "accept"
REJECT = "reject"
VIOLATION = "protocol-violation"

PROTOCOL_IDS = (
    "commit-dfss",
    "commit-weak",
    "commit-abo",
    "ot",
    "nip-ham",
    "rr-sumcheck",
    "rr-3col",
)

_DEFAULTS = {
    "commit-dfss": {"n": 16},
    "commit-weak": {"n": 16},
    "commit-abo": {"code": "repetition16"},
    "ot": {"n": 64, "ell": 1, "k": 1},
    "nip-ham": {"k": 1, "n": 0, "n_commit": 8},  # n = 0 means derive from ell
    "rr-sumcheck": {"n": 4, "n_vars": 3, "degree": 2, "field_bits": 8},
    "rr-3col": {"n": 4},
}


class ConfigError(Exception):
    """Unknown protocol id or malformed parameter set."""


@dataclass
class ExperimentConfig:
    protocol: str
    seed: int
    params: dict = field(default_factory=dict)
    out: str | None = None

    def __post_init__(self):
        if self.protocol not in PROTOCOL_IDS:
            raise ConfigError(f"unknown protocol {self.protocol!r}; know {PROTOCOL_IDS}")
        known = _DEFAULTS[self.protocol]
        for key in self.params:
            if key not in known:
                raise ConfigError(f"unknown parameter {key!r} for {self.protocol}")
        merged = dict(known)
        merged.update(self.params)
        for key, value in merged.items():
            if key == "code":
                if value not in CODE_TABLE:
                    raise ConfigError(f"unknown code {value!r}; know {sorted(CODE_TABLE)}")
            elif not isinstance(value, int) or value < 0:
                raise ConfigError(f"parameter {key} must be a nonnegative integer")
        self.params = merged


def _prep_payload(x, theta) -> bytes:
    return pack_bits(x) + pack_bits(theta)


def run_session(config: ExperimentConfig) -> tuple[Transcript, str]:
    rng = np.random.default_rng(config.seed)
    p = config.params
    try:
        runner = _RUNNERS[config.protocol]
        return runner(config, p, rng)
    except ProtocolViolation:
        t = Transcript(config.protocol, config.seed, {k: str(v) for k, v in p.items()})
        return t, VIOLATION


def _run_commit_dfss(config, p, rng):
    t = Transcript("commit-dfss", config.seed, {"n": str(p["n"])})
    b = int(rng.integers(0, 2))
    msg, receipt = dfss_prepare(p["n"], rng)
    t.add("V>C", KIND_QUANTUM, _prep_payload(receipt.x, receipt.theta))
    x_prime = dfss_commit(b, msg, rng)
    t.add("V>C", KIND_BOUND)
    t.add("C>V", KIND_CLASSICAL, bytes([b]) + pack_bits(x_prime))
    ok = dfss_verify(receipt, DfssOpening(b, x_prime))
    return t, ACCEPT if ok else REJECT


def _run_commit_weak(config, p, rng):
    t = Transcript("commit-weak", config.seed, {"n": str(p["n"])})
    b = int(rng.integers(0, 2))
    msg, opening = weak_bc_commit(b, p["n"], rng)
    t.add("C>R", KIND_QUANTUM, _prep_payload(msg.qubit_bits, msg.qubit_bases))
    theta, x_prime = weak_bc_receive(msg, rng)
    t.add("C>R", KIND_CLASSICAL, bytes([opening.b]) + pack_bits(opening.x))
    ok = weak_bc_verify(theta, x_prime, opening)
    return t, ACCEPT if ok else REJECT


def _run_commit_abo(config, p, rng):
    code = CODE_TABLE[p["code"]]
    t = Transcript("commit-abo", config.seed, {"code": p["code"]})
    msg, receipt = abo_prepare(code, rng)
    t.add("V>C", KIND_QUANTUM, _prep_payload(receipt.x, receipt.theta))
    a = rng.integers(0, 2, size=code.cols, dtype=np.uint8)
    opening = abo_commit(a, code, msg, rng)
    t.add("V>C", KIND_BOUND)
    t.add("C>V", KIND_CLASSICAL, pack_bits(opening.a) + pack_bits(opening.z))
    ok = abo_verify(receipt, code, opening)
    return t, ACCEPT if ok else REJECT


def _run_ot(config, p, rng):
    """k same-sender instances: all quantum parts, one bound, all classical parts."""
    n, ell, k = p["n"], p["ell"], p["k"]
    t = Transcript("ot", config.seed, {"n": str(n), "ell": str(ell), "k": str(k)})
    pairs = [
        (rng.integers(0, 2, ell, dtype=np.uint8), rng.integers(0, 2, ell, dtype=np.uint8))
        for _ in range(k)
    ]
    choices = [int(rng.integers(0, 2)) for _ in range(k)]
    qmsgs, cparts, _ = ot_parallel_send(pairs, n, rng)
    for qmsg in qmsgs:
        t.add("S>R", KIND_QUANTUM, _prep_payload(qmsg.qubit_bits, qmsg.qubit_bases))
    t.add("S>R", KIND_BOUND)
    for cpart in cparts:
        classical = (
            pack_bits(cpart.theta)
            + pack_bits(cpart.h0.seed)
            + pack_bits(cpart.h1.seed)
            + pack_bits(cpart.m0)
            + pack_bits(cpart.m1)
        )
        t.add("S>R", KIND_CLASSICAL, classical)
    outs = ot_parallel_receive(choices, qmsgs, cparts, rng)
    ok = all(
        out is not None and np.array_equal(out, pair[c])
        for out, pair, c in zip(outs, pairs, choices)
    )
    return t, ACCEPT if ok else REJECT


def _run_nip_ham(config, p, rng):
    graph = triangle()
    spec = ham_protocol(graph, (0, 1, 2), n_commit=p["n_commit"])
    n = p["n"] or default_n(spec.response_len)
    t = Transcript("nip-ham", config.seed, {"k": str(p["k"]), "n": str(n)})
    msg = nip_prove(spec, p["k"], rng, n=n)
    for rep in msg.reps:
        fm = rep.first.quantum
        t.add("P>V", KIND_QUANTUM, _prep_payload(fm.qubit_bits, fm.qubit_bases))
        t.add("P>V", KIND_QUANTUM, _prep_payload(rep.carrier.qubit_bits, rep.carrier.qubit_bases))
    t.add("P>V", KIND_BOUND)
    for rep in msg.reps:
        cp = rep.classical
        t.add(
            "P>V",
            KIND_CLASSICAL,
            pack_bits(cp.theta)
            + pack_bits(cp.h0.seed)
            + pack_bits(cp.h1.seed)
            + pack_bits(cp.m0)
            + pack_bits(cp.m1)
            + bytes([rep.swap]),
        )
    ok, _ = nip_verify(spec, msg, rng)
    return t, ACCEPT if ok else REJECT


def _run_rr_sumcheck(config, p, rng):
    poly = random_polynomial(gf_field(p["field_bits"]), p["n_vars"], p["degree"], rng)
    pi = sumcheck_protocol(poly, sumcheck_claim(poly))
    ok, t = rr_session(pi, n=p["n"], seed=config.seed, protocol_id="rr-sumcheck")
    return t, ACCEPT if ok else REJECT


def _run_rr_3col(config, p, rng):
    pi = coloring_protocol(triangle(), [0, 1, 2])
    ok, t = rr_session(pi, n=p["n"], seed=config.seed, protocol_id="rr-3col")
    return t, ACCEPT if ok else REJECT


_RUNNERS = {
    "commit-dfss": _run_commit_dfss,
    "commit-weak": _run_commit_weak,
    "commit-abo": _run_commit_abo,
    "ot": _run_ot,
    "nip-ham": _run_nip_ham,
    "rr-sumcheck": _run_rr_sumcheck,
    "rr-3col": _run_rr_3col,
}
