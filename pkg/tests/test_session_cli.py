import subprocess
import sys

import numpy as np
import pytest

from bqsim.session import (
    ACCEPT,
    PROTOCOL_IDS,
    ConfigError,
    ExperimentConfig,
    run_session,
)
from bqsim.transcript import parse_transcript, serialize_transcript


def test_all_protocols_accept_honest_runs():
    for protocol in PROTOCOL_IDS:
        t, verdict = run_session(ExperimentConfig(protocol, seed=5))
        assert verdict == ACCEPT, protocol
        assert t.protocol == protocol


def test_determinism_bit_exact_transcripts():
    for protocol in PROTOCOL_IDS:
        a, _ = run_session(ExperimentConfig(protocol, seed=11))
        b, _ = run_session(ExperimentConfig(protocol, seed=11))
        assert serialize_transcript(a) == serialize_transcript(b), protocol
        c, _ = run_session(ExperimentConfig(protocol, seed=12))
        assert serialize_transcript(a) != serialize_transcript(c), protocol


def test_round_trip_all_protocols():
    for protocol in PROTOCOL_IDS:
        t, _ = run_session(ExperimentConfig(protocol, seed=3))
        text = serialize_transcript(t)
        assert parse_transcript(text) == t


def test_ot_event_order_quantum_bound_classical():
    t, _ = run_session(ExperimentConfig("ot", seed=1))
    kinds = [e.kind for e in t.events]
    assert kinds == ["quantum-symbolic", "bound-marker", "classical"]


def test_parallel_ot_single_bound_marker():
    t, verdict = run_session(ExperimentConfig("ot", seed=1, params={"k": 8}))
    assert verdict == ACCEPT
    kinds = [e.kind for e in t.events]
    assert kinds.count("bound-marker") == 1
    first_bound = kinds.index("bound-marker")
    assert kinds[:first_bound] == ["quantum-symbolic"] * 8
    assert kinds[first_bound + 1 :] == ["classical"] * 8


def test_rr_quantum_payload_carries_k_ell_n_qubits():
    # the verifier message's quantum bytes encode k * ell commitment strings
    # of n qubits each: (x, theta) length-prefixed packings per round
    t, _ = run_session(ExperimentConfig("rr-sumcheck", seed=2, params={"n": 4}))
    quantum = [e for e in t.events if e.kind == "quantum-symbolic"]
    k, ell, n = 3, 24, 4  # n_vars rounds, (d+1)*field_bits committed bits
    assert len(quantum) == k
    per_round = 2 * (4 + (ell * n + 7) // 8)  # two blobs: bits and bases
    assert all(len(e.payload) == per_round for e in quantum)


def test_nip_channel_gates_classical_behind_bound():
    from bqsim.channel import BOUND_MARKER, ProtocolViolation, SessionChannel
    from bqsim.graphs import triangle
    from bqsim.nip import deliver_nip_message, nip_prove
    from bqsim.proofs import ham_protocol
    from bqsim.transcript import Transcript

    spec = ham_protocol(triangle(), (0, 1, 2), n_commit=4)
    msg = nip_prove(spec, k=2, rng=np.random.default_rng(0), n=64)
    t = Transcript("nip-ham", 0)
    ch = SessionChannel(t, "P>V", q=0)
    deliver_nip_message(msg, ch)
    for _ in range(4):  # 2 repetitions x (first message, carrier)
        ch.receive()
    assert ch.receive() is BOUND_MARKER
    with pytest.raises(ProtocolViolation):
        ch.receive()  # classical parts gated behind the acknowledgement
    ch.acknowledge_bound(0)
    assert ch.receive() is msg.reps[0].classical


def test_nip_classical_never_precedes_bound():
    t, _ = run_session(ExperimentConfig("nip-ham", seed=2, params={"k": 3}))
    kinds = [e.kind for e in t.events]
    first_bound = kinds.index("bound-marker")
    assert all(k == "quantum-symbolic" for k in kinds[:first_bound])
    assert all(k == "classical" for k in kinds[first_bound + 1 :])


def test_config_rejects_unknown():
    with pytest.raises(ConfigError):
        ExperimentConfig("nope", seed=0)
    with pytest.raises(ConfigError):
        ExperimentConfig("ot", seed=0, params={"bogus": 1})
    with pytest.raises(ConfigError):
        ExperimentConfig("commit-abo", seed=0, params={"code": "nope"})


def _cli(*argv):
    return subprocess.run(
        [sys.executable, "-m", "bqsim.cli", *argv],
        capture_output=True,
        text=True,
    )


def test_cli_commit_accepts():
    for scheme in ("dfss", "weak", "abo"):
        proc = _cli("commit", scheme, "--seed", "4")
        assert proc.returncode == 0, proc.stderr
        assert "verdict: accept" in proc.stdout


def test_cli_usage_error_exit_code():
    proc = _cli("commit", "nonsense")
    assert proc.returncode == 3


def test_cli_ot_writes_and_verifies_transcript(tmp_path):
    out = str(tmp_path / "otrun")
    proc = _cli("ot", "--seed", "9", "--out", out)
    assert proc.returncode == 0, proc.stderr
    check = _cli("verify-transcript", out + ".transcript")
    assert check.returncode == 0, check.stderr + check.stdout
    assert "ok: ot" in check.stdout


def test_cli_verify_rejects_corruption(tmp_path):
    out = str(tmp_path / "otrun")
    _cli("ot", "--seed", "9", "--out", out)
    path = out + ".transcript"
    with open(path) as fh:
        lines = fh.read().splitlines()
    for i, line in enumerate(lines):
        if not line.startswith("#"):
            parts = line.split(" ")
            parts[3] = "zz" + parts[3][2:]
            lines[i] = " ".join(parts)
            break
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    check = _cli("verify-transcript", path)
    assert check.returncode == 1


def test_cli_nip_and_rr_commands():
    assert _cli("nip-ham", "--k", "2", "--seed", "3").returncode == 0
    assert _cli("rr-sumcheck", "--seed", "3").returncode == 0
    assert _cli("rr-3col", "--seed", "3").returncode == 0


def test_cli_seed_env(tmp_path, monkeypatch):
    out1 = str(tmp_path / "a")
    out2 = str(tmp_path / "b")
    env_run = subprocess.run(
        [sys.executable, "-m", "bqsim.cli", "ot", "--out", out1],
        capture_output=True,
        text=True,
        env={"BQSIM_SEED": "77", "PATH": "/usr/bin:/bin", "PYTHONPATH": "src"},
        cwd="/root/pkg",
    )
    assert env_run.returncode == 0, env_run.stderr
    flag_run = _cli("ot", "--seed", "77", "--out", out2)
    assert flag_run.returncode == 0
    with open(out1 + ".transcript") as fh1, open(out2 + ".transcript") as fh2:
        assert fh1.read() == fh2.read()


def test_cli_game_sum_binding_oracle(tmp_path):
    out = str(tmp_path / "rep")
    proc = _cli(
        "game", "sum-binding-oracle", "--n", "6", "--delta", "0.0",
        "--trials", "300", "--seed", "2", "--out", out,
    )
    assert proc.returncode == 0, proc.stderr + proc.stdout
    import os

    assert os.path.exists(out + ".tsv")
    assert os.path.exists(out + ".txt")
    assert os.path.exists(out + ".png")
    with open(out + ".tsv") as fh:
        header = fh.readline()
    assert header.startswith("game\tarm\t")


def test_cli_verify_flags_order_violation(tmp_path):
    # classical payload ahead of the bound marker in a protocol that
    # promises quantum-bound-classical ordering: exit code 2
    from bqsim.transcript import Transcript, serialize_transcript

    t = Transcript("ot", 0, {"n": "16"})
    t.add("S>R", "classical", b"\x01")
    t.add("S>R", "bound-marker")
    path = str(tmp_path / "bad.transcript")
    with open(path, "w") as fh:
        fh.write(serialize_transcript(t))
    proc = _cli("verify-transcript", path)
    assert proc.returncode == 2


def test_cli_game_ot_privacy():
    proc = _cli("game", "ot-privacy", "--n", "16", "--trials", "40", "--seed", "3")
    assert proc.returncode == 0, proc.stderr + proc.stdout
    assert "store-all" in proc.stdout and "random-per-qubit" in proc.stdout


def test_cli_game_binding_positive_control():
    proc = _cli("game", "binding", "--n", "10", "--q", "10", "--trials", "300", "--seed", "1")
    assert proc.returncode == 0, proc.stderr + proc.stdout
    assert "store-everything" in proc.stdout


def test_cli_game_jobs_merge():
    proc = _cli(
        "game", "binding", "--n", "8", "--trials", "400", "--jobs", "2", "--seed", "5"
    )
    assert proc.returncode == 0, proc.stderr + proc.stdout
    assert "aggregated across 2 workers" in proc.stdout
