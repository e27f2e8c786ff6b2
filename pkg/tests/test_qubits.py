import itertools

import numpy as np
import pytest

from bqsim.bits import bits, bitstr
from bqsim.qubits import (
    DENSE_CAP,
    CapacityError,
    DenseState,
    QuantumMessage,
    apply_hadamard_mask,
    densify,
    epr_pairs,
    fidelity,
    measure_bb84,
    measure_dense,
    postselect,
    prepare_bb84,
    subset_outcome_probs,
    symbolic_outcome_probs,
)


def rng(seed=0):
    return np.random.default_rng(seed)


def test_prepare_computational():
    msg = prepare_bb84("101", "000")
    assert msg.is_symbolic
    assert bitstr(msg.qubit_bits) == "101"
    assert bitstr(msg.qubit_bases) == "000"


def test_prepare_empty():
    msg = prepare_bb84("", "")
    assert msg.length == 0


def test_prepare_length_mismatch():
    with pytest.raises(ValueError):
        prepare_bb84("10", "0")


def test_densify_hadamard_on_second_qubit():
    # H on the second qubit of |10>: (|10> + |11>)/sqrt(2)
    msg = densify(prepare_bb84("10", "01"))
    expect = np.zeros(4, dtype=complex)
    expect[2] = expect[3] = 1 / np.sqrt(2)
    overlap = abs(np.vdot(expect, msg.dense.amplitudes))
    assert overlap == pytest.approx(1.0, abs=1e-12)


def test_densify_single_qubit_amplitudes():
    assert np.allclose(densify(prepare_bb84("0", "0")).dense.amplitudes, [1, 0])
    assert np.allclose(densify(prepare_bb84("0", "1")).dense.amplitudes, [2**-0.5, 2**-0.5])


def test_densify_over_cap():
    n = DENSE_CAP + 1
    with pytest.raises(CapacityError):
        densify(prepare_bb84("0" * n, "0" * n))


def test_measure_matched_bases_deterministic():
    r = rng()
    for _ in range(50):
        rec = measure_bb84(prepare_bb84("101", "000"), "000", r)
        assert bitstr(rec.outcome_bits) == "101"


def test_measure_conjugate_basis_is_fair():
    r = rng(7)
    outcomes = [measure_bb84(prepare_bb84("1", "1"), "0", r).outcome_bits[0] for _ in range(10_000)]
    mean = np.mean(outcomes)
    assert 0.47 <= mean <= 0.53


def test_collapse_idempotent():
    r = rng(3)
    for _ in range(20):
        msg = prepare_bb84(r.integers(0, 2, 6, dtype=np.uint8), r.integers(0, 2, 6, dtype=np.uint8))
        bases = r.integers(0, 2, 6, dtype=np.uint8)
        rec = measure_bb84(msg, bases, r)
        again = measure_bb84(rec.collapsed, rec.bases_used, r)
        assert np.array_equal(again.outcome_bits, rec.outcome_bits)


def test_densify_then_measure_in_theta_recovers_bits():
    r = rng(11)
    for _ in range(20):
        x = r.integers(0, 2, 5, dtype=np.uint8)
        theta = r.integers(0, 2, 5, dtype=np.uint8)
        rec = measure_bb84(densify(prepare_bb84(x, theta)), theta, r)
        assert np.array_equal(rec.outcome_bits, x)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_symbolic_matches_dense_exactly_small(n):
    # exhaustive over (x, theta, bases): the two pipelines give identical distributions
    for x in itertools.product((0, 1), repeat=n):
        for theta in itertools.product((0, 1), repeat=n):
            msg = prepare_bb84(x, theta)
            dense = densify(msg).dense
            for bases in itertools.product((0, 1), repeat=n):
                b = bits(bases)
                sym = symbolic_outcome_probs(msg, b)
                drn = subset_outcome_probs(dense, np.arange(n), b)
                assert np.allclose(sym, drn, atol=1e-12)


def test_hadamard_mask_identity_and_involution():
    state = densify(prepare_bb84("10", "01")).dense
    same = apply_hadamard_mask(state, "00")
    assert fidelity(state, same) == pytest.approx(1.0, abs=1e-12)
    twice = apply_hadamard_mask(apply_hadamard_mask(state, "11"), "11")
    assert fidelity(state, twice) == pytest.approx(1.0, abs=1e-9)


def test_hadamard_mask_on_00_gives_uniform():
    state = densify(prepare_bb84("00", "00")).dense
    rotated = apply_hadamard_mask(state, "11")
    assert np.allclose(np.abs(rotated.amplitudes) ** 2, 0.25)


def test_epr_single_pair_amplitudes():
    state = epr_pairs(1)
    assert np.allclose(state.amplitudes, [2**-0.5, 0, 0, 2**-0.5])
    assert state.labels == ("P0", "V0")


def test_epr_matching_bases_agree():
    for basis in ("00", "11"):
        r = rng(5)
        for _ in range(100):
            out, _ = measure_dense(epr_pairs(1), [0, 1], basis, r)
            assert out[0] == out[1]


def test_epr_mismatched_bases_independent():
    r = rng(9)
    outs = np.array([measure_dense(epr_pairs(1), [0, 1], "01", r)[0] for _ in range(10_000)])
    # each side fair, and correlation vanishes
    assert abs(outs[:, 0].mean() - 0.5) < 0.03
    assert abs(outs[:, 1].mean() - 0.5) < 0.03
    corr = np.corrcoef(outs[:, 0], outs[:, 1])[0, 1]
    assert abs(corr) < 0.05


def test_epr_steering_leaves_prepared_state():
    # measuring the P half in theta and post-selecting x steers V to |x>_theta
    r = rng(13)
    for _ in range(10):
        n = 3
        theta = r.integers(0, 2, n, dtype=np.uint8)
        x = r.integers(0, 2, n, dtype=np.uint8)
        steered = postselect(epr_pairs(n), np.arange(n), theta, x)
        # after post-selection both halves sit in |x>_theta
        expect = densify(prepare_bb84(np.tile(x, 2), np.tile(theta, 2))).dense
        assert fidelity(steered, expect) >= 1 - 1e-9


def test_epr_over_cap():
    with pytest.raises(CapacityError):
        epr_pairs(DENSE_CAP // 2 + 1)


def test_norm_validation():
    with pytest.raises(ValueError):
        DenseState(np.array([1.0, 1.0], dtype=complex), ("q0",))


def test_message_form_exclusive():
    with pytest.raises(ValueError):
        QuantumMessage(None, None, None)
