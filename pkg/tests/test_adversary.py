import numpy as np
import pytest

from bqsim.adversary import (
    CommitToBitStrategy,
    StoreEverythingStrategy,
    dfss_binding_game,
    enforce_bound,
    ham_oblivious_soundness_game,
    nip_soundness_game,
    ot_privacy_probe,
    rr_sumcheck_binding_game,
    sum_binding_bound,
    weak_bc_purification_attack,
    weak_bc_sum_binding_oracle,
)
from bqsim.channel import ProtocolViolation
from bqsim.gf2m import field
from bqsim.graphs import non_hamiltonian_graph
from bqsim.polynomials import random_polynomial
from bqsim.proofs import ham_protocol
from bqsim.qubits import CapacityError, prepare_bb84


def rng(seed=0):
    return np.random.default_rng(seed)


# -- bound enforcement ---------------------------------------------------------


def test_enforce_bound_classical_only_passes():
    enforce_bound({"outcomes": "0101"}, None, q=0)


def test_enforce_bound_qubit_budget():
    msg = prepare_bb84("01", "00")
    with pytest.raises(ProtocolViolation):
        enforce_bound(None, msg, q=1)
    enforce_bound(None, prepare_bb84("0", "0"), q=1)


# -- commitment binding --------------------------------------------------------


def test_binding_honest_committer_rates():
    n = 8
    report = dfss_binding_game(CommitToBitStrategy(0), n=n, trials=20_000, rng=rng(1))
    p0 = report.arm("open-to-0")
    p1 = report.arm("open-to-1")
    assert p0.rate == 1.0
    expect = (3 / 4) ** n
    assert abs(p1.rate - expect) <= p1.radius + 3 * (expect / p1.trials) ** 0.5
    assert report.passed


def test_binding_measure_in_conjugate_symmetric():
    n = 8
    report = dfss_binding_game(CommitToBitStrategy(1), n=n, trials=20_000, rng=rng(2))
    assert report.arm("open-to-1").rate == 1.0
    assert abs(report.arm("open-to-0").rate - (3 / 4) ** n) < 0.02
    assert report.passed


def test_binding_store_everything_breaks_it():
    report = dfss_binding_game(StoreEverythingStrategy(12), n=12, trials=2_000, rng=rng(3))
    assert report.arm("open-to-0").rate == 1.0
    assert report.arm("open-to-1").rate == 1.0
    assert report.passed  # positive control passes by *achieving* the break


def test_binding_game_rejects_overbudget_strategy():
    cheat = StoreEverythingStrategy(12)
    cheat.q = 0  # claims to be bounded but retains the register
    with pytest.raises(ProtocolViolation):
        dfss_binding_game(cheat, n=12, trials=10, rng=rng(4))


# -- ot privacy ----------------------------------------------------------------


@pytest.mark.parametrize("strategy", ["measure-all-0", "measure-all-1", "random-per-qubit"])
def test_ot_privacy_bounded_strategies(strategy):
    for n in (16, 24):
        report = ot_privacy_probe(strategy, n=n, ell=1, trials=150, rng=rng(5))
        assert report.passed, report.notes
        assert report.bound_value == pytest.approx(2 ** (-n / 4 + 1))


def test_ot_privacy_store_all_recovers_both():
    report = ot_privacy_probe("store-all", n=16, ell=1, trials=300, rng=rng(6))
    assert report.arm("recover-both-secrets").rate == 1.0
    assert report.passed


def test_ot_privacy_unknown_strategy():
    with pytest.raises(ValueError):
        ot_privacy_probe("psychic", 16, 1, 10, rng())


# -- weak-bc sum binding oracle --------------------------------------------------


def test_sum_binding_norm_exact_match_balls():
    # radius-zero balls: the norm is a single overlap 2^(-n/2)
    res = weak_bc_sum_binding_oracle(4, 0.0, "0000", "1111")
    assert res.norm == pytest.approx(2**-2, abs=1e-12)
    assert res.norm <= res.norm_bound + 1e-12


def test_sum_binding_all_pairs_n6():
    # the norm is translation invariant, but sweep all pairs as a check
    import itertools

    for radius_frac in (0.0, 1 / 6):
        seen = set()
        for x0 in itertools.product("01", repeat=6):
            for x1 in itertools.product("01", repeat=6):
                res = weak_bc_sum_binding_oracle(6, radius_frac, "".join(x0), "".join(x1))
                assert res.norm <= res.norm_bound + 1e-9
                seen.add(round(res.norm, 12))
        assert len(seen) == 1  # invariance under translations


def test_sum_binding_degenerate_radius_flagged_vacuous():
    res = weak_bc_sum_binding_oracle(4, 0.5, "0000", "0000")
    assert res.vacuous
    assert res.norm <= 1.0 + 1e-9


def test_sum_binding_over_cap():
    with pytest.raises(CapacityError):
        weak_bc_sum_binding_oracle(20, 0.1, "0" * 20, "1" * 20)


def test_purification_attack_arms():
    report = weak_bc_purification_attack(n=4, trials=1500, rng=rng(7))
    adaptive = report.arm("adaptive-open-0").rate + report.arm("adaptive-open-1").rate
    simultaneous = (
        report.arm("simultaneous-open-0").rate + report.arm("simultaneous-open-1").rate
    )
    assert adaptive >= 1.9
    assert simultaneous <= report.bound_value + 0.05
    assert report.arm("honest-own-bit").rate == 1.0
    assert report.passed


# -- scripted soundness games -----------------------------------------------------


def test_nip_soundness_game_decay():
    spec = ham_protocol(non_hamiltonian_graph(), n_commit=4)
    for k in (1, 3):
        report = nip_soundness_game(spec, k=k, trials=2000, rng=rng(8), n=64)
        assert report.passed
        assert report.bound_value == pytest.approx(2.0**-k)


def test_rr_sumcheck_binding_game():
    poly = random_polynomial(field(8), 3, 2, rng(9))
    report = rr_sumcheck_binding_game(poly, trials=3000, rng=rng(10), n=4)
    assert report.passed, (report.arms, report.bound_value)
    # the wrong-claim cheater is far below 1 even with adaptation
    assert report.arm("cheater-accepted").rate <= report.bound_value + 0.01
    assert report.arm("honest-true-claim").rate == 1.0
    # fabricated opening strings die on the n*ell checked positions
    assert report.arm("ignore-commitments").rate <= 0.01


def test_ham_oblivious_soundness_game():
    report = ham_oblivious_soundness_game(
        non_hamiltonian_graph(), trials=300, rng=rng(11), n_commit=4
    )
    assert report.passed
    # answers to challenge 0 always verify; the fabricated cycle answer is
    # far from certain, so the joint success stays well below 2.  (The
    # entangled keeper does better than random strings: its steered
    # outcomes open the real-edge cells of a fabricated cycle for free.)
    assert report.arm("commit-matrix-answer-0").rate == 1.0
    assert report.arm("commit-matrix-answer-1").rate <= 0.10
    assert report.arm("epr-keeper-answer-0").rate == 1.0
    assert report.arm("epr-keeper-answer-1").rate <= 0.60
    worst = max(
        report.arm("commit-matrix-answer-0").rate + report.arm("commit-matrix-answer-1").rate,
        report.arm("epr-keeper-answer-0").rate + report.arm("epr-keeper-answer-1").rate,
    )
    assert worst <= report.bound_value


def test_sum_binding_bound_formula():
    n, d = 6, 1 / 6
    from bqsim.hashing import binary_entropy

    expect = 1 + 2 ** (-3 + 2 * binary_entropy(d) * 6) + 2 ** (-1 + 1)
    assert sum_binding_bound(6, 1 / 6) == pytest.approx(expect)
