import itertools
from collections import Counter

import numpy as np
import pytest

from bqsim.gf2m import field
from bqsim.graphs import (
    Graph,
    complete_graph,
    cycle_edges,
    edge_set_is_hamiltonian_cycle,
    is_hamiltonian_cycle,
    is_proper_3_coloring,
    non_hamiltonian_graph,
    random_hamiltonian_graph,
    triangle,
    two_witness_graph,
)
from bqsim.polynomials import MultivariatePolynomial, random_polynomial
from bqsim.proofs import (
    coloring_protocol,
    ham_protocol,
    partial_sum_eval,
    prover_round,
    run_interactive_sumcheck,
    sumcheck_claim,
    sumcheck_protocol,
    sumcheck_soundness_bound,
    verifier_round_check,
)


def rng(seed=0):
    return np.random.default_rng(seed)


# -- graphs -------------------------------------------------------------------


def test_graph_basics():
    g = triangle()
    assert g.n_edges == 3
    assert g.has_edge(2, 0)
    assert is_hamiltonian_cycle(g, (0, 1, 2))
    assert not is_hamiltonian_cycle(g, (0, 1, 1))
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 0)])


def test_permuted_graph_preserves_edge_count():
    r = rng(1)
    g, w = random_hamiltonian_graph(6, 4, r)
    sigma = r.permutation(6)
    assert g.permuted(sigma).n_edges == g.n_edges


def test_cycle_first_construction_has_witness():
    r = rng(2)
    for _ in range(20):
        g, w = random_hamiltonian_graph(5, 3, r)
        assert is_hamiltonian_cycle(g, w)


def test_edge_set_cycle_detector():
    assert edge_set_is_hamiltonian_cycle(4, cycle_edges((0, 1, 2, 3)))
    # two disjoint 2-cycles are not a single Hamiltonian cycle
    assert not edge_set_is_hamiltonian_cycle(4, {(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)})
    assert not edge_set_is_hamiltonian_cycle(6, cycle_edges((0, 1, 2)) | cycle_edges((3, 4, 5)))


def test_non_hamiltonian_fixture():
    g = non_hamiltonian_graph()
    for perm in itertools.permutations(range(4)):
        assert not is_hamiltonian_cycle(g, perm)


def test_two_witness_graph():
    g, w1, w2 = two_witness_graph()
    assert cycle_edges(w1) != cycle_edges(w2)


def test_coloring_check():
    assert is_proper_3_coloring(triangle(), [0, 1, 2])
    assert not is_proper_3_coloring(triangle(), [0, 0, 2])
    assert not is_proper_3_coloring(triangle(), [0, 1, 3])


# -- hamiltonicity ------------------------------------------------------------


def test_ham_first_message_shape():
    spec = ham_protocol(triangle(), (0, 1, 2), n_commit=4)
    state, first = spec.prove(rng(3))
    assert first.quantum.length == 9 * 4  # one commitment per matrix cell


def test_ham_requires_valid_witness():
    with pytest.raises(ValueError):
        ham_protocol(non_hamiltonian_graph(), (0, 1, 2, 3))


def test_ham_responses_open_expected_counts():
    spec = ham_protocol(triangle(), (0, 1, 2), n_commit=4)
    state, _ = spec.prove(rng(4))
    r0 = spec.respond(state, 0)
    r1 = spec.respond(state, 1)
    assert len(r0) == len(r1) == spec.response_len
    # challenge-1 branch opens exactly 3 cells, all committed to 1
    assert len(state.cycle_cells) == 3
    assert all(state.matrix[u, v] == 1 for u, v in state.cycle_cells)


def test_ham_honest_accepts_both_challenges():
    r = rng(5)
    g, w = random_hamiltonian_graph(4, 2, r)
    spec = ham_protocol(g, w, n_commit=6)
    for trial in range(400):
        c = trial & 1
        state, first = spec.prove(r)
        record = spec.receive_and_measure(first, r)
        assert spec.verify(record, c, spec.respond(state, c))


def test_ham_rejects_wrong_cycle_shape():
    r = rng(6)
    spec = ham_protocol(triangle(), (0, 1, 2), n_commit=4)
    state, first = spec.prove(r)
    record = spec.receive_and_measure(first, r)
    resp = spec.respond(state, 1).copy()
    resp[:] = 0  # cells (0,0) repeated: not a cycle
    assert not spec.verify(record, 1, resp)


def test_ham_rejects_non_permutation():
    r = rng(7)
    spec = ham_protocol(triangle(), (0, 1, 2), n_commit=4)
    state, first = spec.prove(r)
    record = spec.receive_and_measure(first, r)
    resp = spec.respond(state, 0).copy()
    resp[:4] = 0  # first two vertex slots both decode to 0
    assert not spec.verify(record, 0, resp)


def test_ham_simulated_transcripts_verify():
    r = rng(8)
    spec = ham_protocol(triangle(), n_commit=4)  # no witness needed to simulate
    for trial in range(400):
        c = trial & 1
        first, resp = spec.simulate(c, r)
        record = spec.receive_and_measure(first, r)
        assert spec.verify(record, c, resp)


def test_ham_simulator_cycle_marginal_exact_on_c5():
    # on the 5-cycle, the challenge-1 opened cells are a uniformly random
    # Hamiltonian cycle in both the real run and the simulation: compare the
    # exact distributions by enumerating the permutation / cycle choice
    g = Graph.from_edges(5, cycle_edges((0, 1, 2, 3, 4)))
    w = (0, 1, 2, 3, 4)
    real = Counter()
    for sigma in itertools.permutations(range(5)):
        image = tuple(sigma[v] for v in w)
        real[tuple(sorted(cycle_edges(image)))] += 1
    sim = Counter()
    for perm in itertools.permutations(range(5)):
        sim[tuple(sorted(cycle_edges(perm)))] += 1
    total = sum(real.values())
    assert {k: v / total for k, v in real.items()} == {k: v / total for k, v in sim.items()}


def test_ham_two_witness_responses_identically_distributed():
    # both witnesses induce the uniform distribution on opened cycles
    g, w1, w2 = two_witness_graph()
    dists = []
    for w in (w1, w2):
        counter = Counter()
        for sigma in itertools.permutations(range(5)):
            image = tuple(sigma[v] for v in w)
            counter[tuple(sorted(cycle_edges(image)))] += 1
        dists.append(counter)
    assert dists[0] == dists[1]


# -- sum-check ----------------------------------------------------------------


def demo_poly(n_vars=3, degree=2, seed=10):
    f = field(8)
    return random_polynomial(f, n_vars, degree, rng(seed))


def test_sumcheck_claim_product():
    f = field(8)
    poly = MultivariatePolynomial(f, 2, 1, {(1, 1): 1})
    assert sumcheck_claim(poly) == 1


def test_prover_round_product_polynomial():
    f = field(8)
    poly = MultivariatePolynomial(f, 2, 1, {(1, 1): 1})
    # g_1(X) = X: coefficients [0, 1]
    assert prover_round(poly, []) == [0, 1]
    # g_2(X) = r_1 * X
    r1 = 7
    assert prover_round(poly, [r1]) == [0, r1]


def test_prover_round_constant_cancels_in_char2():
    f = field(8)
    kappa = 0x35
    poly = MultivariatePolynomial(f, 3, 2, {(0, 0, 0): kappa})
    # 2^(n-1) copies of kappa cancel pairwise for n >= 2
    assert prover_round(poly, []) == [0, 0, 0]


def test_prover_matches_brute_force_oracle():
    r = rng(11)
    f = field(8)
    for _ in range(10):
        poly = random_polynomial(f, 4, 2, r)
        rs = []
        for i in range(4):
            g = prover_round(poly, rs)
            for _ in range(2 * poly.degree + 2):
                t = f.rand(r)
                assert f.poly_eval(g, t) == partial_sum_eval(poly, rs, t)
            rs.append(f.rand(r))


def test_verifier_round_check_degree_and_chain():
    f = field(8)
    assert verifier_round_check(f, [1, 2, 3], 2 ^ 3, 2)
    assert not verifier_round_check(f, [1, 2, 3, 4], 0, 2)  # degree 3 > d
    assert not verifier_round_check(f, [1, 2, 3], 99, 2)


def test_interactive_honest_accepts():
    r = rng(12)
    poly = demo_poly()
    claim = sumcheck_claim(poly)
    for _ in range(200):
        assert run_interactive_sumcheck(poly, claim, r)


def test_interactive_fresh_final_point_mode():
    r = rng(13)
    poly = demo_poly()
    claim = sumcheck_claim(poly)
    for _ in range(50):
        assert run_interactive_sumcheck(poly, claim, r, fresh_final_point=True)


def test_interactive_wrong_claim_rejected_within_bound():
    # cheater keeps the forced chaining constraint each round and fills the
    # remaining coefficients at random; drive the rounds manually so it can
    # track the running value
    r = rng(14)
    f = field(8)
    poly = random_polynomial(f, 4, 2, rng(15))
    claim = sumcheck_claim(poly) ^ 1  # wrong value

    trials, hits = 20_000, 0
    for _ in range(trials):
        rs = []
        prev = claim
        ok = True
        for i in range(poly.n_vars):
            coeffs = [f.rand(r) for _ in range(poly.degree + 1)]
            forced = prev
            for c in coeffs[1:-1]:
                forced ^= c
            coeffs[-1] = forced
            if not verifier_round_check(f, coeffs, prev, poly.degree):
                ok = False
                break
            ri = f.rand(r)
            rs.append(ri)
            prev = f.poly_eval(coeffs, ri)
        if ok and prev == poly.evaluate(tuple(rs)):
            hits += 1
    bound = sumcheck_soundness_bound(poly.n_vars, poly.degree, f.order)
    sigma = (bound * (1 - bound) / trials) ** 0.5
    assert hits / trials <= bound + 3 * sigma


def test_soundness_bound_values():
    assert sumcheck_soundness_bound(4, 2, 256) == pytest.approx(1 / 32)
    assert sumcheck_soundness_bound(7, 0, 64) == 0
    assert sumcheck_soundness_bound(1, 1, 2**16) == pytest.approx(2**-16)


def test_round_protocol_shapes():
    poly = demo_poly()
    pi = sumcheck_protocol(poly, sumcheck_claim(poly))
    assert pi.k == poly.n_vars
    assert all(r.commit_len == (poly.degree + 1) * 8 for r in pi.rounds)
    assert all(r.challenge_len == 8 for r in pi.rounds)


# -- coloring round protocol ---------------------------------------------------


def test_coloring_protocol_shapes():
    pi = coloring_protocol(triangle(), [0, 1, 2])
    assert pi.k == 3
    assert pi.rounds[-1].challenge_len == 2  # ceil(lg 3)
    assert all(r.challenge_len == 0 for r in pi.rounds[:-1])
    assert all(r.commit_len == 2 for r in pi.rounds)


def test_coloring_rejects_bad_witness():
    with pytest.raises(ValueError):
        coloring_protocol(triangle(), [0, 0, 1])


def test_coloring_challenge_rejection_sampling():
    pi = coloring_protocol(triangle(), [0, 1, 2])
    r = rng(16)
    from bqsim.bits import bits_to_int

    for _ in range(200):
        c = pi.sample_challenge(3, r)
        assert bits_to_int(c) < 3


def test_coloring_prover_messages_are_proper():
    pi = coloring_protocol(complete_graph(3), [0, 1, 2])
    r = rng(17)
    prover = pi.new_prover(r)
    colors = [prover.message(i, []) for i in range(1, 4)]
    decoded = [int(c[0]) * 2 + int(c[1]) for c in colors]
    assert is_proper_3_coloring(complete_graph(3), decoded)


def test_coloring_simulator_colors_uniform_distinct():
    pi = coloring_protocol(triangle(), [0, 1, 2])
    r = rng(18)
    counts = Counter()
    challenge = [np.zeros(0, dtype=np.uint8)] * 2 + [np.array([0, 0], dtype=np.uint8)]
    for _ in range(6000):
        msgs, final = pi.simulate(challenge, r)
        cu = int(msgs[1][0]) * 2 + int(msgs[1][1])
        cv = int(msgs[2][0]) * 2 + int(msgs[2][1])
        assert cu != cv and cu < 3 and cv < 3
        counts[(cu, cv)] += 1
    assert len(counts) == 6
    for v in counts.values():
        assert abs(v / 6000 - 1 / 6) < 0.04
