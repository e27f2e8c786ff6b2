"""Sum-check: an n-round proof that a Boolean-cube sum equals a claimed value.

Round i sends the univariate g_i(X) = sum over Boolean tails of the
polynomial with the first i-1 variables fixed to earlier challenges; the
verifier checks the degree bound, the running consistency
g_i(0) + g_i(1) = g_{i-1}(r_{i-1}), and finally that g_n agrees with the
polynomial itself at the challenge point.  A cheating prover survives
with probability at most n*d / |H|.

Univariate messages travel as d+1 coefficients; the prover interpolates
them from evaluations at the first d+1 field elements.  The brute-force
partial sum (partial_sum_eval) doubles as the test oracle for the
interpolated coefficients.
"""

from __future__ import annotations

import itertools

import numpy as np

from ..bits import bits_to_int, int_to_bits
from ..polynomials import MultivariatePolynomial, boolean_cube_sum
from .base import RoundProtocol, RoundSpec, reveal_everything, uniform_challenge


def sumcheck_claim(poly: MultivariatePolynomial) -> int:
    """The true cube sum, by full enumeration; also the test oracle."""
    return boolean_cube_sum(poly)


def partial_sum_eval(poly: MultivariatePolynomial, fixed: list[int], t: int) -> int:
    """Direct evaluation of the round-i partial sum at the point t.

    fixed holds r_1..r_{i-1}; the sum runs over Boolean assignments of the
    variables after position i.
    """
    i = len(fixed)
    tail_vars = poly.n_vars - i - 1
    if tail_vars < 0:
        raise ValueError("too many fixed variables")
    total = 0
    for tail in itertools.product((0, 1), repeat=tail_vars):
        total ^= poly.evaluate(tuple(fixed) + (t,) + tail)
    return total


def prover_round(poly: MultivariatePolynomial, fixed: list[int]) -> list[int]:
    """Coefficients (ascending, length d+1) of the round's univariate message."""
    f = poly.field
    nodes = list(range(poly.degree + 1))
    points = [(t, partial_sum_eval(poly, fixed, t)) for t in nodes]
    coeffs = f.interpolate(points)
    return coeffs + [0] * (poly.degree + 1 - len(coeffs))


def verifier_round_check(field, g: list[int], prev_value: int, d: int) -> bool:
    """Degree bound plus the chaining identity g(0) + g(1) = previous value."""
    if len(g) > d + 1 and any(c for c in g[d + 1 :]):
        return False
    g0 = g[0]
    g1 = 0
    for c in g:
        g1 ^= c
    return (g0 ^ g1) == prev_value


def sumcheck_soundness_bound(n_vars: int, d: int, field_size: int) -> float:
    return n_vars * d / field_size


def run_interactive_sumcheck(
    poly: MultivariatePolynomial,
    claim: int,
    rng: np.random.Generator,
    prover=None,
    fresh_final_point: bool = False,
) -> bool:
    """One interactive run; prover defaults to honest.

    prover(i, rs) must return the round-i coefficient list given challenges
    r_1..r_{i-1}.  With fresh_final_point the closing identity is checked at
    a newly drawn field element instead of the final challenge.
    """
    f = poly.field
    if prover is None:
        prover = lambda i, rs: prover_round(poly, rs)
    rs: list[int] = []
    prev = claim
    for i in range(1, poly.n_vars + 1):
        g = prover(i, rs)
        if not verifier_round_check(f, g, prev, poly.degree):
            return False
        r = f.rand(rng)
        rs.append(r)
        prev = f.poly_eval(g, r)
    if fresh_final_point:
        extra = f.rand(rng)
        g_last = prover(poly.n_vars, rs[:-1])
        return f.poly_eval(g_last, extra) == poly.evaluate(tuple(rs[:-1]) + (extra,))
    return prev == poly.evaluate(tuple(rs))


# -- committed-round form for the round-collapse compiler --------------------


def encode_coeffs(field, coeffs: list[int]) -> np.ndarray:
    out = np.concatenate([int_to_bits(c, field.m) for c in coeffs])
    return out.astype(np.uint8)


def decode_coeffs(field, bits: np.ndarray, count: int) -> list[int]:
    if len(bits) != count * field.m:
        raise ValueError("coefficient blob has the wrong length")
    return [bits_to_int(bits[j * field.m : (j + 1) * field.m]) for j in range(count)]


def sumcheck_protocol(
    poly: MultivariatePolynomial, claim: int, fresh_final_point: bool = False
) -> RoundProtocol:
    """Sum-check as a committed-round protocol: k = n_vars rounds, no final message."""
    f = poly.field
    k = poly.n_vars
    width = (poly.degree + 1) * f.m
    rounds = [RoundSpec(width, f.m) for _ in range(k)]

    def decode_challenges(challenges) -> list[int]:
        return [bits_to_int(c) for c in challenges]

    class _Prover:
        def message(self, i: int, challenges) -> np.ndarray:
            if i == k + 1:
                return np.zeros(0, dtype=np.uint8)
            rs = decode_challenges(challenges[: i - 1])
            return encode_coeffs(f, prover_round(poly, rs))

    def verify_transcript(opened: dict[int, np.ndarray], final: np.ndarray, challenges) -> bool:
        if set(opened) != set(range(1, k + 1)) or len(final) != 0:
            return False
        rs = decode_challenges(challenges)
        prev = claim
        g_last = None
        for i in range(1, k + 1):
            try:
                g = decode_coeffs(f, opened[i], poly.degree + 1)
            except ValueError:
                return False
            if not verifier_round_check(f, g, prev, poly.degree):
                return False
            prev = f.poly_eval(g, rs[i - 1])
            g_last = g
        if fresh_final_point:
            # closing identity at an independent point derived from nothing
            # the prover controls; re-use the last challenge offset by one
            extra = (rs[-1] + 1) % f.order
            return f.poly_eval(g_last, extra) == poly.evaluate(tuple(rs[:-1]) + (extra,))
        return prev == poly.evaluate(tuple(rs))

    def simulate(challenges, rng):
        # prover messages are a deterministic function of the challenges, so
        # recomputing them is a perfect simulator and needs no extra input
        rs = decode_challenges(challenges)
        messages = {
            i: encode_coeffs(f, prover_round(poly, rs[: i - 1])) for i in range(1, k + 1)
        }
        return messages, np.zeros(0, dtype=np.uint8)

    return RoundProtocol(
        protocol_id="sumcheck",
        rounds=rounds,
        final_len=0,
        new_prover=lambda rng: _Prover(),
        sample_challenge=uniform_challenge(f.m),
        reveal_set=reveal_everything(k),
        verify_transcript=verify_transcript,
        simulate=simulate,
        soundness_error=sumcheck_soundness_bound(poly.n_vars, poly.degree, f.order),
    )
