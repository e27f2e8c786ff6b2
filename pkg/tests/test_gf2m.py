import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bqsim.gf2m import IRREDUCIBLE, GF2m, field, is_irreducible
from bqsim.polynomials import (
    MultivariatePolynomial,
    boolean_cube_sum,
    format_polynomial,
    parse_polynomial,
    random_polynomial,
)


def test_shipped_moduli_are_irreducible():
    for m, modulus in IRREDUCIBLE.items():
        assert is_irreducible(modulus, m), f"m={m}"


def test_reducible_rejected_by_rabin():
    # x^4 + 1 = (x+1)^4 over GF(2)
    assert not is_irreducible((1 << 4) | 1, 4)


def test_gf256_known_product():
    f = field(8)
    # AES field: 0x57 * 0x83 = 0xC1
    assert f.mul(0x57, 0x83) == 0xC1


def test_binary_subfield():
    for m in (8, 16):
        f = field(m)
        assert f.mul(1, 1) == 1
        assert f.add(1, 1) == 0
        assert f.mul(0, 5 % f.order) == 0


@given(st.integers(0, 255), st.integers(0, 255), st.integers(0, 255))
@settings(max_examples=200, deadline=None)
def test_field_axioms_random_triples(a, b, c):
    f = field(8)
    assert f.mul(a, b) == f.mul(b, a)
    assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
    assert f.mul(a, b ^ c) == f.mul(a, b) ^ f.mul(a, c)


def test_inverse():
    f = field(8)
    for a in range(1, 256):
        assert f.mul(a, f.inv(a)) == 1
    with pytest.raises(ZeroDivisionError):
        f.inv(0)


def test_table_free_field_agrees_with_tables():
    tabled = GF2m(8)
    raw = GF2m(8)
    raw._exp = raw._log = None  # force shift-and-reduce paths
    rng = np.random.default_rng(0)
    for _ in range(200):
        a, b = int(rng.integers(0, 256)), int(rng.integers(0, 256))
        assert tabled.mul(a, b) == raw.mul(a, b)
    assert raw.inv(7) == tabled.inv(7)
    assert raw.pow(3, 77) == tabled.pow(3, 77)


def test_interpolation_round_trip():
    f = field(8)
    rng = np.random.default_rng(1)
    for _ in range(50):
        coeffs = [f.rand(rng) for _ in range(4)]
        pts = [(x, f.poly_eval(coeffs, x)) for x in range(4)]
        assert f.interpolate(pts) == coeffs


def test_interpolation_rejects_duplicate_nodes():
    f = field(8)
    with pytest.raises(ValueError):
        f.interpolate([(1, 0), (1, 1)])


def test_poly_eval_matches_term_by_term():
    f = field(8)
    rng = np.random.default_rng(2)
    for _ in range(30):
        poly = random_polynomial(f, 3, 2, rng)
        point = tuple(f.rand(rng) for _ in range(3))
        assert poly.evaluate(point) == poly.evaluate_term_by_term(point)


def test_cube_sum_product_polynomial():
    f = field(8)
    poly = MultivariatePolynomial(f, 2, 1, {(1, 1): 1})  # x1*x2
    assert boolean_cube_sum(poly) == 1


def test_cube_sum_zero_and_char2_cancellation():
    f = field(8)
    zero = MultivariatePolynomial(f, 2, 1, {})
    assert boolean_cube_sum(zero) == 0
    # x1 + x2 sums to 0+1+1+0 = 0 in characteristic 2
    lin = MultivariatePolynomial(f, 2, 1, {(1, 0): 1, (0, 1): 1})
    assert boolean_cube_sum(lin) == 0


def test_parse_format_round_trip():
    f = field(8)
    rng = np.random.default_rng(3)
    poly = random_polynomial(f, 3, 2, rng)
    text = format_polynomial(poly)
    back = parse_polynomial(text, f, degree=2)
    assert back.coeffs == poly.coeffs
    assert back.n_vars == 3


def test_parse_rejects_garbage():
    f = field(8)
    with pytest.raises(ValueError):
        parse_polynomial("1 2\n1 2 3 zz\n", f)
    with pytest.raises(ValueError):
        parse_polynomial("", f)
    with pytest.raises(ValueError):
        parse_polynomial("1 0 aa\n1 0 0 bb\n", f)  # inconsistent arity
