"""Multivariate polynomials over GF(2^m) with a per-variable degree bound.

Coefficients live in a sparse exponent-tuple table.  The text format is
one monomial per line: the exponent vector, then the coefficient in hex;
lines starting with '#' are comments.

    # 3 variables, degree <= 2
    2 0 1 1f
    0 1 0 03
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf2m import GF2m

BRUTE_FORCE_CAP = 24


@dataclass(frozen=True)
class MultivariatePolynomial:
    field: GF2m
    n_vars: int
    degree: int  # per-variable bound
    coeffs: dict[tuple[int, ...], int]

    def __post_init__(self):
        for expo, c in self.coeffs.items():
            if len(expo) != self.n_vars:
                raise ValueError("exponent arity must match variable count")
            if any(e < 0 or e > self.degree for e in expo):
                raise ValueError("monomial exceeds the per-variable degree bound")
            if not 0 <= c < self.field.order:
                raise ValueError("coefficient outside the field")

    def evaluate(self, point: tuple[int, ...]) -> int:
        if len(point) != self.n_vars:
            raise ValueError("one coordinate per variable")
        f = self.field
        total = 0
        for expo, c in self.coeffs.items():
            term = c
            for x, e in zip(point, expo):
                if e:
                    term = f.mul(term, f.pow(x, e))
            total ^= term
        return total

    def evaluate_term_by_term(self, point: tuple[int, ...]) -> int:
        """Independent evaluation path: expand each power as repeated products."""
        f = self.field
        total = 0
        for expo, c in self.coeffs.items():
            term = c
            for x, e in zip(point, expo):
                for _ in range(e):
                    term = f.mul(term, x)
            total ^= term
        return total


def boolean_cube_sum(poly: MultivariatePolynomial) -> int:
    """Sum of the polynomial over {0,1}^n_vars, by direct enumeration."""
    if poly.n_vars > BRUTE_FORCE_CAP:
        raise ValueError(f"brute-force sum capped at {BRUTE_FORCE_CAP} variables")
    total = 0
    for mask in range(1 << poly.n_vars):
        point = tuple((mask >> (poly.n_vars - 1 - i)) & 1 for i in range(poly.n_vars))
        total ^= poly.evaluate(point)
    return total


def parse_polynomial(text: str, field: GF2m, degree: int | None = None) -> MultivariatePolynomial:
    coeffs: dict[tuple[int, ...], int] = {}
    n_vars = None
    for line_no, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        parts = body.split()
        if len(parts) < 2:
            raise ValueError(f"line {line_no}: need an exponent vector and a coefficient")
        try:
            expo = tuple(int(p) for p in parts[:-1])
            coeff = int(parts[-1], 16)
        except ValueError:
            raise ValueError(f"line {line_no}: malformed monomial") from None
        if n_vars is None:
            n_vars = len(expo)
        elif len(expo) != n_vars:
            raise ValueError(f"line {line_no}: inconsistent variable count")
        coeffs[expo] = coeffs.get(expo, 0) ^ coeff
    if n_vars is None:
        raise ValueError("empty polynomial file")
    if degree is None:
        degree = max((max(e) for e in coeffs), default=0)
    return MultivariatePolynomial(field, n_vars, degree, coeffs)


def format_polynomial(poly: MultivariatePolynomial) -> str:
    lines = [f"# {poly.n_vars} variables, degree <= {poly.degree}"]
    for expo in sorted(poly.coeffs):
        c = poly.coeffs[expo]
        if c:
            lines.append(" ".join(str(e) for e in expo) + f" {c:x}")
    return "\n".join(lines) + "\n"


def random_polynomial(
    field: GF2m, n_vars: int, degree: int, rng, density: float = 0.5
) -> MultivariatePolynomial:
    """Random sparse polynomial for tests and demos."""
    import itertools

    coeffs = {}
    for expo in itertools.product(range(degree + 1), repeat=n_vars):
        if rng.random() < density:
            c = field.rand(rng)
            if c:
                coeffs[expo] = c
    if not coeffs:
        coeffs[(0,) * n_vars] = 1
    return MultivariatePolynomial(field, n_vars, degree, coeffs)
