"""Binary extension fields GF(2^m).

Elements are ints in [0, 2^m); addition is xor, multiplication reduces by
a fixed irreducible polynomial.  {0, 1} always embed the binary subfield.
Fields with m <= 16 build exp/log tables lazily, making multiplication a
pair of lookups; larger fields fall back to shift-and-reduce.

The modulus table carries one low-weight irreducible per supported m
(exponent 8 through 61); shipped values are verified irreducible by
Rabin's test in the test suite.
"""

from __future__ import annotations

import functools

# m -> irreducible polynomial, including the leading x^m term
IRREDUCIBLE = {
    8: 0x11B,  # x^8 + x^4 + x^3 + x + 1
    9: (1 << 9) | (1 << 1) | 1,
    10: (1 << 10) | (1 << 3) | 1,
    11: (1 << 11) | (1 << 2) | 1,
    12: (1 << 12) | (1 << 3) | 1,
    16: (1 << 16) | (1 << 5) | (1 << 3) | (1 << 1) | 1,
    24: (1 << 24) | (1 << 4) | (1 << 3) | (1 << 1) | 1,
    32: (1 << 32) | (1 << 7) | (1 << 3) | (1 << 2) | 1,
    48: (1 << 48) | (1 << 5) | (1 << 3) | (1 << 2) | 1,
    61: (1 << 61) | (1 << 5) | (1 << 2) | (1 << 1) | 1,
}

_TABLE_CAP = 16


def _raw_mul(a: int, b: int, modulus: int, m: int) -> int:
    out = 0
    top = 1 << m
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= modulus
    return out


class GF2m:
    """Arithmetic context for GF(2^m)."""

    def __init__(self, m: int, modulus: int | None = None):
        if modulus is None:
            if m not in IRREDUCIBLE:
                raise ValueError(f"no shipped modulus for m={m}; pass one explicitly")
            modulus = IRREDUCIBLE[m]
        if modulus >> m != 1:
            raise ValueError("modulus must have degree exactly m")
        self.m = m
        self.order = 1 << m
        self.modulus = modulus
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        if m <= _TABLE_CAP:
            self._build_tables()

    def _build_tables(self) -> None:
        g = self._find_generator()
        size = self.order - 1
        exp = [0] * (2 * size)
        log = [0] * self.order
        acc = 1
        for i in range(size):
            exp[i] = acc
            log[acc] = i
            acc = _raw_mul(acc, g, self.modulus, self.m)
        if acc != 1:
            raise ValueError("modulus is not irreducible (generator order wrong)")
        exp[size : 2 * size] = exp[:size]
        self._exp, self._log = exp, log

    def _find_generator(self) -> int:
        size = self.order - 1
        for cand in range(2, self.order):
            seen = 1
            acc = cand
            while acc != 1:
                acc = _raw_mul(acc, cand, self.modulus, self.m)
                seen += 1
                if seen > size:
                    break
            if seen == size:
                return cand
        raise ValueError("no generator found; modulus is not irreducible")

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return _raw_mul(a, b, self.modulus, self.m)

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 0 if e else 1
        if self._log is not None:
            return self._exp[(self._log[a] * e) % (self.order - 1)]
        out = 1
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        if self._log is not None:
            return self._exp[(self.order - 1) - self._log[a]]
        return self.pow(a, self.order - 2)

    def rand(self, rng) -> int:
        return int(rng.integers(0, self.order))

    def interpolate(self, points: list[tuple[int, int]]) -> list[int]:
        """Coefficients (ascending degree) of the Lagrange interpolant."""
        k = len(points)
        xs = [p[0] for p in points]
        if len(set(xs)) != k:
            raise ValueError("interpolation nodes must be distinct")
        coeffs = [0] * k
        for i, (xi, yi) in enumerate(points):
            # basis polynomial prod_{j != i} (X - x_j) / (x_i - x_j)
            basis = [1]
            denom = 1
            for j, (xj, _) in enumerate(points):
                if j == i:
                    continue
                basis = self._poly_mul_linear(basis, xj)
                denom = self.mul(denom, xi ^ xj)
            scale = self.mul(yi, self.inv(denom))
            for d, c in enumerate(basis):
                coeffs[d] ^= self.mul(c, scale)
        return coeffs

    def _poly_mul_linear(self, poly: list[int], root: int) -> list[int]:
        """poly(X) * (X - root); subtraction is addition in characteristic 2."""
        out = [0] * (len(poly) + 1)
        for d, c in enumerate(poly):
            out[d + 1] ^= c
            out[d] ^= self.mul(c, root)
        return out

    def poly_eval(self, coeffs: list[int], x: int) -> int:
        out = 0
        for c in reversed(coeffs):
            out = self.mul(out, x) ^ c
        return out


@functools.lru_cache(maxsize=None)
def field(m: int) -> GF2m:
    return GF2m(m)


def is_irreducible(modulus: int, m: int) -> bool:
    """Rabin's test: x^(2^m) = x mod f, and gcd(x^(2^(m/p)) - x, f) = 1."""

    def poly_mod_mul(a, b):
        out = 0
        while b:
            if b & 1:
                out ^= a
            b >>= 1
            a <<= 1
            if a >> m & 1:
                a ^= modulus
        return out

    def x_pow_pow2(k):
        # x^(2^k) mod f by repeated squaring of the polynomial x
        acc = 0b10
        for _ in range(k):
            acc = poly_mod_mul(acc, acc)
        return acc

    def poly_gcd(a, b):
        while b:
            a, b = b, _poly_rem(a, b)
        return a

    def _poly_rem(a, b):
        db = b.bit_length() - 1
        while a.bit_length() - 1 >= db and a:
            a ^= b << (a.bit_length() - 1 - db)
        return a

    if x_pow_pow2(m) != 0b10:
        return False
    primes = set()
    x = m
    d = 2
    while d * d <= x:
        if x % d == 0:
            primes.add(d)
            while x % d == 0:
                x //= d
        d += 1
    if x > 1:
        primes.add(x)
    for p in primes:
        h = x_pow_pow2(m // p) ^ 0b10
        if poly_gcd(modulus, h) != 1:
            return False
    return True
