"""Universal hashing and min-entropy utilities.

The hash family is Toeplitz over GF(2): a seed of in_len + out_len - 1
bits defines a matrix that is constant along diagonals, giving a
two-universal, GF(2)-linear family with collision probability at most
2^-out_len.  Entropies are in bits throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bits import bits as as_bits


@dataclass(frozen=True)
class UniversalHash:
    in_len: int
    out_len: int
    seed: np.ndarray  # in_len + out_len - 1 bits, diagonal-constant entries

    def __post_init__(self):
        if len(self.seed) != self.in_len + self.out_len - 1:
            raise ValueError("seed must have in_len + out_len - 1 bits")


def sample_hash(in_len: int, out_len: int, rng: np.random.Generator) -> UniversalHash:
    if in_len < 1 or out_len < 1:
        raise ValueError("hash dimensions must be positive")
    return UniversalHash(in_len, out_len, rng.integers(0, 2, in_len + out_len - 1, dtype=np.uint8))


def apply_hash(h: UniversalHash, x) -> np.ndarray:
    """h(x)_j = sum_i seed[j - i + in_len - 1] * x_i over GF(2)."""
    v = as_bits(x)
    if len(v) != h.in_len:
        raise ValueError(f"input length {len(v)} != {h.in_len}")
    # correlation of the seed against the reversed input walks the diagonals
    out = np.correlate(h.seed.astype(np.int64), v[::-1].astype(np.int64), mode="valid")
    return (out % 2).astype(np.uint8)


def hash_matrix(h: UniversalHash) -> np.ndarray:
    """Explicit out_len x in_len Toeplitz matrix, for enumeration tests."""
    j = np.arange(h.out_len)[:, None]
    i = np.arange(h.in_len)[None, :]
    return h.seed[j - i + h.in_len - 1]


def hamming_distance(x, y) -> int:
    a, b = as_bits(x), as_bits(y)
    if len(a) != len(b):
        raise ValueError("length mismatch")
    return int(np.count_nonzero(a != b))


def relative_distance(x, y) -> float:
    a = as_bits(x)
    if len(a) == 0:
        raise ValueError("relative distance undefined for empty strings")
    return hamming_distance(x, y) / len(a)


def binary_entropy(p: float) -> float:
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    if p in (0.0, 1.0):
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def ball_size_bound(n: int, delta: float) -> float:
    """2^(H(delta) n), an upper bound on the size of a relative-delta Hamming ball."""
    if not 0.0 <= delta <= 0.5:
        raise ValueError("delta must lie in [0, 1/2]")
    return 2.0 ** (binary_entropy(delta) * n)


@dataclass
class FiniteDistribution:
    """Joint distribution of named discrete variables on an explicit support.

    atoms[i] is a tuple of per-variable values (any hashables) and probs[i]
    its probability; probabilities must sum to 1.
    """

    var_names: tuple[str, ...]
    atoms: list[tuple]
    probs: np.ndarray = field(default=None)

    def __post_init__(self):
        self.probs = np.asarray(self.probs, dtype=float)
        if len(self.atoms) != len(self.probs):
            raise ValueError("one probability per atom")
        if np.any(self.probs < 0) or abs(self.probs.sum() - 1.0) > 1e-12:
            raise ValueError("probabilities must be nonnegative and sum to 1")
        for atom in self.atoms:
            if len(atom) != len(self.var_names):
                raise ValueError("atom arity must match variable count")

    def _cols(self, names: tuple[str, ...]) -> list[int]:
        return [self.var_names.index(n) for n in names]

    def project(self, atom: tuple, names: tuple[str, ...]) -> tuple:
        cols = self._cols(names)
        return tuple(atom[c] for c in cols)


def min_entropy(
    dist: FiniteDistribution,
    target: tuple[str, ...],
    given: tuple[str, ...] = (),
    mode: str = "worst",
) -> float:
    """Conditional min-entropy of the target variables given the conditioning ones.

    mode="worst": min over conditioning events z of -log max_x P(x|z).
    mode="average": -log of the expected maximum guessing probability,
    E_z[max_x P(x|z)].
    """
    if mode not in ("worst", "average"):
        raise ValueError("mode must be 'worst' or 'average'")
    cond: dict[tuple, dict[tuple, float]] = {}
    for atom, p in zip(dist.atoms, dist.probs):
        if p == 0:
            continue
        z = dist.project(atom, given)
        x = dist.project(atom, target)
        cond.setdefault(z, {}).setdefault(x, 0.0)
        cond[z][x] += p
    if not cond:
        raise ValueError("conditioning event has probability zero")
    if mode == "worst":
        worst = max(max(xs.values()) / sum(xs.values()) for xs in cond.values())
        return -math.log2(worst)
    avg = sum(max(xs.values()) for xs in cond.values())  # sum_z P(z) max_x P(x|z)
    return -math.log2(avg)


class SplitNotFound(Exception):
    """No valid splitting assignment exists on this support; reported loudly."""


def _split_valid(dist: FiniteDistribution, assignment: dict[tuple, int], alpha: float) -> bool:
    """Check H(X_{1-C} | Z C) >= alpha/2 - 1 under the average convention.

    The unchosen variable is x1 on atoms assigned C=0 and x0 on atoms with
    C=1; the guessing probability is averaged over the (z, c) events.
    """
    buckets: dict[tuple, dict] = {}
    for atom, p in zip(dist.atoms, dist.probs):
        if p == 0:
            continue
        x0, x1, z = atom
        c = assignment[atom]
        key = (z, c)
        unchosen = x1 if c == 0 else x0
        buckets.setdefault(key, {}).setdefault(unchosen, 0.0)
        buckets[key][unchosen] += p
    avg_guess = sum(max(xs.values()) for xs in buckets.values())
    return -math.log2(avg_guess) >= alpha / 2 - 1 - 1e-9


def split_min_entropy_oracle(dist: FiniteDistribution, alpha: float) -> dict[tuple, int]:
    """Explicit choice bit C(x0, x1, z) splitting joint min-entropy alpha.

    Requires H(X0 X1 | Z) >= alpha (worst-case convention, checked).  Tries
    the standard construction first -- C = 1 exactly when x1 is too likely
    given z -- then falls back to exhaustive search over assignments for
    supports of at most 12 atoms.  The returned assignment guarantees that
    the unchosen half keeps average-conditional min-entropy alpha/2 - 1.
    """
    if dist.var_names != ("x0", "x1", "z"):
        raise ValueError("distribution must have variables (x0, x1, z)")
    have = min_entropy(dist, ("x0", "x1"), ("z",), mode="worst")
    if have < alpha - 1e-9:
        raise ValueError(f"joint min-entropy {have:.4f} is below alpha={alpha}")

    # standard construction: flag x1 values that are too likely given z
    marg: dict[tuple, dict] = {}
    zmass: dict = {}
    for (x0, x1, z), p in zip(dist.atoms, dist.probs):
        if p == 0:
            continue
        marg.setdefault(z, {}).setdefault(x1, 0.0)
        marg[z][x1] += p
        zmass[z] = zmass.get(z, 0.0) + p
    greedy = {}
    for atom in dist.atoms:
        x0, x1, z = atom
        if zmass.get(z, 0.0) == 0.0:
            greedy[atom] = 0
            continue
        heavy = marg[z].get(x1, 0.0) / zmass[z] > 2 ** (-alpha / 2)
        greedy[atom] = 1 if heavy else 0
    if _split_valid(dist, greedy, alpha):
        return greedy

    support = [a for a, p in zip(dist.atoms, dist.probs) if p > 0]
    if len(support) > 12:
        raise SplitNotFound("greedy failed and support too large for exhaustive search")
    for mask in range(2 ** len(support)):
        cand = dict(greedy)
        for i, atom in enumerate(support):
            cand[atom] = (mask >> i) & 1
        if _split_valid(dist, cand, alpha):
            return cand
    raise SplitNotFound(
        "no valid assignment exists on this support; this would contradict "
        "the min-entropy splitting bound at this instance"
    )
