"""Binary linear codes used as measurement-basis families.

A GeneratorMatrix maps an n-bit string to an N-bit basis mask; the code's
minimum distance controls how far apart two strings' measurement bases
are.  Minimum distance is verified by exhaustive codeword enumeration,
which caps the dimension at 16.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bits import bits as as_bits

_ENUM_CAP = 16


@dataclass(frozen=True)
class GeneratorMatrix:
    """N x n generator over GF(2) with verified minimum distance d."""

    matrix: np.ndarray  # shape (N, n), dtype uint8
    distance: int

    def __post_init__(self):
        m = self.matrix
        if m.ndim != 2 or m.dtype != np.uint8:
            raise ValueError("generator must be a 2-d uint8 array")
        if self.cols > _ENUM_CAP:
            raise ValueError(f"code dimension {self.cols} exceeds enumeration cap {_ENUM_CAP}")
        if _gf2_rank(m) != self.cols:
            raise ValueError("generator must have full column rank")
        if min_distance(m) != self.distance:
            raise ValueError("declared minimum distance disagrees with enumeration")

    @property
    def rows(self) -> int:  # codeword length N
        return self.matrix.shape[0]

    @property
    def cols(self) -> int:  # message length n
        return self.matrix.shape[1]

    def encode(self, a) -> np.ndarray:
        v = as_bits(a)
        if len(v) != self.cols:
            raise ValueError(f"message length {len(v)} != {self.cols}")
        return (self.matrix @ v) % 2

    def params(self) -> tuple[int, int, int]:
        return self.rows, self.cols, self.distance


def _gf2_rank(m: np.ndarray) -> int:
    a = m.astype(np.uint8).copy()
    rank = 0
    rows, cols = a.shape
    for c in range(cols):
        pivot = None
        for r in range(rank, rows):
            if a[r, c]:
                pivot = r
                break
        if pivot is None:
            continue
        a[[rank, pivot]] = a[[pivot, rank]]
        for r in range(rows):
            if r != rank and a[r, c]:
                a[r] ^= a[rank]
        rank += 1
    return rank


def min_distance(matrix: np.ndarray) -> int:
    """Minimum weight over nonzero codewords, by full enumeration."""
    n = matrix.shape[1]
    if n > _ENUM_CAP:
        raise ValueError("dimension too large to enumerate")
    best = matrix.shape[0] + 1
    for a in range(1, 2**n):
        v = np.array([(a >> (n - 1 - i)) & 1 for i in range(n)], dtype=np.uint8)
        w = int(((matrix @ v) % 2).sum())
        best = min(best, w)
    return best


def repetition_code(length: int) -> GeneratorMatrix:
    """[N, 1, N] repetition code: the basis family behind plain bit commitment."""
    return GeneratorMatrix(np.ones((length, 1), dtype=np.uint8), length)


def hamming_7_4() -> GeneratorMatrix:
    g = np.array(
        [
            [1, 0, 0, 0],
            [0, 1, 0, 0],
            [0, 0, 1, 0],
            [0, 0, 0, 1],
            [1, 1, 0, 1],
            [1, 0, 1, 1],
            [0, 1, 1, 1],
        ],
        dtype=np.uint8,
    )
    return GeneratorMatrix(g, 3)


def extended_hamming_8_4() -> GeneratorMatrix:
    h = hamming_7_4().matrix
    parity = h.sum(axis=0) % 2
    g = np.vstack([h, parity.astype(np.uint8)])
    return GeneratorMatrix(g, 4)


def reed_muller_16_5() -> GeneratorMatrix:
    """First-order Reed-Muller [16, 5, 8]: all-ones row plus the four coordinates."""
    cols = []
    for point in range(16):
        coords = [(point >> (3 - j)) & 1 for j in range(4)]
        cols.append([1] + coords)
    return GeneratorMatrix(np.array(cols, dtype=np.uint8), 8)


CODE_TABLE = {
    "repetition16": repetition_code(16),
    "hamming74": hamming_7_4(),
    "ext-hamming84": extended_hamming_8_4(),
    "reed-muller165": reed_muller_16_5(),
}
