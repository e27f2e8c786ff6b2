"""Bit-vector helpers shared by every protocol module.

Bit strings are numpy uint8 arrays with values in {0, 1}.  Helpers here
convert to and from text / bytes and provide the couple of GF(2) idioms
used everywhere.
"""

from __future__ import annotations

import numpy as np


def bits(value) -> np.ndarray:
    """Coerce a '0101' string, an iterable, or an array to a uint8 bit vector."""
    if isinstance(value, np.ndarray):
        a = value.astype(np.uint8, copy=False)
    elif isinstance(value, str):
        a = np.frombuffer(value.encode("ascii"), dtype=np.uint8) - ord("0")
    else:
        a = np.asarray(list(value), dtype=np.uint8)
    if a.ndim != 1 or (a.size and a.max() > 1):
        raise ValueError("bit vectors must be one-dimensional with values in {0,1}")
    return a


def bitstr(a: np.ndarray) -> str:
    return "".join("1" if b else "0" for b in a)


def rand_bits(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.integers(0, 2, size=n, dtype=np.uint8)


def xor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape != b.shape:
        raise ValueError(f"length mismatch: {a.shape} vs {b.shape}")
    return np.bitwise_xor(a, b)


def bits_to_int(a: np.ndarray) -> int:
    """Big-endian packing: bits()[0] is the most significant bit."""
    out = 0
    for b in a:
        out = (out << 1) | int(b)
    return out


def int_to_bits(value: int, width: int) -> np.ndarray:
    if value < 0 or value >= (1 << width):
        raise ValueError(f"{value} does not fit in {width} bits")
    return np.array([(value >> (width - 1 - i)) & 1 for i in range(width)], dtype=np.uint8)


def pack_bits(a: np.ndarray) -> bytes:
    """Length-prefixed byte packing; exact inverse of unpack_bits."""
    n = len(a)
    body = np.packbits(a).tobytes() if n else b""
    return n.to_bytes(4, "big") + body


def unpack_bits(raw: bytes) -> tuple[np.ndarray, bytes]:
    """Read one pack_bits blob from the front of raw; return (bits, rest)."""
    if len(raw) < 4:
        raise ValueError("truncated bit blob")
    n = int.from_bytes(raw[:4], "big")
    nbytes = (n + 7) // 8
    if len(raw) < 4 + nbytes:
        raise ValueError("truncated bit blob")
    body = np.frombuffer(raw[4 : 4 + nbytes], dtype=np.uint8)
    a = np.unpackbits(body, count=n).astype(np.uint8) if n else np.zeros(0, dtype=np.uint8)
    return a, raw[4 + nbytes :]
