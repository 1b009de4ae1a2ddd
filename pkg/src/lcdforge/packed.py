"""Bit-plane packing of vectors over GF(2), GF(3), GF(4).

A batch of ``N`` length-``n`` vectors becomes a ``(N, P, W)`` ``uint64``
array: ``P`` bit-planes of ``W = ceil(n / 64)`` words.

* GF(2): one plane, addition is XOR.
* GF(4): plane 0 is the low bit of the element code, plane 1 the high bit;
  addition is XOR of both planes.
* GF(3): one-hot planes (plane 0 marks the value 1, plane 1 the value 2);
  addition uses a six-term boolean formula.

Weight is ``popcount(plane0 | plane1 | ...)`` summed over words.
"""

from __future__ import annotations

import numpy as np

from lcdforge.gf import MUL


def n_planes(q: int) -> int:
    return 1 if q == 2 else 2


def n_words(n: int) -> int:
    return max(1, (n + 63) // 64)


def _pack_bits(bits: np.ndarray, words: int) -> np.ndarray:
    lead = bits.shape[:-1]
    padded = np.zeros(lead + (words * 64,), dtype=np.uint8)
    padded[..., : bits.shape[-1]] = bits
    by = np.packbits(padded, axis=-1, bitorder="little")
    return np.ascontiguousarray(by).view("<u8").reshape(lead + (words,))


def pack(q: int, dense: np.ndarray) -> np.ndarray:
    dense = np.asarray(dense, dtype=np.uint8)
    if dense.ndim == 1:
        dense = dense[None, :]
    words = n_words(dense.shape[-1])
    if q == 2:
        planes = [dense == 1]
    elif q == 3:
        planes = [dense == 1, dense == 2]
    else:
        planes = [(dense & 1).astype(bool), (dense >> 1).astype(bool)]
    return np.stack([_pack_bits(p, words) for p in planes], axis=-2)


def unpack(q: int, packed: np.ndarray, n: int) -> np.ndarray:
    packed = np.asarray(packed, dtype=np.uint64)
    by = np.ascontiguousarray(packed).view(np.uint8)
    bits = np.unpackbits(by, axis=-1, bitorder="little")[..., :n]
    if q == 2:
        return bits[..., 0, :].astype(np.uint8)
    if q == 3:
        return (bits[..., 0, :] + 2 * bits[..., 1, :]).astype(np.uint8)
    return (bits[..., 0, :] | (bits[..., 1, :] << 1)).astype(np.uint8)


def add(q: int, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if q != 3:
        return a ^ b
    a1, a2 = a[..., 0, :], a[..., 1, :]
    b1, b2 = b[..., 0, :], b[..., 1, :]
    a0 = ~(a1 | a2)
    b0 = ~(b1 | b2)
    s1 = (a1 & b0) | (a0 & b1) | (a2 & b2)
    s2 = (a2 & b0) | (a0 & b2) | (a1 & b1)
    return np.stack([s1, s2], axis=-2)


def weight(q: int, a: np.ndarray) -> np.ndarray:
    if q == 2:
        support = a[..., 0, :]
    else:
        support = a[..., 0, :] | a[..., 1, :]
    return np.bitwise_count(support).sum(axis=-1, dtype=np.int64)


def scaled_rows(q: int, rows: np.ndarray) -> np.ndarray:
    """``out[i, c]`` is the packed form of ``c * rows[i]`` for every element code c."""
    rows = np.asarray(rows, dtype=np.uint8)
    scaled = MUL[q][np.arange(q)[None, :, None], rows[:, None, :]]
    return pack(q, scaled)
