"""
Bit-packed Gaussian elimination over GF(2) and GF(4).

Rows are packed into little-endian uint64 words (bit c % 64 of word c // 64
holds column c). GF(4) matrices are stored as two bit planes (lo, hi) with
element value lo + 2*hi in galois' encoding of GF(4) = F_2[x]/(x^2 + x + 1),
so 2 is alpha and 3 is alpha + 1 = alpha^2. Row operations are word-parallel
XORs restricted to the words at or after the pivot word.
"""
from typing import List, Sequence, Tuple

import numpy as np

WORD_BITS = 64
_ONE = np.uint64(1)

# Inverses in GF(4): 1 -> 1, alpha -> alpha^2, alpha^2 -> alpha
_GF4_INV = (0, 1, 3, 2)


def pack_bits(bits: np.ndarray) -> np.ndarray:
    """Pack a rows x cols 0/1 matrix into a rows x ceil(cols/64) uint64 array."""
    rows, cols = bits.shape
    nwords = max(1, -(-cols // WORD_BITS))
    padded = np.zeros((rows, nwords * WORD_BITS), dtype=np.uint8)
    padded[:, :cols] = bits
    packed = np.packbits(padded, axis=1, bitorder='little')
    return np.ascontiguousarray(packed).view('<u8').copy()


def unpack_bits(words: np.ndarray, cols: int) -> np.ndarray:
    """Inverse of pack_bits."""
    as_bytes = np.ascontiguousarray(words.astype('<u8')).view(np.uint8)
    bits = np.unpackbits(as_bytes, axis=1, bitorder='little')
    return bits[:, :cols].astype(np.uint8)


def _column(words: np.ndarray, c: int) -> np.ndarray:
    w, b = divmod(c, WORD_BITS)
    return ((words[:, w] >> np.uint64(b)) & _ONE).astype(np.uint8)


def rref_gf2(bits: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    """
    Reduced row echelon form over GF(2).

    Args:
        bits: rows x cols uint8 matrix of 0/1 entries

    Returns:
        Tuple of (rref as uint8 matrix, pivot columns in increasing order)
    """
    rows, cols = bits.shape
    words = pack_bits(bits)
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        w = c // WORD_BITS
        below = np.flatnonzero(_column(words[r:], c))
        if below.size == 0:
            continue
        p = r + int(below[0])
        if p != r:
            words[[r, p]] = words[[p, r]]
        hits = _column(words, c).astype(bool)
        hits[r] = False
        if hits.any():
            words[hits, w:] ^= words[r, w:]
        pivots.append(c)
        r += 1
    return unpack_bits(words, cols), pivots


def _gf4_scale(lo: np.ndarray, hi: np.ndarray, s: int) -> Tuple[np.ndarray, np.ndarray]:
    if s == 1:
        return lo, hi
    if s == 2:
        return hi, lo ^ hi
    if s == 3:
        return lo ^ hi, lo
    return np.zeros_like(lo), np.zeros_like(hi)


def rref_gf4(values: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    """
    Reduced row echelon form over GF(4) on two packed bit planes.

    Args:
        values: rows x cols uint8 matrix with entries in {0, 1, 2, 3}

    Returns:
        Tuple of (rref as uint8 matrix, pivot columns in increasing order)
    """
    rows, cols = values.shape
    lo = pack_bits(values & 1)
    hi = pack_bits(values >> 1)
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        w = c // WORD_BITS
        below = _column(lo[r:], c) | (_column(hi[r:], c) << 1)
        nz = np.flatnonzero(below)
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            lo[[r, p]] = lo[[p, r]]
            hi[[r, p]] = hi[[p, r]]

        lead = int(below[nz[0]])
        lo[r, w:], hi[r, w:] = _gf4_scale(lo[r, w:].copy(), hi[r, w:].copy(), _GF4_INV[lead])

        column = _column(lo, c) | (_column(hi, c) << 1)
        column[r] = 0
        for s in (1, 2, 3):
            hits = column == s
            if not hits.any():
                continue
            plo, phi = _gf4_scale(lo[r, w:], hi[r, w:], s)
            lo[hits, w:] ^= plo
            hi[hits, w:] ^= phi
        pivots.append(c)
        r += 1
    result = unpack_bits(lo, cols) | (unpack_bits(hi, cols) << 1)
    return result.astype(np.uint8), pivots


def rank_bitrows(rows: Sequence[int]) -> int:
    """
    Rank over GF(2) of rows given as Python int bitsets.

    Used for the many tiny rank computations of the brute-force oracle, where
    array dispatch overhead dominates.
    """
    basis: List[int] = []
    for row in rows:
        for b in basis:
            row = min(row, row ^ b)
        if row:
            basis.append(row)
            basis.sort(reverse=True)
    return len(basis)
