"""Binary Hamming codes: construction, encoding, syndromes and t=1 correction.

Conventions (all products act on the right of row vectors):

* ``G`` is ``k x n``; a message ``m`` encodes to ``m @ G``.
* ``H`` is ``n x r``; row ``i`` of ``H`` is the syndrome of an error at
  position ``i``, and ``c @ H == 0`` exactly for codewords.
* ``R`` is ``n x k`` with ``G @ R == I``; it reads the message back out of a
  clean codeword.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import CodeInvariantError, DimensionError, NonzeroSyndromeError, UncorrectableError
from .gf2 import BitMatrix, BitVector, mat_mul, vec_mat_mul

T_CORRECTABLE = 1


@dataclass(frozen=True, eq=False)
class HammingCode:
    r: int
    n: int
    k: int
    G: BitMatrix
    H: BitMatrix
    R: BitMatrix
    syndrome_table: dict[int, int] = field(repr=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HammingCode):
            return NotImplemented
        return (self.r, self.G, self.H, self.R) == (other.r, other.G, other.H, other.R)

    def __hash__(self) -> int:
        return hash((self.r, self.G, self.H, self.R))


def dimensions(r: int) -> tuple[int, int]:
    """``(n, k)`` of the Hamming code with ``r`` parity bits."""
    if r < 2:
        raise ValueError(f"Hamming codes need r >= 2, got {r}")
    n = (1 << r) - 1
    return n, n - r


@lru_cache(maxsize=None)
def parity_bits_for_length(n: int) -> int:
    """Inverse of :func:`dimensions` on ``n``; raises if ``n`` is not ``2^r - 1``."""
    r = (n + 1).bit_length() - 1
    if r < 2 or (1 << r) - 1 != n:
        raise DimensionError(f"{n} is not a Hamming code length")
    return r


def build_hamming(r: int) -> HammingCode:
    """Canonical Hamming code.

    Position ``i`` (0-based) has syndrome ``i + 1`` written in binary with the
    least significant bit in column 0 of ``H``.  Positions ``2^c - 1`` carry
    parity; the remaining ``k`` positions carry the message in order.  At
    ``r = 3`` this reproduces the textbook (7, 4) layout.
    """
    n, k = dimensions(r)
    # Syndrome row for position i: column c holds bit c of (i + 1).
    h_rows = []
    for i in range(n):
        s = i + 1
        h_rows.append(sum(((s >> c) & 1) << (r - 1 - c) for c in range(r)))
    data_positions = [i for i in range(n) if (i + 1) & i]
    g_rows = []
    for d in data_positions:
        row = 1 << (n - 1 - d)
        for c in range(r):
            if ((d + 1) >> c) & 1:
                row |= 1 << (n - 1 - ((1 << c) - 1))
        g_rows.append(row)
    r_rows = [0] * n
    for m, d in enumerate(data_positions):
        r_rows[d] = 1 << (k - 1 - m)
    return load_code(
        BitMatrix.from_rows(g_rows, n),
        BitMatrix.from_rows(h_rows, r),
        BitMatrix.from_rows(r_rows, k),
    )


def load_code(G: BitMatrix, H: BitMatrix, R: BitMatrix) -> HammingCode:
    """Wrap explicit ``(G, H, R)`` after verifying every invariant.

    Raises:
        CodeInvariantError: dimensions are inconsistent, ``G @ H != 0``,
            ``G @ R != I`` or the rows of ``H`` are not distinct and nonzero.
    """
    k, n = G.shape
    if H.nrows != n or R.shape != (n, k):
        raise CodeInvariantError(f"inconsistent shapes G{G.shape} H{H.shape} R{R.shape}")
    r = H.ncols
    if r < 2 or (1 << r) - 1 != n or n - r != k:
        raise CodeInvariantError(f"(n={n}, k={k}, r={r}) is not a Hamming code")
    if not mat_mul(G, H).is_zero():
        raise CodeInvariantError("G @ H is not zero")
    if mat_mul(G, R) != BitMatrix.identity(k):
        raise CodeInvariantError("G @ R is not the identity")
    table: dict[int, int] = {}
    for pos, s in enumerate(H.packed_rows):
        if s == 0:
            raise CodeInvariantError(f"H row {pos} is zero")
        if s in table:
            raise CodeInvariantError(f"H rows {table[s]} and {pos} coincide")
        table[s] = pos
    return HammingCode(r=r, n=n, k=k, G=G, H=H, R=R, syndrome_table=table)


def encode(code: HammingCode, msg: BitVector) -> BitVector:
    if len(msg) != code.k:
        raise DimensionError(f"message length {len(msg)} != k={code.k}")
    return vec_mat_mul(msg, code.G)


def syndrome(code: HammingCode, word: BitVector) -> BitVector:
    if len(word) != code.n:
        raise DimensionError(f"word length {len(word)} != n={code.n}")
    return vec_mat_mul(word, code.H)


def correct(code: HammingCode, word: BitVector) -> tuple[BitVector, int | None]:
    """Fix at most one flipped bit.

    Returns the corrected word and the flipped position, or ``None`` when the
    syndrome was already zero.
    """
    s = syndrome(code, word).value
    if s == 0:
        return word, None
    pos = code.syndrome_table.get(s)
    if pos is None:
        raise UncorrectableError(f"syndrome {s:0{code.r}b} matches no single-bit error")
    return BitVector.from_int(word.value ^ (1 << (code.n - 1 - pos)), code.n), pos


def decode(code: HammingCode, word: BitVector) -> BitVector:
    """Message of a clean codeword; run :func:`correct` first."""
    if not syndrome(code, word).is_zero():
        raise NonzeroSyndromeError("word is not a codeword; correct it first")
    return vec_mat_mul(word, code.R)
