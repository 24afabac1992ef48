"""Dense linear algebra over GF(2) on word-packed bits.

Vectors and matrix rows are packed into Python integers.  Bit index 0 is
the *most significant* bit of the packed value, so ``BitVector.from_str
("1110000").value == 0b1110000`` and printed vectors read left to right,
like row vectors in textbook notation.

Rows are combined with integer XOR, which keeps every product a loop over
set bits rather than over individual entries.
"""

from __future__ import annotations

import random
from typing import Iterable, Iterator, Sequence

from .errors import DimensionError, GenerationError, SingularError

MAX_INVERTIBLE_ATTEMPTS = 1000


def _check_bits(bits: Sequence[int]) -> None:
    for b in bits:
        if b not in (0, 1):
            raise ValueError(f"bit values must be 0 or 1, got {b!r}")


def _pack(bits: Sequence[int]) -> int:
    value = 0
    for b in bits:
        value = (value << 1) | b
    return value


class BitVector:
    """Immutable row vector over GF(2)."""

    __slots__ = ("_len", "_value")

    def __init__(self, bits: Iterable[int]):
        bits = list(bits)
        _check_bits(bits)
        if not bits:
            raise ValueError("BitVector must have at least one bit")
        self._len = len(bits)
        self._value = _pack(bits)

    @classmethod
    def from_int(cls, value: int, length: int) -> "BitVector":
        if length < 1:
            raise ValueError("BitVector must have at least one bit")
        if value < 0 or value >> length:
            raise ValueError(f"value {value} does not fit in {length} bits")
        v = cls.__new__(cls)
        v._len = length
        v._value = value
        return v

    @classmethod
    def from_str(cls, s: str) -> "BitVector":
        """Parse ``"1 0 1"`` or ``"101"``; whitespace is ignored."""
        digits = [c for c in s if not c.isspace()]
        if any(c not in "01" for c in digits):
            raise ValueError(f"not a bit string: {s!r}")
        return cls(int(c) for c in digits)

    @classmethod
    def from_bytes(cls, data: bytes, length: int | None = None) -> "BitVector":
        """Unpack MSB-first bytes; ``length`` keeps only the leading bits."""
        total = 8 * len(data)
        if length is None:
            length = total
        if not 0 < length <= total:
            raise ValueError(f"length {length} outside 1..{total}")
        return cls.from_int(int.from_bytes(data, "big") >> (total - length), length)

    @classmethod
    def zeros(cls, length: int) -> "BitVector":
        return cls.from_int(0, length)

    @classmethod
    def unit(cls, length: int, index: int) -> "BitVector":
        if not 0 <= index < length:
            raise IndexError(index)
        return cls.from_int(1 << (length - 1 - index), length)

    @property
    def value(self) -> int:
        return self._value

    def __len__(self) -> int:
        return self._len

    def __getitem__(self, i: int) -> int:
        if i < 0:
            i += self._len
        if not 0 <= i < self._len:
            raise IndexError(i)
        return (self._value >> (self._len - 1 - i)) & 1

    def __iter__(self) -> Iterator[int]:
        for i in range(self._len - 1, -1, -1):
            yield (self._value >> i) & 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        return vec_xor(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return self._len == other._len and self._value == other._value

    def __hash__(self) -> int:
        return hash((self._len, self._value))

    def __repr__(self) -> str:
        return f"BitVector('{self.to_str()}')"

    def weight(self) -> int:
        return self._value.bit_count()

    def is_zero(self) -> bool:
        return self._value == 0

    def to_list(self) -> list[int]:
        return list(self)

    def to_str(self) -> str:
        return format(self._value, f"0{self._len}b")

    def to_bytes(self) -> bytes:
        """MSB-first, zero-padded at the tail to a whole byte."""
        nbytes = (self._len + 7) // 8
        return (self._value << (8 * nbytes - self._len)).to_bytes(nbytes, "big")


class BitMatrix:
    """Immutable ``rows x cols`` matrix over GF(2), one packed int per row."""

    __slots__ = ("_rows", "_nrows", "_ncols")

    def __init__(self, rows: Iterable[Iterable[int]]):
        packed = []
        ncols = None
        for row in rows:
            row = list(row)
            _check_bits(row)
            if ncols is None:
                ncols = len(row)
            elif len(row) != ncols:
                raise DimensionError("ragged rows")
            packed.append(_pack(row))
        if not packed or not ncols:
            raise DimensionError("matrix must be at least 1x1")
        self._rows = tuple(packed)
        self._nrows = len(packed)
        self._ncols = ncols

    @classmethod
    def from_rows(cls, rows: Iterable[int], ncols: int) -> "BitMatrix":
        rows = tuple(rows)
        if not rows or ncols < 1:
            raise DimensionError("matrix must be at least 1x1")
        for r in rows:
            if r < 0 or r >> ncols:
                raise ValueError(f"row value {r} does not fit in {ncols} columns")
        m = cls.__new__(cls)
        m._rows = rows
        m._nrows = len(rows)
        m._ncols = ncols
        return m

    @classmethod
    def from_vectors(cls, vectors: Sequence[BitVector]) -> "BitMatrix":
        ncols = len(vectors[0])
        if any(len(v) != ncols for v in vectors):
            raise DimensionError("vectors differ in length")
        return cls.from_rows((v.value for v in vectors), ncols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls.from_rows((1 << (n - 1 - i) for i in range(n)), n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "BitMatrix":
        return cls.from_rows((0,) * nrows, ncols)

    @property
    def nrows(self) -> int:
        return self._nrows

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def shape(self) -> tuple[int, int]:
        return (self._nrows, self._ncols)

    @property
    def packed_rows(self) -> tuple[int, ...]:
        return self._rows

    def row(self, i: int) -> BitVector:
        return BitVector.from_int(self._rows[i], self._ncols)

    def column(self, j: int) -> BitVector:
        shift = self._ncols - 1 - j
        return BitVector((r >> shift) & 1 for r in self._rows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not 0 <= j < self._ncols:
            raise IndexError(j)
        return (self._rows[i] >> (self._ncols - 1 - j)) & 1

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        return mat_mul(self, other)

    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        return mat_add(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self._ncols, self._rows))

    def __repr__(self) -> str:
        body = ", ".join(format(r, f"0{self._ncols}b") for r in self._rows)
        return f"BitMatrix({self._nrows}x{self._ncols}: [{body}])"

    def transpose(self) -> "BitMatrix":
        return BitMatrix.from_rows(
            (self.column(j).value for j in range(self._ncols)), self._nrows
        )

    def is_zero(self) -> bool:
        return not any(self._rows)

    def to_list(self) -> list[list[int]]:
        return [self.row(i).to_list() for i in range(self._nrows)]

    def to_bytes(self) -> bytes:
        """Row-major, each row padded to whole bytes, MSB first."""
        return b"".join(self.row(i).to_bytes() for i in range(self._nrows))

    @classmethod
    def from_bytes(cls, data: bytes, nrows: int, ncols: int) -> "BitMatrix":
        """Inverse of :meth:`to_bytes`; nonzero padding bits are rejected."""
        stride = (ncols + 7) // 8
        if len(data) != stride * nrows:
            raise ValueError(f"expected {stride * nrows} bytes, got {len(data)}")
        pad = 8 * stride - ncols
        rows = []
        for i in range(nrows):
            word = int.from_bytes(data[i * stride:(i + 1) * stride], "big")
            if word & ((1 << pad) - 1):
                raise ValueError(f"nonzero padding bits in row {i}")
            rows.append(word >> pad)
        return cls.from_rows(rows, ncols)


def _bv(value: int, length: int) -> BitVector:
    # Unchecked constructor for values already known to fit.
    v = object.__new__(BitVector)
    v._len = length
    v._value = value
    return v


def _xor_rows(x: int, xlen: int, rows: Sequence[int]) -> int:
    """XOR of ``rows[i]`` over the set bits ``i`` of MSB-first ``x``."""
    acc = 0
    while x:
        low = x & -x
        acc ^= rows[xlen - low.bit_length()]
        x ^= low
    return acc


def mat_mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    if a.ncols != b.nrows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    brows = b.packed_rows
    return BitMatrix.from_rows((_xor_rows(r, a.ncols, brows) for r in a.packed_rows), b.ncols)


def mat_add(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    if a.shape != b.shape:
        raise DimensionError(f"cannot add {a.shape} and {b.shape}")
    return BitMatrix.from_rows((x ^ y for x, y in zip(a.packed_rows, b.packed_rows)), a.ncols)


def vec_mat_mul(x: BitVector, a: BitMatrix) -> BitVector:
    """Row vector times matrix, ``x @ a``."""
    if x._len != a._nrows:
        raise DimensionError(f"vector of length {len(x)} times {a.shape} matrix")
    return _bv(_xor_rows(x._value, a._nrows, a._rows), a._ncols)


def vec_xor(u: BitVector, v: BitVector) -> BitVector:
    if u._len != v._len:
        raise DimensionError(f"cannot XOR lengths {len(u)} and {len(v)}")
    return _bv(u._value ^ v._value, u._len)


def _eliminate(rows: list[int], width: int, pivot_cols: int) -> int:
    """Gauss-Jordan in place on packed rows of ``width`` bits.

    Pivots are searched in the leading ``pivot_cols`` columns only, taking the
    lowest-index eligible row.  Returns the number of pivots found.
    """
    rank = 0
    for col in range(pivot_cols):
        mask = 1 << (width - 1 - col)
        pivot = next((i for i in range(rank, len(rows)) if rows[i] & mask), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i] & mask:
                rows[i] ^= prow
        rank += 1
        if rank == len(rows):
            break
    return rank


def rank(a: BitMatrix) -> int:
    rows = list(a.packed_rows)
    return _eliminate(rows, a.ncols, a.ncols)


def invert(a: BitMatrix) -> BitMatrix:
    """Inverse via Gauss-Jordan on ``[a | I]``.

    Raises:
        DimensionError: ``a`` is not square.
        SingularError: ``a`` has rank below its size.
    """
    n = a.nrows
    if a.ncols != n:
        raise DimensionError(f"cannot invert non-square {a.shape} matrix")
    rows = [(r << n) | (1 << (n - 1 - i)) for i, r in enumerate(a.packed_rows)]
    if _eliminate(rows, 2 * n, n) < n:
        raise SingularError("matrix is singular over GF(2)")
    mask = (1 << n) - 1
    return BitMatrix.from_rows((r & mask for r in rows), n)


def random_matrix(nrows: int, ncols: int, rng: random.Random) -> BitMatrix:
    return BitMatrix.from_rows((rng.getrandbits(ncols) for _ in range(nrows)), ncols)


def random_invertible(k: int, rng: random.Random) -> BitMatrix:
    """Uniform element of GL(k, 2) by rejection sampling."""
    if k < 1:
        raise ValueError("k must be at least 1")
    for _ in range(MAX_INVERTIBLE_ATTEMPTS):
        m = random_matrix(k, k, rng)
        if rank(m) == k:
            return m
    raise GenerationError(f"no invertible {k}x{k} matrix in {MAX_INVERTIBLE_ATTEMPTS} draws")


class PermutationMatrix:
    """Permutation stored as an index map.

    ``mapping[i] == j`` means row ``i`` of the dense form has its single 1 in
    column ``j``; equivalently, ``x @ P`` moves bit ``i`` of ``x`` to position
    ``mapping[i]``.
    """

    __slots__ = ("_map",)

    def __init__(self, mapping: Iterable[int]):
        mapping = tuple(mapping)
        if not mapping:
            raise DimensionError("permutation must have size at least 1")
        if sorted(mapping) != list(range(len(mapping))):
            raise ValueError("mapping is not a bijection on 0..n-1")
        self._map = mapping

    @classmethod
    def identity(cls, n: int) -> "PermutationMatrix":
        return cls(range(n))

    @classmethod
    def from_dense(cls, m: BitMatrix) -> "PermutationMatrix":
        if m.nrows != m.ncols:
            raise DimensionError("permutation matrix must be square")
        mapping = []
        for i in range(m.nrows):
            r = m.packed_rows[i]
            if r == 0 or r & (r - 1):
                raise ValueError(f"row {i} does not contain exactly one 1")
            mapping.append(m.ncols - r.bit_length())
        return cls(mapping)

    @property
    def n(self) -> int:
        return len(self._map)

    @property
    def mapping(self) -> tuple[int, ...]:
        return self._map

    def inverse(self) -> "PermutationMatrix":
        inv = [0] * len(self._map)
        for i, j in enumerate(self._map):
            inv[j] = i
        return PermutationMatrix(inv)

    def to_dense(self) -> BitMatrix:
        n = len(self._map)
        return BitMatrix.from_rows((1 << (n - 1 - j) for j in self._map), n)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PermutationMatrix):
            return NotImplemented
        return self._map == other._map

    def __hash__(self) -> int:
        return hash(self._map)

    def __repr__(self) -> str:
        return f"PermutationMatrix({list(self._map)})"


def random_permutation(n: int, rng: random.Random) -> PermutationMatrix:
    if n < 1:
        raise ValueError("n must be at least 1")
    mapping = list(range(n))
    rng.shuffle(mapping)  # Fisher-Yates
    return PermutationMatrix(mapping)


def permute(x: BitVector, p: PermutationMatrix, inverse: bool = False) -> BitVector:
    """``x @ P`` (or ``x @ P^-1``) in O(n) without building the dense matrix."""
    n = p.n
    if len(x) != n:
        raise DimensionError(f"vector of length {len(x)} with permutation of size {n}")
    v = x._value
    out = 0
    top = n - 1
    if inverse:
        # (x P^-1)[i] = x[map[i]]
        for i, j in enumerate(p.mapping):
            if (v >> (top - j)) & 1:
                out |= 1 << (top - i)
    else:
        for i, j in enumerate(p.mapping):
            if (v >> (top - i)) & 1:
                out |= 1 << (top - j)
    return _bv(out, n)
