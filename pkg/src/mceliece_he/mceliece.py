"""McEliece-style keys, classic and XOR-homomorphic encryption, aggregation.

The public key is ``psi = S @ G @ P``.  Classic encryption adds a fresh
weight-1 error per block; homomorphic encryption omits it, which makes
encryption linear so that XOR of ciphertexts encrypts the XOR of plaintexts.
Both modes decrypt through the same pipeline: undo ``P``, correct with
``H``, read out with ``R``, undo ``S``.
"""

from __future__ import annotations

import enum
import hashlib
import random
from collections import Counter
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

from . import coding
from .coding import HammingCode, T_CORRECTABLE
from .errors import (
    DecryptionError,
    DimensionError,
    KeyMismatchError,
    ModeError,
    ShapeMismatchError,
    UncorrectableError,
)
from .gf2 import (
    BitMatrix,
    BitVector,
    PermutationMatrix,
    invert,
    mat_mul,
    permute,
    random_invertible,
    random_permutation,
    vec_mat_mul,
)

KEY_ID_LEN = 16


class Mode(str, enum.Enum):
    CLASSIC = "classic"
    HOMOMORPHIC = "homomorphic"


def compute_key_id(r: int, psi: BitMatrix) -> bytes:
    """Truncated SHA-256 over the public-key content."""
    h = hashlib.sha256(b"XHE1 key id\x00")
    h.update(bytes([r]))
    h.update(psi.nrows.to_bytes(2, "big") + psi.ncols.to_bytes(2, "big"))
    h.update(psi.to_bytes())
    return h.digest()[:KEY_ID_LEN]


@dataclass(frozen=True)
class PublicKey:
    psi: BitMatrix
    r: int
    key_id: bytes

    @property
    def n(self) -> int:
        return self.psi.ncols

    @property
    def k(self) -> int:
        return self.psi.nrows

    @property
    def t(self) -> int:
        return T_CORRECTABLE


@dataclass(frozen=True)
class PrivateKey:
    S: BitMatrix
    S_inv: BitMatrix
    code: HammingCode
    P: PermutationMatrix
    key_id: bytes

    @property
    def r(self) -> int:
        return self.code.r

    @property
    def n(self) -> int:
        return self.code.n

    @property
    def k(self) -> int:
        return self.code.k

    def public_key(self) -> PublicKey:
        psi = _public_matrix(self.S, self.code, self.P)
        return PublicKey(psi=psi, r=self.code.r, key_id=self.key_id)


@dataclass(frozen=True)
class Ciphertext:
    """One or more ``n``-bit blocks encrypting a ``plaintext_bit_len``-bit message."""

    blocks: tuple[BitVector, ...]
    mode: Mode
    plaintext_bit_len: int
    key_id: bytes

    def __post_init__(self):
        if not self.blocks:
            raise ValueError("ciphertext needs at least one block")
        n = len(self.blocks[0])
        if len(self.blocks) > 1 and any(len(b) != n for b in self.blocks):
            raise DimensionError("ciphertext blocks differ in length")
        k = n - coding.parity_bits_for_length(n)
        nb = len(self.blocks)
        if not (nb - 1) * k < self.plaintext_bit_len <= nb * k:
            raise ValueError(
                f"{nb} blocks of k={k} cannot carry {self.plaintext_bit_len} plaintext bits"
            )
        if len(self.key_id) != KEY_ID_LEN:
            raise ValueError(f"key_id must be {KEY_ID_LEN} bytes")
        if not isinstance(self.mode, Mode):
            object.__setattr__(self, "mode", Mode(self.mode))

    @property
    def n(self) -> int:
        return len(self.blocks[0])

    @property
    def k(self) -> int:
        return self.n - coding.parity_bits_for_length(self.n)


def _public_matrix(S: BitMatrix, code: HammingCode, P: PermutationMatrix) -> BitMatrix:
    sg = mat_mul(S, code.G)
    return BitMatrix.from_rows((permute(sg.row(i), P).value for i in range(sg.nrows)), sg.ncols)


def load_keypair(
    S: BitMatrix, code: HammingCode, P: PermutationMatrix
) -> tuple[PrivateKey, PublicKey]:
    """Assemble a keypair from explicit private material.

    Raises:
        DimensionError: ``S`` or ``P`` does not fit the code.
        SingularError: ``S`` is not invertible.
        CodeInvariantError: ``code`` violates a Hamming invariant.
    """
    code = coding.load_code(code.G, code.H, code.R)
    if S.shape != (code.k, code.k):
        raise DimensionError(f"S must be {code.k}x{code.k}, got {S.shape}")
    if P.n != code.n:
        raise DimensionError(f"P must have size {code.n}, got {P.n}")
    S_inv = invert(S)
    psi = _public_matrix(S, code, P)
    key_id = compute_key_id(code.r, psi)
    sk = PrivateKey(S=S, S_inv=S_inv, code=code, P=P, key_id=key_id)
    return sk, PublicKey(psi=psi, r=code.r, key_id=key_id)


def generate_keypair(r: int, rng: random.Random) -> tuple[PrivateKey, PublicKey]:
    code = coding.build_hamming(r)
    S = random_invertible(code.k, rng)
    P = random_permutation(code.n, rng)
    return load_keypair(S, code, P)


def split_blocks(msg: BitVector, k: int) -> list[BitVector]:
    """Cut ``msg`` into ``k``-bit blocks, zero-padding the last one."""
    if len(msg) == k:
        return [msg]
    nblocks = -(-len(msg) // k)
    padded = msg.value << (nblocks * k - len(msg))
    mask = (1 << k) - 1
    return [
        BitVector.from_int((padded >> ((nblocks - 1 - b) * k)) & mask, k) for b in range(nblocks)
    ]


def join_blocks(blocks: Sequence[BitVector], bit_len: int) -> BitVector:
    acc = 0
    total = 0
    for b in blocks:
        acc = (acc << len(b)) | b.value
        total += len(b)
    return BitVector.from_int(acc >> (total - bit_len), bit_len)


def encrypt_homomorphic(pk: PublicKey, msg: BitVector) -> Ciphertext:
    blocks = tuple(vec_mat_mul(x, pk.psi) for x in split_blocks(msg, pk.k))
    return Ciphertext(blocks, Mode.HOMOMORPHIC, len(msg), pk.key_id)


def encrypt_classic(
    pk: PublicKey,
    msg: BitVector,
    rng: random.Random,
    *,
    error_positions: Sequence[int | None] | None = None,
) -> Ciphertext:
    """``x @ psi ^ e`` per block with ``e`` a uniform weight-1 vector.

    ``error_positions`` overrides the random draw (one entry per block,
    ``None`` meaning no error).  It exists for golden-vector tests.
    """
    xs = split_blocks(msg, pk.k)
    if error_positions is not None and len(error_positions) != len(xs):
        raise ValueError(f"need {len(xs)} error positions, got {len(error_positions)}")
    n = pk.n
    blocks = []
    for b, x in enumerate(xs):
        pos = rng.randrange(n) if error_positions is None else error_positions[b]
        y = vec_mat_mul(x, pk.psi)
        if pos is not None:
            y = BitVector.from_int(y.value ^ (1 << (n - 1 - pos)), n)
        blocks.append(y)
    return Ciphertext(tuple(blocks), Mode.CLASSIC, len(msg), pk.key_id)


def aggregate(cs: Iterable[Ciphertext]) -> Ciphertext:
    """Blockwise XOR of homomorphic ciphertexts under one key.

    Raises:
        ValueError: ``cs`` is empty.
        ModeError: any ciphertext is in classic mode.
        KeyMismatchError: key ids differ.
        ShapeMismatchError: block counts or plaintext lengths differ.
    """
    cs = list(cs)
    if not cs:
        raise ValueError("nothing to aggregate")
    first = cs[0]
    nb, n = len(first.blocks), first.n
    key_id, bit_len = first.key_id, first.plaintext_bit_len
    homomorphic = Mode.HOMOMORPHIC
    acc = [0] * nb
    single = 0
    for c in cs:
        if c.mode is not homomorphic:
            raise ModeError("classic ciphertexts carry errors and cannot be aggregated")
        if c.key_id != key_id:
            raise KeyMismatchError("ciphertexts were produced under different keys")
        blocks = c.blocks
        if len(blocks) != nb or c.plaintext_bit_len != bit_len or len(blocks[0]) != n:
            raise ShapeMismatchError("ciphertexts differ in shape")
        if nb == 1:
            single ^= blocks[0].value
        else:
            for i, b in enumerate(blocks):
                acc[i] ^= b.value
    if nb == 1:
        acc[0] = single
    return Ciphertext(
        tuple(BitVector.from_int(v, n) for v in acc), Mode.HOMOMORPHIC, bit_len, key_id
    )


def decrypt_block(sk: PrivateKey, block: BitVector, mode: Mode = Mode.CLASSIC) -> BitVector:
    """Undo ``P``, correct, read out with ``R``, undo ``S`` for one block."""
    word = permute(block, sk.P, inverse=True)
    try:
        word, pos = coding.correct(sk.code, word)
    except UncorrectableError as exc:
        raise DecryptionError(str(exc)) from exc
    if mode is Mode.HOMOMORPHIC and pos is not None:
        raise DecryptionError("homomorphic block has a nonzero syndrome (corrupted ciphertext)")
    # correct() leaves a zero syndrome, so read out with R directly.
    return vec_mat_mul(vec_mat_mul(word, sk.code.R), sk.S_inv)


def decrypt(sk: PrivateKey, c: Ciphertext, *, stats: Counter | None = None) -> BitVector:
    """Recover the plaintext of ``c``.

    ``stats`` (if given) has ``stats["decode_pipeline"]`` incremented once per
    block decoded.

    Raises:
        KeyMismatchError: ``c`` was produced under another key.
        DimensionError: block length differs from the key's ``n``.
        DecryptionError: a block could not be decoded.
    """
    if c.key_id != sk.key_id:
        raise KeyMismatchError("ciphertext was produced under a different key")
    if c.n != sk.n:
        raise DimensionError(f"ciphertext block length {c.n} != n={sk.n}")
    out = []
    for block in c.blocks:
        out.append(decrypt_block(sk, block, c.mode))
        if stats is not None:
            stats["decode_pipeline"] += 1
    return join_blocks(out, c.plaintext_bit_len)


def fold_xor(xs: Iterable[BitVector]) -> BitVector:
    return reduce(lambda a, b: a ^ b, xs)


def homomorphic_check(pk: PublicKey, sk: PrivateKey, xs: Sequence[BitVector]) -> bool:
    """True iff ``Dec(agg(Enc(x_i))) == xor(x_i)`` and ``agg(Enc(x_i)) == Enc(xor(x_i))``."""
    try:
        theta = fold_xor(xs)
        phi = aggregate(encrypt_homomorphic(pk, x) for x in xs)
        return decrypt(sk, phi) == theta and phi == encrypt_homomorphic(pk, theta)
    except (ValueError, TypeError, ArithmeticError, DecryptionError, KeyMismatchError):
        return False
