"""Binary wire format for keys (``.xpk`` / ``.xsk``) and ciphertexts (``.xct``).

Every file starts with a fixed header, all integers big-endian::

    magic     4 bytes   b"XHE1"
    kind      u8        1 public key, 2 private key, 3 ciphertext
    version   u8        1
    r         u8        parity bits, 2..16
    n         u16       2^r - 1
    k         u16       n - r
    key_id    16 bytes

Ciphertexts continue with ``mode u8`` (1 classic, 2 homomorphic),
``plaintext_bit_len u64`` and ``block_count u32``.

Bit payloads are row-major, each row (or block) padded to whole bytes,
most significant bit first; padding bits must be zero.

* public key:  psi (k x n)
* private key: S (k x k), G (k x n), H (n x r), R (n x k), then P as n
  u16 indices
* ciphertext:  block_count blocks of n bits

Readers re-derive everything they can (S^-1, syndrome table, psi, key_id)
and reject data that fails any invariant.
"""

from __future__ import annotations

import struct

from . import coding
from .errors import CodecError, XHEError
from .gf2 import BitMatrix, PermutationMatrix
from .mceliece import (
    KEY_ID_LEN,
    Ciphertext,
    Mode,
    PrivateKey,
    PublicKey,
    compute_key_id,
    load_keypair,
)

MAGIC = b"XHE1"
VERSION = 1
MAX_R = 16

KIND_PUBLIC = 1
KIND_PRIVATE = 2
KIND_CIPHERTEXT = 3
KIND_NAMES = {KIND_PUBLIC: "public-key", KIND_PRIVATE: "private-key", KIND_CIPHERTEXT: "ciphertext"}

EXTENSIONS = {KIND_PUBLIC: ".xpk", KIND_PRIVATE: ".xsk", KIND_CIPHERTEXT: ".xct"}

_HEADER = struct.Struct(f">4sBBBHH{KEY_ID_LEN}s")
_CT_EXTRA = struct.Struct(">BQI")
_MODE_CODES = {Mode.CLASSIC: 1, Mode.HOMOMORPHIC: 2}
_MODES = {v: k for k, v in _MODE_CODES.items()}


def _stride(ncols: int) -> int:
    return (ncols + 7) // 8


def _header(kind: int, r: int, key_id: bytes) -> bytes:
    n, k = coding.dimensions(r)
    if r > MAX_R:
        raise CodecError(f"r={r} exceeds the format limit {MAX_R}")
    return _HEADER.pack(MAGIC, kind, VERSION, r, n, k, key_id)


def read_header(data: bytes) -> tuple[int, int, int, int, bytes]:
    """Validate the common header; returns ``(kind, r, n, k, key_id)``."""
    if len(data) < _HEADER.size:
        raise CodecError(f"truncated header: {len(data)} of {_HEADER.size} bytes")
    magic, kind, version, r, n, k, key_id = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise CodecError(f"bad magic {magic!r}")
    if version != VERSION:
        raise CodecError(f"unsupported version {version}")
    if kind not in KIND_NAMES:
        raise CodecError(f"unknown kind {kind}")
    if not 2 <= r <= MAX_R:
        raise CodecError(f"r={r} outside 2..{MAX_R}")
    if (n, k) != coding.dimensions(r):
        raise CodecError(f"(n={n}, k={k}) inconsistent with r={r}")
    return kind, r, n, k, key_id


def peek_kind(data: bytes) -> str:
    return KIND_NAMES[read_header(data)[0]]


class _Reader:
    def __init__(self, data: bytes, offset: int):
        self.data = data
        self.pos = offset

    def take(self, size: int) -> bytes:
        if self.pos + size > len(self.data):
            raise CodecError("truncated payload")
        chunk = self.data[self.pos:self.pos + size]
        self.pos += size
        return chunk

    def matrix(self, nrows: int, ncols: int) -> BitMatrix:
        raw = self.take(nrows * _stride(ncols))
        try:
            return BitMatrix.from_bytes(raw, nrows, ncols)
        except ValueError as exc:
            raise CodecError(str(exc)) from exc

    def finish(self) -> None:
        if self.pos != len(self.data):
            raise CodecError(f"{len(self.data) - self.pos} trailing bytes")


def _expect_kind(data: bytes, kind: int) -> tuple[int, int, int, bytes]:
    got, r, n, k, key_id = read_header(data)
    if got != kind:
        raise CodecError(f"expected {KIND_NAMES[kind]}, found {KIND_NAMES[got]}")
    return r, n, k, key_id


def serialize_public(pk: PublicKey) -> bytes:
    return _header(KIND_PUBLIC, pk.r, pk.key_id) + pk.psi.to_bytes()


def deserialize_public(data: bytes) -> PublicKey:
    r, n, k, key_id = _expect_kind(data, KIND_PUBLIC)
    rd = _Reader(data, _HEADER.size)
    psi = rd.matrix(k, n)
    rd.finish()
    if compute_key_id(r, psi) != key_id:
        raise CodecError("key_id does not match public key content")
    return PublicKey(psi=psi, r=r, key_id=key_id)


def serialize_private(sk: PrivateKey) -> bytes:
    code = sk.code
    parts = [
        _header(KIND_PRIVATE, code.r, sk.key_id),
        sk.S.to_bytes(),
        code.G.to_bytes(),
        code.H.to_bytes(),
        code.R.to_bytes(),
        struct.pack(f">{code.n}H", *sk.P.mapping),
    ]
    return b"".join(parts)


def deserialize_private(data: bytes) -> PrivateKey:
    r, n, k, key_id = _expect_kind(data, KIND_PRIVATE)
    rd = _Reader(data, _HEADER.size)
    S = rd.matrix(k, k)
    G = rd.matrix(k, n)
    H = rd.matrix(n, r)
    R = rd.matrix(n, k)
    mapping = struct.unpack(f">{n}H", rd.take(2 * n))
    rd.finish()
    try:
        P = PermutationMatrix(mapping)
        code = coding.load_code(G, H, R)
        sk, _ = load_keypair(S, code, P)
    except (XHEError, ValueError) as exc:
        raise CodecError(f"private key fails validation: {exc}") from exc
    if sk.key_id != key_id:
        raise CodecError("key_id does not match private key content")
    return sk


def serialize_ciphertext(c: Ciphertext) -> bytes:
    r = coding.parity_bits_for_length(c.n)
    head = _header(KIND_CIPHERTEXT, r, c.key_id)
    extra = _CT_EXTRA.pack(_MODE_CODES[c.mode], c.plaintext_bit_len, len(c.blocks))
    return head + extra + b"".join(b.to_bytes() for b in c.blocks)


def deserialize_ciphertext(data: bytes) -> Ciphertext:
    r, n, k, key_id = _expect_kind(data, KIND_CIPHERTEXT)
    rd = _Reader(data, _HEADER.size)
    mode_code, bit_len, count = _CT_EXTRA.unpack(rd.take(_CT_EXTRA.size))
    if mode_code not in _MODES:
        raise CodecError(f"unknown ciphertext mode {mode_code}")
    if count == 0:
        raise CodecError("ciphertext has no blocks")
    stride = _stride(n)
    if len(data) - rd.pos != count * stride:
        raise CodecError(f"payload holds {len(data) - rd.pos} bytes, expected {count * stride}")
    rows = rd.matrix(count, n)
    rd.finish()
    try:
        return Ciphertext(
            tuple(rows.row(i) for i in range(count)), _MODES[mode_code], bit_len, key_id
        )
    except ValueError as exc:
        raise CodecError(str(exc)) from exc


def deserialize(data: bytes) -> PublicKey | PrivateKey | Ciphertext:
    kind = read_header(data)[0]
    return {
        KIND_PUBLIC: deserialize_public,
        KIND_PRIVATE: deserialize_private,
        KIND_CIPHERTEXT: deserialize_ciphertext,
    }[kind](data)
