"""The (7, 4) worked-example key and its expected intermediate values."""

from __future__ import annotations

from .coding import HammingCode, load_code
from .gf2 import BitMatrix, BitVector, PermutationMatrix


def _m(*rows: str) -> BitMatrix:
    return BitMatrix([int(c) for c in row] for row in rows)


S = _m("1101", "1001", "0111", "1100")
G = _m("1110000", "1001100", "0101010", "1101001")
P_DENSE = _m(
    "0100000",
    "0001000",
    "0000001",
    "1000000",
    "0010000",
    "0000010",
    "0000100",
)
P = PermutationMatrix.from_dense(P_DENSE)
H = _m("100", "010", "110", "001", "101", "011", "111")
R = _m("0000", "0000", "1000", "0000", "0100", "0010", "0001")

PSI = _m("0110101", "1000101", "1010110", "1011001")

X1 = BitVector.from_str("0100")
X2 = BitVector.from_str("1000")
C_X1 = BitVector.from_str("1000101")
C_X2 = BitVector.from_str("0110101")
PHI = BitVector.from_str("1110000")
THETA = BitVector.from_str("1100")


def code() -> HammingCode:
    return load_code(G, H, R)


def keypair():
    """``(PrivateKey, PublicKey)`` built from the fixture matrices."""
    from .mceliece import load_keypair

    return load_keypair(S, code(), P)
