"""McEliece-style code-based cryptosystem over GF(2) with an XOR-homomorphic mode."""

from .coding import HammingCode, build_hamming, load_code
from .errors import (
    CodecError,
    DecryptionError,
    DimensionError,
    KeyMismatchError,
    ModeError,
    ShapeMismatchError,
    SingularError,
    UncorrectableError,
    XHEError,
)
from .gf2 import BitMatrix, BitVector, PermutationMatrix
from .mceliece import (
    Ciphertext,
    Mode,
    PrivateKey,
    PublicKey,
    aggregate,
    decrypt,
    encrypt_classic,
    encrypt_homomorphic,
    generate_keypair,
    homomorphic_check,
    load_keypair,
)

__version__ = "0.1.0"

__all__ = [
    "BitMatrix",
    "BitVector",
    "Ciphertext",
    "CodecError",
    "DecryptionError",
    "DimensionError",
    "HammingCode",
    "KeyMismatchError",
    "Mode",
    "ModeError",
    "PermutationMatrix",
    "PrivateKey",
    "PublicKey",
    "ShapeMismatchError",
    "SingularError",
    "UncorrectableError",
    "XHEError",
    "aggregate",
    "build_hamming",
    "decrypt",
    "encrypt_classic",
    "encrypt_homomorphic",
    "generate_keypair",
    "homomorphic_check",
    "load_code",
    "load_keypair",
]
