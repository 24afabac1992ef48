"""Exception hierarchy shared by all modules."""


class XHEError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(XHEError, ValueError):
    """Operands have incompatible shapes."""


class SingularError(XHEError, ValueError):
    """Matrix is not invertible over GF(2)."""


class GenerationError(XHEError, RuntimeError):
    """A randomized constructor exhausted its attempt budget."""


class CodeInvariantError(XHEError, ValueError):
    """A code or key failed one of its algebraic invariants."""


class UncorrectableError(XHEError):
    """Syndrome does not match any correctable error pattern."""


class NonzeroSyndromeError(XHEError, ValueError):
    """Decoding was asked for on a word that is not a codeword."""


class DecryptionError(XHEError):
    """Ciphertext block could not be decoded (more than t errors)."""


class KeyMismatchError(XHEError):
    """Key ids of a key and ciphertext (or of two ciphertexts) disagree."""


class ModeError(XHEError):
    """Operation is not defined for the ciphertext mode(s) given."""


class ShapeMismatchError(XHEError):
    """Ciphertexts to aggregate differ in block count or plaintext length."""


class CodecError(XHEError, ValueError):
    """Serialized data is truncated, malformed or fails validation."""
