"""Command-line front end.

Exit codes: 0 success, 1 selftest failure, 2 usage, 3 key mismatch,
4 uncorrectable or corrupt data, 5 I/O, 6 incompatible ciphertexts
(mode mix or shape mismatch when aggregating).
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from . import codec
from .bench import DEFAULT_REPEATS, DEFAULT_SIZES, run_bench
from .errors import (
    CodecError,
    DecryptionError,
    KeyMismatchError,
    ModeError,
    ShapeMismatchError,
    UncorrectableError,
)
from .gf2 import BitVector
from .mceliece import aggregate, decrypt, encrypt_classic, encrypt_homomorphic, generate_keypair
from .selftest import run_key_selftest, run_selftest

EXIT_OK = 0
EXIT_SELFTEST = 1
EXIT_USAGE = 2
EXIT_KEY_MISMATCH = 3
EXIT_CORRUPT = 4
EXIT_IO = 5
EXIT_INCOMPATIBLE = 6


class UsageError(Exception):
    pass


def _read(path: str) -> bytes:
    return Path(path).read_bytes()


def _write(path: str, data: bytes) -> None:
    Path(path).write_bytes(data)


def cmd_keygen(args: argparse.Namespace) -> int:
    if not 2 <= args.r <= codec.MAX_R:
        raise UsageError(f"--r must be between 2 and {codec.MAX_R}")
    rng = random.Random(args.seed)
    sk, pk = generate_keypair(args.r, rng)
    sk_path, pk_path = args.out + ".xsk", args.out + ".xpk"
    _write(sk_path, codec.serialize_private(sk))
    _write(pk_path, codec.serialize_public(pk))
    print(f"key_id {pk.key_id.hex()}  r={pk.r} n={pk.n} k={pk.k} t={pk.t}")
    print(f"wrote {sk_path} and {pk_path}")
    return EXIT_OK


def cmd_encrypt(args: argparse.Namespace) -> int:
    pk = codec.deserialize_public(_read(args.pk))
    data = _read(args.input)
    if not data:
        raise UsageError("input file is empty")
    msg = BitVector.from_bytes(data)
    if args.mode == "homo":
        c = encrypt_homomorphic(pk, msg)
    else:
        c = encrypt_classic(pk, msg, random.Random(args.seed))
    _write(args.out, codec.serialize_ciphertext(c))
    return EXIT_OK


def cmd_decrypt(args: argparse.Namespace) -> int:
    sk = codec.deserialize_private(_read(args.sk))
    c = codec.deserialize_ciphertext(_read(args.input))
    _write(args.out, decrypt(sk, c).to_bytes())
    return EXIT_OK


def cmd_aggregate(args: argparse.Namespace) -> int:
    cs = [codec.deserialize_ciphertext(_read(p)) for p in args.input]
    _write(args.out, codec.serialize_ciphertext(aggregate(cs)))
    return EXIT_OK


def cmd_selftest(args: argparse.Namespace) -> int:
    if (args.sk is None) != (args.pk is None):
        raise UsageError("--sk and --pk must be given together")
    if args.sk:
        sk = codec.deserialize_private(_read(args.sk))
        pk = codec.deserialize_public(_read(args.pk))
        report = run_key_selftest(sk, pk)
    else:
        report = run_selftest()
    for line in report.lines():
        print(line)
    if not report.passed:
        print(f"selftest FAILED at: {report.first_failure.name}", file=sys.stderr)
        return EXIT_SELFTEST
    print("selftest passed")
    return EXIT_OK


def _parse_sizes(text: str) -> list[int]:
    try:
        sizes = [int(s.replace("_", "")) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}")
    if not sizes:
        raise argparse.ArgumentTypeError("at least one size is required")
    return sizes


def cmd_bench(args: argparse.Namespace) -> int:
    try:
        report = run_bench(args.sizes, r=args.r, seed=args.seed, repeats=args.repeats)
    except ValueError as exc:
        raise UsageError(str(exc))
    if args.csv:
        _write(args.csv, report.to_csv().encode())
    print(report.to_markdown(), end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mceliece-he",
        description="McEliece-style cryptosystem over GF(2) with XOR-homomorphic encryption.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="generate a keypair")
    p.add_argument("--r", type=int, required=True, help="Hamming parity bits (n = 2^r - 1)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True, help="output prefix; writes PREFIX.xsk and PREFIX.xpk")
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("encrypt", help="encrypt a file")
    p.add_argument("--pk", required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--mode", choices=("classic", "homo"), default="homo")
    p.add_argument("--seed", type=int, default=None, help="error-vector seed (classic mode)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt a ciphertext file")
    p.add_argument("--sk", required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("aggregate", help="XOR homomorphic ciphertexts together")
    p.add_argument("--in", dest="input", nargs="+", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_aggregate)

    p = sub.add_parser("selftest", help="replay the worked example, or check a given keypair")
    p.add_argument("--sk", default=None)
    p.add_argument("--pk", default=None)
    p.set_defaults(func=cmd_selftest)

    p = sub.add_parser("bench", help="time encryption and decryption at several data counts")
    p.add_argument("--sizes", type=_parse_sizes, default=list(DEFAULT_SIZES))
    p.add_argument("--r", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeats", type=int, default=DEFAULT_REPEATS)
    p.add_argument("--csv", default=None)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except KeyMismatchError as exc:
        print(f"key mismatch: {exc}", file=sys.stderr)
        return EXIT_KEY_MISMATCH
    except (ModeError, ShapeMismatchError) as exc:
        print(f"incompatible ciphertexts: {exc}", file=sys.stderr)
        return EXIT_INCOMPATIBLE
    except (CodecError, DecryptionError, UncorrectableError) as exc:
        print(f"corrupt or undecodable data: {exc}", file=sys.stderr)
        return EXIT_CORRUPT
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
