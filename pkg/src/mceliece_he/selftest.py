"""Replay of the (7, 4) worked example plus exhaustive small-instance roundtrips."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from . import fixtures
from .errors import XHEError
from .gf2 import BitMatrix, BitVector, PermutationMatrix, mat_mul
from .mceliece import (
    PrivateKey,
    PublicKey,
    aggregate,
    decrypt,
    encrypt_classic,
    encrypt_homomorphic,
    homomorphic_check,
    load_keypair,
)
from .coding import load_code


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class SelftestReport:
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def first_failure(self) -> Check | None:
        return next((c for c in self.checks if not c.passed), None)

    def lines(self) -> list[str]:
        return [f"{'PASS' if c.passed else 'FAIL'}  {c.name}{'  ' + c.detail if c.detail else ''}"
                for c in self.checks]


def run_selftest(
    S: BitMatrix = fixtures.S,
    G: BitMatrix = fixtures.G,
    P: PermutationMatrix = fixtures.P,
    H: BitMatrix = fixtures.H,
    R: BitMatrix = fixtures.R,
) -> SelftestReport:
    """Check the worked example step by step, stopping at the first mismatch.

    The fixture matrices can be overridden to confirm that injected faults are
    caught.
    """
    checks: list[Check] = []

    def check(name: str, got, want) -> bool:
        ok = got == want
        checks.append(Check(name, ok, "" if ok else f"got {got!r}, expected {want!r}"))
        return ok

    psi = mat_mul(mat_mul(S, G), P.to_dense())
    if not check("public key psi = S G P", psi, fixtures.PSI):
        return SelftestReport(checks)
    try:
        sk, pk = load_keypair(S, load_code(G, H, R), P)
    except XHEError as exc:
        checks.append(Check("load key material", False, str(exc)))
        return SelftestReport(checks)

    c1 = encrypt_homomorphic(pk, fixtures.X1)
    c2 = encrypt_homomorphic(pk, fixtures.X2)
    if not check("Enc(x1) = x1 psi", c1.blocks[0], fixtures.C_X1):
        return SelftestReport(checks)
    if not check("Enc(x2) = x2 psi", c2.blocks[0], fixtures.C_X2):
        return SelftestReport(checks)
    phi = aggregate([c1, c2])
    if not check("phi = Enc(x1) xor Enc(x2)", phi.blocks[0], fixtures.PHI):
        return SelftestReport(checks)
    dec = decrypt(sk, phi)
    if not check("Dec(phi) = phi P^-1 R S^-1", dec, fixtures.THETA):
        return SelftestReport(checks)
    if not check("Dec(phi) = x1 xor x2", dec, fixtures.X1 ^ fixtures.X2):
        return SelftestReport(checks)

    k, n = pk.k, pk.n
    bad = [x for x in range(1 << k)
           if decrypt(sk, encrypt_homomorphic(pk, BitVector.from_int(x, k))).value != x]
    checks.append(Check(f"homomorphic roundtrip, all {1 << k} plaintexts", not bad,
                        f"failing plaintexts {bad[:5]}" if bad else ""))
    if bad:
        return SelftestReport(checks)

    rng = random.Random(0)
    cases = 0
    bad = []
    for x, pos in product(range(1 << k), [None, *range(n)]):
        c = encrypt_classic(pk, BitVector.from_int(x, k), rng, error_positions=[pos])
        cases += 1
        if decrypt(sk, c).value != x:
            bad.append((x, pos))
    checks.append(Check(f"classic roundtrip, {cases} (plaintext, error) cases", not bad,
                        f"failing cases {bad[:5]}" if bad else ""))
    return SelftestReport(checks)


def run_key_selftest(
    sk: PrivateKey, pk: PublicKey, seed: int = 0, max_exhaustive_k: int = 12
) -> SelftestReport:
    """Roundtrip and homomorphism checks for an arbitrary keypair.

    Plaintexts are enumerated when ``k <= max_exhaustive_k`` and sampled
    otherwise.
    """
    checks = [Check("private and public key ids agree", sk.key_id == pk.key_id)]
    checks.append(Check("psi = S G P", sk.public_key() == pk))
    if not all(c.passed for c in checks):
        return SelftestReport(checks)
    rng = random.Random(seed)
    k, n = pk.k, pk.n
    if k <= max_exhaustive_k:
        plaintexts = range(1 << k)
    else:
        plaintexts = [rng.getrandbits(k) for _ in range(1 << max_exhaustive_k)]
    bad_h = bad_c = 0
    for x in plaintexts:
        m = BitVector.from_int(x, k)
        bad_h += decrypt(sk, encrypt_homomorphic(pk, m)) != m
        bad_c += decrypt(sk, encrypt_classic(pk, m, rng, error_positions=[rng.randrange(n)])) != m
    checks.append(Check("homomorphic roundtrip", not bad_h, f"{bad_h} failures" if bad_h else ""))
    checks.append(Check("classic roundtrip", not bad_c, f"{bad_c} failures" if bad_c else ""))
    sets = [[BitVector.from_int(rng.getrandbits(k), k) for _ in range(rng.randint(2, 50))]
            for _ in range(20)]
    ok = all(homomorphic_check(pk, sk, xs) for xs in sets)
    checks.append(Check("aggregate of encryptions = encryption of XOR", ok))
    return SelftestReport(checks)
