import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mceliece_he import fixtures
from mceliece_he.errors import DimensionError, SingularError
from mceliece_he.gf2 import (
    BitMatrix,
    BitVector,
    PermutationMatrix,
    invert,
    mat_add,
    mat_mul,
    permute,
    random_invertible,
    random_matrix,
    random_permutation,
    rank,
    vec_mat_mul,
    vec_xor,
)

from conftest import as_bits, dense, dense_vec, oracle_mul, oracle_rank

# Computed once with the dense oracle (numpy products mod 2, checked S @ S_INV = I).
S_INV = BitMatrix([[1, 1, 0, 1], [1, 1, 0, 0], [0, 1, 1, 1], [1, 0, 0, 1]])


def matrices(max_dim=16):
    @st.composite
    def build(draw, nrows=None, ncols=None):
        nrows = nrows or draw(st.integers(1, max_dim))
        ncols = ncols or draw(st.integers(1, max_dim))
        rows = draw(st.lists(st.integers(0, (1 << ncols) - 1), min_size=nrows, max_size=nrows))
        return BitMatrix.from_rows(rows, ncols)
    return build


class TestBitVector:
    def test_index_zero_is_leftmost(self):
        v = BitVector.from_str("1110000")
        assert v.value == 0b1110000
        assert v.to_list() == [1, 1, 1, 0, 0, 0, 0]
        assert v[0] == 1 and v[6] == 0 and v[-1] == 0

    def test_bytes_msb_first(self):
        assert BitVector.from_str("1110000").to_bytes() == b"\xe0"
        assert BitVector.from_bytes(b"\xe0", 7) == BitVector.from_str("1110000")
        assert BitVector.from_bytes(b"\xab\xcd").to_bytes() == b"\xab\xcd"

    @pytest.mark.parametrize("bad", [[], [2], [0, -1]])
    def test_rejects_bad_bits(self, bad):
        with pytest.raises(ValueError):
            BitVector(bad)

    def test_from_int_range(self):
        with pytest.raises(ValueError):
            BitVector.from_int(8, 3)


class TestMatMul:
    def test_worked_example_public_key(self):
        psi = mat_mul(mat_mul(fixtures.S, fixtures.G), fixtures.P_DENSE)
        assert psi == fixtures.PSI

    def test_identity_left(self):
        a = random_matrix(5, 9, random.Random(3))
        assert mat_mul(BitMatrix.identity(5), a) == a

    def test_inverse_products_random(self):
        rng = random.Random(8)
        for _ in range(100):
            a = random_invertible(8, rng)
            assert mat_mul(a, invert(a)) == BitMatrix.identity(8)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            mat_mul(BitMatrix.zeros(2, 3), BitMatrix.zeros(2, 3))

    @settings(max_examples=50, deadline=None)
    @given(st.data())
    def test_matches_dense_oracle(self, data):
        a = data.draw(matrices()())
        b = data.draw(matrices()(nrows=a.ncols))
        assert as_bits(dense(mat_mul(a, b))) == as_bits(oracle_mul(dense(a), dense(b)))

    @settings(max_examples=50, deadline=None)
    @given(st.data())
    def test_associative(self, data):
        a = data.draw(matrices()())
        b = data.draw(matrices()(nrows=a.ncols))
        c = data.draw(matrices()(nrows=b.ncols))
        assert mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c))

    def test_add_is_xor(self):
        a = BitMatrix([[1, 0], [1, 1]])
        assert mat_add(a, a).is_zero()
        with pytest.raises(DimensionError):
            mat_add(a, BitMatrix.zeros(1, 2))


class TestVectorOps:
    def test_encrypt_rows_of_worked_example(self):
        assert vec_mat_mul(BitVector.from_str("0100"), fixtures.PSI) == BitVector.from_str("1000101")
        assert vec_mat_mul(BitVector.from_str("1000"), fixtures.PSI) == BitVector.from_str("0110101")

    def test_zero_vector(self):
        assert vec_mat_mul(BitVector.zeros(4), fixtures.PSI).is_zero()

    def test_vec_mat_mismatch(self):
        with pytest.raises(DimensionError):
            vec_mat_mul(BitVector.zeros(3), fixtures.PSI)

    def test_xor_aggregate_of_worked_example(self):
        u = BitVector.from_str("1000101")
        v = BitVector.from_str("0110101")
        assert vec_xor(u, v) == BitVector.from_str("1110000")
        assert vec_xor(u, u).is_zero()
        assert vec_xor(u, BitVector.zeros(7)) == u

    def test_xor_mismatch(self):
        with pytest.raises(DimensionError):
            vec_xor(BitVector.zeros(3), BitVector.zeros(4))

    @settings(max_examples=100, deadline=None)
    @given(st.data())
    def test_linearity(self, data):
        a = data.draw(matrices()())
        x = BitVector.from_int(data.draw(st.integers(0, (1 << a.nrows) - 1)), a.nrows)
        y = BitVector.from_int(data.draw(st.integers(0, (1 << a.nrows) - 1)), a.nrows)
        assert vec_mat_mul(x ^ y, a) == vec_mat_mul(x, a) ^ vec_mat_mul(y, a)

    @settings(max_examples=50, deadline=None)
    @given(st.data())
    def test_vec_mat_matches_oracle(self, data):
        a = data.draw(matrices()())
        x = BitVector.from_int(data.draw(st.integers(0, (1 << a.nrows) - 1)), a.nrows)
        expected = oracle_mul(dense_vec(x)[None, :], dense(a))
        assert vec_mat_mul(x, a).to_list() == as_bits(expected)


class TestInvertRank:
    def test_invert_worked_example_scrambler(self):
        assert invert(fixtures.S) == S_INV
        assert mat_mul(fixtures.S, S_INV) == BitMatrix.identity(4)
        assert mat_mul(S_INV, fixtures.S) == BitMatrix.identity(4)

    def test_invert_identity(self):
        assert invert(BitMatrix.identity(6)) == BitMatrix.identity(6)

    def test_invert_zero_is_singular(self):
        with pytest.raises(SingularError):
            invert(BitMatrix.zeros(3, 3))

    def test_invert_non_square(self):
        with pytest.raises(DimensionError):
            invert(BitMatrix.zeros(2, 3))

    def test_rank_values(self):
        assert oracle_rank(dense(fixtures.S)) == 4
        assert rank(fixtures.S) == 4
        assert rank(BitMatrix.identity(7)) == 7
        assert rank(BitMatrix.zeros(3, 5)) == 0

    @settings(max_examples=60, deadline=None)
    @given(matrices(max_dim=8)())
    def test_rank_matches_span_enumeration(self, a):
        assert rank(a) == oracle_rank(dense(a))

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 12), st.integers(0, 2**32))
    def test_two_sided_inverse(self, k, seed):
        a = random_invertible(k, random.Random(seed))
        inv = invert(a)
        assert mat_mul(a, inv) == BitMatrix.identity(k) == mat_mul(inv, a)


class TestRandomGeneration:
    def test_invertible_seeded(self):
        m = random_invertible(4, random.Random(42))
        assert rank(m) == 4
        assert m == random_invertible(4, random.Random(42))

    def test_invertible_1x1(self):
        assert random_invertible(1, random.Random(5)) == BitMatrix([[1]])

    def test_invertible_many(self):
        rng = random.Random(99)
        assert all(rank(random_invertible(8, rng)) == 8 for _ in range(1000))

    def test_invertible_rejects_zero_dim(self):
        with pytest.raises(ValueError):
            random_invertible(0, random.Random(0))

    def test_permutation_bijective(self):
        p = random_permutation(3, random.Random(7))
        assert sorted(p.mapping) == [0, 1, 2]
        assert random_permutation(1, random.Random(7)) == PermutationMatrix.identity(1)

    @settings(max_examples=50, deadline=None)
    @given(st.integers(1, 40), st.integers(0, 2**32))
    def test_permutation_dense_form(self, n, seed):
        p = random_permutation(n, random.Random(seed))
        d = dense(p.to_dense())
        assert (d.sum(axis=0) == 1).all() and (d.sum(axis=1) == 1).all()
        assert p.inverse().to_dense() == p.to_dense().transpose()
        assert p == random_permutation(n, random.Random(seed))


class TestPermute:
    def test_fixture_mapping_convention(self):
        assert fixtures.P.mapping == (1, 3, 6, 0, 2, 5, 4)
        assert fixtures.P.to_dense() == fixtures.P_DENSE

    def test_inverse_matches_dense_product(self):
        phi = fixtures.PHI
        p_inv = np.array(dense(fixtures.P_DENSE)).T
        expected = oracle_mul(dense_vec(phi)[None, :], p_inv)
        got = permute(phi, fixtures.P, inverse=True)
        assert got.to_list() == as_bits(expected) == [1, 0, 0, 1, 1, 0, 0]

    def test_identity(self):
        x = BitVector.from_str("1011001")
        assert permute(x, PermutationMatrix.identity(7)) == x

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            permute(BitVector.zeros(6), fixtures.P)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(1, 40), st.integers(0, 2**32), st.data())
    def test_roundtrip_and_dense_agreement(self, n, seed, data):
        p = random_permutation(n, random.Random(seed))
        x = BitVector.from_int(data.draw(st.integers(0, (1 << n) - 1)), n)
        fwd = permute(x, p)
        assert permute(fwd, p, inverse=True) == x
        assert fwd == vec_mat_mul(x, p.to_dense())
        assert permute(x, p, inverse=True) == vec_mat_mul(x, p.inverse().to_dense())

    def test_from_dense_rejects_non_permutation(self):
        with pytest.raises(ValueError):
            PermutationMatrix.from_dense(BitMatrix([[1, 1], [0, 0]]))
        with pytest.raises(ValueError):
            PermutationMatrix([0, 0, 1])
