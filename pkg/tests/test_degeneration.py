import random
from fractions import Fraction

import pytest

from varcom.complexes import NotAComplexError, rank_vector, validate
from varcom.degeneration import (PolyComplex, dvr_decompose,
                                 exponent_rank_table, filtered_oracle,
                                 generic_rank_vector, limit_complete_complex,
                                 page_table_from_multiplicities,
                                 validate_family)
from varcom.linalg import Matrix, local_inverse
from varcom.rings import LOCAL, QPoly, RatFun
from varcom.spectral import normalize
from varcom.strata import GradedDims

T = RatFun(QPoly.t())
ONE = RatFun(1)
ZERO = RatFun(0)


def tpow(k):
    return RatFun(QPoly((Fraction(0),) * k + (Fraction(1),)))


def lmat(rows, cols, grid):
    return Matrix(LOCAL, rows, cols, grid)


def diag_family(*powers):
    n = len(powers)
    grid = [[tpow(powers[i]) if i == j else ZERO for j in range(n)]
            for i in range(n)]
    return PolyComplex(GradedDims((n, n)), [lmat(n, n, grid)])


def middle_family():
    """(t, 0)^T then (0, t) on dims (1, 2, 1)."""
    return PolyComplex(GradedDims((1, 2, 1)),
                       [lmat(2, 1, [[T], [ZERO]]), lmat(1, 2, [[ZERO, T]])])


class TestValidateFamily:
    def test_constant_family(self):
        c = validate((1, 2, 1), [[[1], [0]], [[0, 1]]])
        pc = PolyComplex.constant(c)
        assert pc.at_zero() == c

    def test_nonzero_composite(self):
        with pytest.raises(NotAComplexError) as err:
            validate_family((1, 1, 1), [[[T]], [[ONE]]])
        assert err.value.degree == 0

    def test_middle_valid(self):
        pc = validate_family((1, 2, 1), [[[T], [ZERO]], [[ZERO, T]]])
        assert pc == middle_family()

    def test_bad_entry_named(self):
        with pytest.raises(ValueError, match=r"entry \(0,0\) of D_0"):
            validate_family((1, 1), [[["not a scalar"]]])

    def test_pole_at_zero_rejected(self):
        with pytest.raises(ValueError, match="pole"):
            RatFun(QPoly((1,)), QPoly.t())


class TestDecompose:
    def test_diag_1_t(self):
        dec = dvr_decompose(diag_family(0, 1))
        assert dec.block_multiset() == ((0, 0), (0, 1))
        assert dec.free == ((), ())

    def test_collineation_chain(self):
        dec = dvr_decompose(diag_family(0, 1, 2, 3))
        assert dec.block_multiset() == ((0, 0), (0, 1), (0, 2), (0, 3))

    def test_disjoint_pivots(self):
        dec = dvr_decompose(middle_family())
        assert dec.block_multiset() == ((0, 1), (1, 1))
        assert dec.free == ((), (), ())

    def test_zero_family_all_free(self):
        pc = PolyComplex(GradedDims((1, 1, 1)),
                         [lmat(1, 1, [[ZERO]]), lmat(1, 1, [[ZERO]])])
        dec = dvr_decompose(pc)
        assert dec.blocks == ()
        assert dec.free == ((0,), (0,), (0,))

    def test_conjugation_identity(self):
        pc = middle_family()
        dec = dvr_decompose(pc)
        ginv = dec.g_inverse()
        block = dec.block_form()
        for i in range(pc.dims.m):
            assert dec.g[i + 1] @ pc.diffs[i] @ ginv[i] == block[i]

    def test_off_diagonal_mixing(self):
        # a full 2x2 with mixed valuations: pivot order and clearing matter
        pc = PolyComplex(GradedDims((2, 2)),
                         [lmat(2, 2, [[ONE + T, T], [T, T]])])
        dec = dvr_decompose(pc)
        assert sorted(a for (_, a) in dec.block_multiset()) == [0, 1]
        ginv = dec.g_inverse()
        assert dec.g[1] @ pc.diffs[0] @ ginv[0] == dec.block_form()[0]


class TestGenericRank:
    def test_diag(self):
        assert generic_rank_vector(diag_family(0, 1)).r == (2,)

    def test_middle(self):
        assert generic_rank_vector(middle_family()).r == (1, 1)

    def test_zero(self):
        pc = PolyComplex(GradedDims((2, 2)), [lmat(2, 2, [[ZERO] * 2] * 2)])
        assert generic_rank_vector(pc).r == (0,)


class TestLimit:
    def test_diag_1_t(self):
        limit = limit_complete_complex(diag_family(0, 1))
        assert [p.dims.n for p in limit.ss.pages] == [(2, 2), (1, 1), (0, 0)]
        assert [rank_vector(p).r for p in limit.ss.pages] == [(1,), (1,), (0,)]
        assert limit.reduced
        assert [e.r for e in limit.label.elements] == [(1,)]
        assert limit.label.terminal.r == (2,)

    def test_constant_maximal(self):
        c = validate((1, 2, 1), [[[1], [0]], [[0, 1]]])
        limit = limit_complete_complex(PolyComplex.constant(c))
        assert limit.reduced
        assert limit.label.elements == ()
        assert limit.label.terminal.r == (1, 1)
        assert len(limit.ss.pages) == 2

    def test_zero_family_not_reduced(self):
        pc = PolyComplex(GradedDims((1, 1, 1)),
                         [lmat(1, 1, [[ZERO]]), lmat(1, 1, [[ZERO]])])
        limit = limit_complete_complex(pc)
        assert not limit.reduced
        assert limit.label is None

    def test_exponent_gap_compression(self):
        limit = limit_complete_complex(diag_family(1, 3))
        assert [rank_vector(p).r for p in limit.ss.pages] == \
            [(0,), (1,), (1,), (0,)]
        assert limit.reduced
        assert [e.r for e in limit.label.elements] == [(0,), (1,)]
        assert limit.label.terminal.r == (2,)
        normalize(limit.ss)   # compressed limit is genuinely reduced

    def test_limit_is_intrinsic_under_reparametrization(self):
        pc = diag_family(0, 2)
        u = QPoly((Fraction(0), Fraction(1), Fraction(1)))   # t(1+t)
        limit1 = limit_complete_complex(pc)
        limit2 = limit_complete_complex(pc.substitute(u))
        assert limit1.ss == limit2.ss
        assert limit1.label == limit2.label


class TestOracle:
    def test_diag_1_t(self):
        pc = diag_family(0, 1)
        table = filtered_oracle(pc, 6)
        assert table[0] == ((2, 2), (1,))
        assert table[1] == ((1, 1), (1,))
        dec = dvr_decompose(pc)
        want = page_table_from_multiplicities(pc.dims, dec.multiplicities(),
                                              len(table) - 2)
        assert list(table) == list(want)

    def test_constant_invertible_dies_on_page_zero(self):
        c = validate((2, 2), [[[1, 0], [0, 1]]])
        table = filtered_oracle(PolyComplex.constant(c), 6)
        assert table[0] == ((2, 2), (2,))
        assert all(row == ((0, 0), (0,)) for row in table[1:])

    def test_middle_family(self):
        pc = middle_family()
        table = filtered_oracle(pc, 6)
        assert table[0] == ((1, 2, 1), (0, 0))
        assert table[1] == ((1, 2, 1), (1, 1))
        assert table[2] == ((0, 0, 0), (0, 0))

    def test_gap_table_uncompressed(self):
        pc = diag_family(1, 3)
        table = filtered_oracle(pc, 10)
        ranks = [row[1] for row in table]
        assert ranks[:5] == [(0,), (1,), (0,), (1,), (0,)]
        assert list(table) == list(exponent_rank_table(pc))

    def test_too_small_N_rejected(self):
        with pytest.raises(ValueError):
            filtered_oracle(diag_family(0, 1), 3)


class TestInvariances:
    def test_reparametrization_multiplicities(self):
        pc = middle_family()
        u = QPoly((Fraction(0), Fraction(1), Fraction(1)))
        assert dvr_decompose(pc.substitute(u)).block_multiset() == \
            dvr_decompose(pc).block_multiset()

    def test_constant_conjugation(self):
        pc = diag_family(0, 1)
        g1 = lmat(2, 2, [[ONE, ONE], [ZERO, ONE]])
        g0 = lmat(2, 2, [[ONE, ZERO], [RatFun(2), ONE]])
        conj = [g1 @ pc.diffs[0] @ local_inverse(g0)]
        pc2 = PolyComplex(pc.dims, conj)
        l1 = limit_complete_complex(pc)
        l2 = limit_complete_complex(pc2)
        assert [p.dims for p in l1.ss.pages] == [p.dims for p in l2.ss.pages]
        assert l1.label == l2.label
        assert l1.reduced == l2.reduced

    def test_planted_random_roundtrip(self):
        rng = random.Random(99)
        from varcom.suites import plant_block_family
        for _ in range(25):
            dims = GradedDims([rng.randint(0, 2) for _ in range(rng.randint(2, 4))])
            if dims.total() == 0:
                continue
            pc, planted, rho = plant_block_family(rng, dims, 3)
            dec = dvr_decompose(pc)
            assert dec.block_multiset() == planted
            assert generic_rank_vector(pc) == rho
