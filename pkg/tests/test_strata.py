import re

import pytest

from varcom.complexes import Complex, rank_vector
from varcom.strata import (Chain, GradedDims, RankVector,
                           canonical_representative, covering_relations,
                           enumerate_R, enumerate_chains, hasse_dot,
                           is_maximal, maximal_elements, stratum_dim)


class TestEnumerateR:
    def test_three_ones(self):
        R = enumerate_R(GradedDims((1, 1, 1)))
        assert {rv.r for rv in R} == {(0, 0), (1, 0), (0, 1)}
        assert [rv.r for rv in R] == sorted(rv.r for rv in R)

    def test_single_degree(self):
        R = enumerate_R(GradedDims((1,)))
        assert [rv.r for rv in R] == [()]

    def test_middle_two(self):
        R = enumerate_R(GradedDims((1, 2, 1)))
        assert {rv.r for rv in R} == {(0, 0), (1, 0), (0, 1), (1, 1)}

    def test_zero_always_present(self):
        for dims in ((2, 2), (3, 1, 2), (1, 0, 1)):
            R = enumerate_R(GradedDims(dims))
            assert any(rv.is_zero() for rv in R)

    def test_invalid_vector_rejected(self):
        with pytest.raises(ValueError):
            RankVector(GradedDims((1, 1, 1)), (1, 1))


class TestOrderAndMeet:
    def test_meet_incomparable(self):
        dims = GradedDims((1, 2, 1))
        a = RankVector(dims, (1, 0))
        b = RankVector(dims, (0, 1))
        assert a.meet(b).r == (0, 0)

    def test_leq(self):
        dims = GradedDims((1, 2, 1))
        assert RankVector(dims, (0, 1)).leq(RankVector(dims, (1, 1)))

    def test_meet_idempotent(self):
        dims = GradedDims((2, 2))
        r = RankVector(dims, (1,))
        assert r.meet(r) == r

    def test_context_mismatch(self):
        a = RankVector(GradedDims((1, 1)), (1,))
        b = RankVector(GradedDims((2, 2)), (1,))
        with pytest.raises(ValueError):
            a.leq(b)

    def test_meet_is_greatest_lower_bound(self):
        for dims in ((1, 2, 1), (2, 2, 2), (2, 1, 2), (1, 1, 1, 1)):
            R = enumerate_R(GradedDims(dims))
            for a in R:
                for b in R:
                    m = a.meet(b)
                    assert m.leq(a) and m.leq(b)
                    for c in R:
                        if c.leq(a) and c.leq(b):
                            assert c.leq(m)


class TestMaximalSparse:
    def test_examples(self):
        dims = GradedDims((1, 1, 1))
        r10 = RankVector(dims, (1, 0))
        assert r10.cohomology_dims() == (0, 0, 1)
        assert r10.sparse_criterion() and is_maximal(r10)
        r00 = RankVector(dims, (0, 0))
        assert not r00.sparse_criterion() and not is_maximal(r00)
        r11 = RankVector(GradedDims((1, 2, 1)), (1, 1))
        assert r11.cohomology_dims() == (0, 0, 0)
        assert r11.sparse_criterion() and is_maximal(r11)

    def test_cohomology_dims_more(self):
        assert RankVector(GradedDims((2, 2)), (1,)).cohomology_dims() == (1, 1)
        assert RankVector(GradedDims((2, 2)), (2,)).cohomology_dims() == (0, 0)
        assert RankVector(GradedDims((3,)), ()).cohomology_dims() == (3,)


class TestCanonicalRepresentative:
    def test_zero(self):
        rv = RankVector(GradedDims((2, 2)), (0,))
        assert canonical_representative(rv) == Complex.zero(rv.dims)

    def test_single_block(self):
        rv = RankVector(GradedDims((2, 2)), (1,))
        c = canonical_representative(rv)
        assert [[int(x) for x in row] for row in c.diffs[0].entries] == \
            [[1, 0], [0, 0]]

    def test_offset_blocks(self):
        rv = RankVector(GradedDims((1, 2, 1)), (1, 1))
        c = canonical_representative(rv)
        assert [[int(x) for x in row] for row in c.diffs[0].entries] == [[1], [0]]
        assert [[int(x) for x in row] for row in c.diffs[1].entries] == [[0, 1]]

    def test_rank_vector_roundtrip_exhaustive_small(self):
        for dims in ((2, 2), (1, 2, 1), (2, 1, 2), (1, 1, 1, 1)):
            gd = GradedDims(dims)
            for rv in enumerate_R(gd):
                assert rank_vector(canonical_representative(rv)) == rv


class TestStratumDim:
    def test_origin(self):
        assert stratum_dim(RankVector(GradedDims((2, 2)), (0,))) == 0

    def test_rank_one_matrices(self):
        assert stratum_dim(RankVector(GradedDims((2, 2)), (1,))) == 3

    def test_open_orbit(self):
        assert stratum_dim(RankVector(GradedDims((2, 2)), (2,))) == 4

    def test_positive_off_origin(self):
        for dims in ((2, 2), (1, 2, 1)):
            gd = GradedDims(dims)
            for rv in enumerate_R(gd):
                if rv.is_zero():
                    assert stratum_dim(rv) == 0
                else:
                    assert stratum_dim(rv) >= 1


class TestChains:
    def test_affine_chains_111(self):
        chains = enumerate_chains(GradedDims((1, 1, 1)))
        got = {(tuple(e.r for e in c.elements), c.terminal.r) for c in chains}
        assert got == {
            ((), (1, 0)), ((), (0, 1)),
            (((0, 0),), (1, 0)), (((0, 0),), (0, 1)),
        }

    def test_single_degree_only_empty_chain(self):
        chains = enumerate_chains(GradedDims((1,)))
        assert len(chains) == 1
        assert chains[0].elements == ()
        assert chains[0].terminal.r == ()

    def test_projective_excludes_zero_start(self):
        chains = enumerate_chains(GradedDims((1, 1, 1)), projective=True)
        got = {(tuple(e.r for e in c.elements), c.terminal.r) for c in chains}
        assert got == {((), (1, 0)), ((), (0, 1))}

    def test_chain_validation(self):
        dims = GradedDims((1, 1, 1))
        zero = RankVector(dims, (0, 0))
        top = RankVector(dims, (1, 0))
        with pytest.raises(ValueError):
            Chain(dims, (top,), None)          # maximal element not terminal
        with pytest.raises(ValueError):
            Chain(dims, (zero,), zero)         # terminal must be maximal
        Chain(dims, (zero,), top)              # fine

    def test_chain_difference_is_valid_rank_vector(self):
        # strict increase in R <=> difference valid on the cohomology dims
        for dims in ((1, 2, 1), (2, 2, 2), (1, 1, 1, 1)):
            gd = GradedDims(dims)
            R = enumerate_R(gd)
            for a in R:
                h = GradedDims(a.cohomology_dims())
                for b in R:
                    if a < b:
                        diff = tuple(y - x for x, y in zip(a.r, b.r))
                        RankVector(h, diff)     # must not raise
                for diff_rv in enumerate_R(h):
                    if not diff_rv.is_zero():
                        summed = tuple(x + y for x, y in zip(a.r, diff_rv.r))
                        back = RankVector(gd, summed)
                        assert a < back


class TestCoveringsAndDot:
    def test_ranked_small(self):
        for dims in ((1, 1, 1), (1, 2, 1), (2, 2, 2)):
            for low, high in covering_relations(GradedDims(dims)):
                assert high.length() == low.length() + 1

    def test_dot_counts(self):
        d = hasse_dot(GradedDims((1, 1, 1)))
        assert len(re.findall(r"label=", d)) == 3
        assert len(re.findall(r"->", d)) == 2
        d1 = hasse_dot(GradedDims((1,)))
        assert len(re.findall(r"label=", d1)) == 1
        assert "->" not in d1.replace("rankdir", "")
        d2 = hasse_dot(GradedDims((1, 2, 1)))
        assert len(re.findall(r"label=", d2)) == 4
        assert len(re.findall(r"->", d2)) == 4

    def test_maximal_marked_as_boxes(self):
        d = hasse_dot(GradedDims((1, 2, 1)))
        assert d.count("shape=box") == len(maximal_elements(GradedDims((1, 2, 1))))
