"""Limits of one-parameter families of complexes.

A family D(t) with entries regular at t = 0 and D(t)^2 = 0 identically is
a complex of free modules over the local ring at 0.  Every such complex
splits into shifted copies of the ring and two-term blocks R --t^a--> R;
``dvr_decompose`` finds this splitting by valuation-minimal pivoting, with
the relations D^2 = 0 guaranteeing that each extracted block detaches
cleanly from its neighbours.  The multiplicities m[i, a] of the blocks
determine the limit of the family as t -> 0: a reduced spectral sequence
whose page differentials are read off exactly, one active exponent at a
time.  An independent brute-force oracle recomputes page dimensions and
differential ranks from the classical filtered-complex subquotients over a
truncation ring, and is used to cross-check the pivoting path.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .complexes import Complex, NotAComplexError, cohomology, rank_vector
from .linalg import (Matrix, inverse, kernel_basis, local_at_zero,
                     local_from_rational, local_inverse, local_rank, rank,
                     rref, solve_matrix)
from .rings import LOCAL, QQ, QPoly, RatFun
from .spectral import SpectralSequence, StratumLabel, stratum_label
from .strata import GradedDims, RankVector


class PolyComplex:
    """One-parameter family of differentials, exact rational functions in
    t regular at 0, squaring to zero identically."""

    __slots__ = ("dims", "diffs")

    def __init__(self, dims: GradedDims, diffs):
        diffs = tuple(diffs)
        if len(diffs) != dims.m:
            raise ValueError(f"expected {dims.m} differentials, got {len(diffs)}")
        for i, d in enumerate(diffs):
            if d.domain != LOCAL:
                raise TypeError("family entries must be local-ring scalars")
            if d.rows != dims[i + 1] or d.cols != dims[i]:
                raise ValueError(
                    f"D_{i}(t) has shape {d.rows}x{d.cols}, expected "
                    f"{dims[i + 1]}x{dims[i]}")
        for i in range(len(diffs) - 1):
            if not (diffs[i + 1] @ diffs[i]).is_zero():
                raise NotAComplexError(
                    i, f"not a complex at t: D_{i + 1}(t) D_{i}(t) != 0")
        self.dims = dims
        self.diffs = diffs

    @classmethod
    def constant(cls, c: Complex) -> "PolyComplex":
        if c.domain != QQ:
            raise TypeError("constant families come from rational complexes")
        return cls(c.dims, [local_from_rational(d) for d in c.diffs])

    def at_zero(self) -> Complex:
        return Complex(self.dims, [local_at_zero(d) for d in self.diffs])

    def substitute(self, u: QPoly) -> "PolyComplex":
        """Reparametrize t -> u(t) with u(0) = 0."""
        return PolyComplex(self.dims,
                           [d.map_entries(lambda x: x.substitute(u))
                            for d in self.diffs])

    def __eq__(self, other):
        return (isinstance(other, PolyComplex) and self.dims == other.dims
                and self.diffs == other.diffs)

    def __repr__(self):
        return f"PolyComplex(dims={self.dims.n})"


def validate_family(dims, raw_diffs) -> PolyComplex:
    """Build a PolyComplex from raw entry grids.  Entries may be RatFun,
    QPoly, Fraction or int; a pole at t = 0 is rejected entry by entry."""
    dims = dims if isinstance(dims, GradedDims) else GradedDims(dims)
    diffs = []
    for i, raw in enumerate(raw_diffs):
        grid = []
        for r_idx, row in enumerate(raw):
            out_row = []
            for c_idx, x in enumerate(row):
                try:
                    out_row.append(LOCAL.coerce(x))
                except (TypeError, ValueError) as exc:
                    raise ValueError(
                        f"entry ({r_idx},{c_idx}) of D_{i}: {exc}") from exc
            grid.append(out_row)
        diffs.append(Matrix(LOCAL, dims[i + 1], dims[i], grid))
    return PolyComplex(dims, diffs)


def generic_rank_vector(pc: PolyComplex) -> RankVector:
    """Ranks over the fraction field Q(t), by valuation-aware elimination."""
    return RankVector(pc.dims, tuple(local_rank(d) for d in pc.diffs))


class Block(NamedTuple):
    degree: int      # the block maps V^degree -> V^{degree+1}
    exponent: int    # the differential is multiplication by t^exponent
    source: int      # coordinate index in V^degree (after the basis change)
    target: int      # coordinate index in V^{degree+1}


class DVRDecomposition:
    """Result of the block decomposition: a graded basis change g(t),
    invertible at t = 0, such that g D g^{-1} is the direct sum of
    elementary blocks t^exponent plus zero rows/columns (free summands)."""

    __slots__ = ("dims", "g", "blocks", "free")

    def __init__(self, dims: GradedDims, g, blocks, free):
        self.dims = dims
        self.g = tuple(g)                  # local-ring matrices, one per degree
        self.blocks = tuple(blocks)
        self.free = tuple(tuple(f) for f in free)

    def multiplicities(self) -> dict[tuple[int, int], int]:
        """m[(degree, exponent)] = number of elementary blocks."""
        out: dict[tuple[int, int], int] = {}
        for b in self.blocks:
            key = (b.degree, b.exponent)
            out[key] = out.get(key, 0) + 1
        return out

    def block_multiset(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted((b.degree, b.exponent) for b in self.blocks))

    def exponents(self) -> list[int]:
        return sorted({b.exponent for b in self.blocks})

    def block_form(self) -> list[Matrix]:
        """The canonical matrices of g D g^{-1}: t^a at each block position,
        zero elsewhere."""
        out = []
        for i in range(self.dims.m):
            grid = [[RatFun(0)] * self.dims[i] for _ in range(self.dims[i + 1])]
            for b in self.blocks:
                if b.degree == i:
                    grid[b.target][b.source] = _tpow(b.exponent)
            out.append(Matrix(LOCAL, self.dims[i + 1], self.dims[i], grid))
        return out

    def g_inverse(self) -> list[Matrix]:
        return [local_inverse(gi) for gi in self.g]


def _tpow(a: int) -> RatFun:
    return RatFun(QPoly((Fraction(0),) * a + (Fraction(1),)))


def dvr_decompose(pc: PolyComplex) -> DVRDecomposition:
    """Split the family into elementary blocks by valuation-minimal
    pivoting.

    Repeatedly pick the live entry of globally minimal t-adic valuation
    (ties: lowest degree, then row-major), normalize its unit factor away,
    and clear its row and column; minimality keeps every elimination
    quotient regular at 0, and D^2 = 0 forces the matching column of the
    next differential and row of the previous one to vanish, so the block
    splits off and both coordinates retire.  Every operation is an
    elementary basis change accumulated into g.
    """
    dims = pc.dims
    m = dims.m
    A = [[list(row) for row in d.entries] for d in pc.diffs]
    g = [[[RatFun(1) if i == j else RatFun(0) for j in range(n)]
          for i in range(n)] for n in dims]
    live = [set(range(n)) for n in dims]

    def row_scale(j: int, p: int, u: RatFun):
        # coordinate p of V^j scaled by 1/u
        inv = RatFun(1) / u
        g[j][p] = [x * inv for x in g[j][p]]
        if j >= 1:
            A[j - 1][p] = [x * inv for x in A[j - 1][p]]
        if j <= m - 1:
            for r_ in range(dims[j + 1]):
                A[j][r_][p] = A[j][r_][p] * u

    def row_combine(j: int, dst: int, src: int, c: RatFun):
        # coordinate dst of V^j gets + c * coordinate src (so as a row
        # operation on maps INTO V^j, and the inverse op on maps out)
        g[j][dst] = [x + c * y for x, y in zip(g[j][dst], g[j][src])]
        if j >= 1:
            A[j - 1][dst] = [x + c * y
                             for x, y in zip(A[j - 1][dst], A[j - 1][src])]
        if j <= m - 1:
            for r_ in range(dims[j + 1]):
                A[j][r_][src] = A[j][r_][src] - c * A[j][r_][dst]

    blocks = []
    while True:
        best = None
        best_val = None
        for i in range(m):
            for p in sorted(live[i + 1]):
                row = A[i][p]
                for q in sorted(live[i]):
                    x = row[q]
                    if x.is_zero():
                        continue
                    v = x.valuation()
                    if best_val is None or v < best_val:
                        best, best_val = (i, p, q), v
        if best is None:
            break
        i, p, q = best
        a = best_val
        piv = A[i][p][q]
        unit = piv / _tpow(a)
        # make the pivot exactly t^a
        row_scale(i + 1, p, unit)
        tpa = A[i][p][q]
        # clear the pivot column (operations on V^{i+1})
        for p2 in sorted(live[i + 1]):
            if p2 == p or A[i][p2][q].is_zero():
                continue
            c = A[i][p2][q] / tpa        # valuation >= 0 by minimality
            row_combine(i + 1, p2, p, -c)
        # clear the pivot row (operations on V^i)
        for q2 in sorted(live[i]):
            if q2 == q or A[i][p][q2].is_zero():
                continue
            c = A[i][p][q2] / tpa
            row_combine(i, q, q2, c)
        blocks.append(Block(i, a, q, p))
        live[i].discard(q)
        live[i + 1].discard(p)
        # D^2 = 0 detaches the block from the neighbouring differentials
        if i + 1 <= m - 1:
            assert all(A[i + 1][r_][p].is_zero() for r_ in range(dims[i + 2])), \
                "block did not detach from the next differential"
        if i >= 1:
            assert all(x.is_zero() for x in A[i - 1][q]), \
                "block did not detach from the previous differential"

    free = [sorted(live[i]) for i in range(m + 1)]
    g_mats = [Matrix(LOCAL, dims[j], dims[j], g[j]) for j in range(m + 1)]
    return DVRDecomposition(dims, g_mats, blocks, free)


def page_table_from_multiplicities(dims: GradedDims, mult, r_max: int):
    """Exponent-indexed table of page dimensions and differential ranks:
    row r has dim E_r^i = n_i - sum_{a<r}(m[i,a] + m[i-1,a]) and
    rank(d_r in degree i) = m[i,r]."""
    m = dims.m
    table = []
    for r in range(r_max + 2):
        ds = []
        for i in range(m + 1):
            drop = 0
            for a in range(r):
                drop += mult.get((i, a), 0) + mult.get((i - 1, a), 0)
            ds.append(dims[i] - drop)
        ranks = [mult.get((i, r), 0) for i in range(m)]
        table.append((tuple(ds), tuple(ranks)))
    return table


class LimitResult(NamedTuple):
    ss: SpectralSequence
    label: StratumLabel | None
    reduced: bool


def limit_complete_complex(pc: PolyComplex,
                           decomposition: DVRDecomposition | None = None) -> LimitResult:
    """The limit of the family as t -> 0.

    Page 0 carries D(0).  For each active exponent a >= 1, in increasing
    order, the blocks t^a induce the next nonzero page differential:
    ambient representatives are conjugated through g(0) and re-expressed
    on the canonical cohomology basis of the previous page by exact
    solving in the accumulated subquotient.  Zero exponent classes between
    active ones contribute identity pages and are skipped, which is what
    makes the limit reduced exactly when the generic rank vector is
    maximal.  Non-reduced limits (final page not sparse) are returned with
    reduced=False and no label.
    """
    dec = decomposition or dvr_decompose(pc)
    dims = pc.dims
    m = dims.m
    G = [local_at_zero(gi) for gi in dec.g]
    Ginv = [inverse(Gi) for Gi in G]

    def exponent_map(a: int) -> list[Matrix]:
        """Ambient matrices of the exponent-a block map, original basis."""
        out = []
        for i in range(m):
            grid = [[QQ.zero] * dims[i] for _ in range(dims[i + 1])]
            for b in dec.blocks:
                if b.degree == i and b.exponent == a:
                    grid[b.target][b.source] = QQ.one
            out.append(Ginv[i + 1] @ Matrix(QQ, dims[i + 1], dims[i], grid) @ G[i])
        return out

    # Accumulated subquotient: lifts of the current page basis and of the
    # boundaries hit so far, as ambient column matrices per degree.
    lifts = [Matrix.identity(QQ, n) for n in dims]
    bnds = [Matrix.zeros(QQ, n, 0) for n in dims]

    pages = [Complex(dims, [local_at_zero(d) for d in pc.diffs])]
    actives = [a for a in dec.exponents() if a >= 1]
    for a in actives:
        page = pages[-1]
        coh = cohomology(page)
        new_lifts = []
        new_bnds = []
        for i in range(m + 1):
            new_lifts.append(lifts[i] @ coh.lifts[i])
            if i >= 1:
                prev_diff = page.diffs[i - 1]
                _, pivots = rref(prev_diff)
                img_cols = prev_diff.submatrix(range(prev_diff.rows), pivots) \
                    if pivots else Matrix.zeros(QQ, prev_diff.rows, 0)
                new_bnds.append(bnds[i].hstack(lifts[i] @ img_cols))
            else:
                new_bnds.append(bnds[i])
        lifts, bnds = new_lifts, new_bnds
        amb_map = exponent_map(a)
        new_dims = GradedDims(coh.h)
        diffs = []
        for i in range(m):
            value = amb_map[i] @ lifts[i]
            basis = lifts[i + 1].hstack(bnds[i + 1])
            sol = solve_matrix(basis, value)
            if sol is None:
                raise AssertionError(
                    "page differential left the accumulated subquotient")
            diffs.append(sol.submatrix(range(new_dims[i + 1]), range(new_dims[i])))
        pages.append(Complex(new_dims, diffs))

    final_dims = GradedDims(rank_vector(pages[-1]).cohomology_dims())
    pages.append(Complex.zero(final_dims))
    ss = SpectralSequence(pages)
    reduced = final_dims.is_sparse()
    label = stratum_label(ss) if reduced else None
    return LimitResult(ss, label, reduced)


def exponent_rank_table(pc: PolyComplex,
                        decomposition: DVRDecomposition | None = None):
    """Uncompressed page table indexed by exponent, from the block
    multiplicities; this is what the filtered-complex oracle reproduces."""
    dec = decomposition or dvr_decompose(pc)
    exps = dec.exponents()
    r_max = exps[-1] if exps else 0
    return page_table_from_multiplicities(pc.dims, dec.multiplicities(), r_max)


class TruncationTooSmall(ValueError):
    pass


def filtered_oracle(pc: PolyComplex, N: int):
    """Independent page dimension/rank table from the t-adic filtration.

    The family is unrolled over the truncation ring Q[t]/t^N into one big
    rational complex; for page r the classical subquotients
    Z_r^p / (Z_{r-1}^{p+1} + D Z_{r-1}^{p-r+1}) are computed by exact
    kernel/sum/rank arithmetic at an interior filtration level p = N//2.
    The same table is computed at p - 1; a mismatch means the truncation
    order is too small for the exponents present.
    """
    if N < 4:
        raise ValueError("truncation order too small to have interior levels")
    dims = pc.dims
    m = dims.m
    series = [[[x.series(N) for x in row] for row in d.entries]
              for d in pc.diffs]

    def big_matrix(i: int) -> Matrix:
        """D_i on V^i (x) Q[t]/t^N, coordinates (j, e) -> j*n + e."""
        rows, cols = dims[i + 1] * N, dims[i] * N
        grid = [[QQ.zero] * cols for _ in range(rows)]
        for u in range(dims[i + 1]):
            for v in range(dims[i]):
                poly = series[i][u][v]
                for k, ck in enumerate(poly.coeffs):
                    if ck == 0:
                        continue
                    for j in range(N - k):
                        grid[(j + k) * dims[i + 1] + u][j * dims[i] + v] = ck
        return Matrix(QQ, rows, cols, grid)

    bigD = [big_matrix(i) for i in range(m)]

    def z_space(r: int, p: int, i: int) -> Matrix:
        """Basis (columns) of Z_r^{p, i} = {x in F^p : D x in F^{p+r}}."""
        p = max(p, 0)
        n = dims[i]
        free_coords = [j * n + e for j in range(p, N) for e in range(n)]
        if not free_coords:
            return Matrix.zeros(QQ, N * n, 0)
        if i == m:
            ker = Matrix.identity(QQ, len(free_coords))
        else:
            cutoff = min(p + r, N) * dims[i + 1]
            sub = bigD[i].submatrix(range(cutoff), free_coords)
            ker = kernel_basis(sub)
        full_cols = []
        for c in range(ker.cols):
            vec = [QQ.zero] * (N * n)
            for idx, coord in enumerate(free_coords):
                vec[coord] = ker.entries[idx][c]
            full_cols.append(vec)
        return Matrix.from_columns(QQ, N * n, full_cols)

    def span_dim(*mats: Matrix) -> int:
        mats = [mm for mm in mats if mm.cols > 0]
        if not mats:
            return 0
        acc = mats[0]
        for mm in mats[1:]:
            acc = acc.hstack(mm)
        return rank(acc)

    def table_at(p: int, r_max: int):
        rows = []
        for r in range(r_max + 2):
            ds = []
            rks = []
            for i in range(m + 1):
                Z = z_space(r, p, i)
                B1 = z_space(r - 1, p + 1, i)
                if i >= 1:
                    Zlow = z_space(r - 1, p - r + 1, i - 1)
                    DZ = bigD[i - 1] @ Zlow if Zlow.cols else \
                        Matrix.zeros(QQ, N * dims[i], 0)
                else:
                    DZ = Matrix.zeros(QQ, N * dims[i], 0)
                ds.append(span_dim(Z) - span_dim(B1, DZ))
            for i in range(m):
                Z = z_space(r, p, i)
                DZ_img = bigD[i] @ Z if Z.cols else Matrix.zeros(QQ, N * dims[i + 1], 0)
                T1 = z_space(r - 1, p + r + 1, i + 1)
                Zlow = z_space(r - 1, p + 1, i)
                T2 = bigD[i] @ Zlow if Zlow.cols else Matrix.zeros(QQ, N * dims[i + 1], 0)
                rks.append(span_dim(DZ_img, T1, T2) - span_dim(T1, T2))
            rows.append((tuple(ds), tuple(rks)))
        return rows

    # The oracle never looks at the pivoting path: it reports every page
    # the truncation can reliably see.  At the interior level p = N//2 the
    # subquotient formulas for page r touch filtration levels p - r + 1
    # through p + r + 1, so pages up to N//2 - 2 are trustworthy for both
    # p and p - 1.
    p = N // 2
    r_max = max(p - 2, 0)
    t1 = table_at(p, r_max)
    t2 = table_at(p - 1, r_max)
    if t1 != t2:
        raise TruncationTooSmall(
            f"filtered tables disagree at p = {p} and {p - 1}; increase N")
    return t1
