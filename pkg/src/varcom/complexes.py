"""Complexes of finite-dimensional graded vector spaces.

A complex is a graded dimension vector together with differential
components D_i: V^i -> V^{i+1} composing to zero.  This module provides
the linear algebra attached to one complex: rank vector, cohomology with
canonical bases, the splitting into an acyclic part plus cohomology, hom
and homotopy spaces of degree-1 morphisms, stabilizers, and the local
chart data around a stratum point.

Sign conventions.  The shift (V[1], D') has D'_i = -D_{i+1}, so a degree-1
morphism of complexes f: (V, D) -> (V, D)[1] is a graded map whose
components satisfy D_{i+1} f_i + f_{i+1} D_i = 0.  These f form the
tangent space at D to the variety of complexes; those of the form
f = sD - Ds for a degree-0 graded map s form the tangent space to the
orbit of D.
"""

from __future__ import annotations

from .linalg import (Matrix, complement_basis, extend_columns, inverse,
                     kernel_basis, rank, rref)
from .rings import QQ, Domain
from .strata import GradedDims, RankVector


class NotAComplexError(ValueError):
    """Raised when differentials fail D_{i+1} D_i = 0; carries the first
    offending degree."""

    def __init__(self, degree: int, message: str | None = None):
        self.degree = degree
        super().__init__(message or f"not a complex: D_{degree + 1} D_{degree} != 0")


class Complex:
    """Validated complex of graded vector spaces over a field."""

    __slots__ = ("dims", "diffs", "domain", "_adapted")

    def __init__(self, dims: GradedDims, diffs):
        diffs = tuple(diffs)
        if len(diffs) != dims.m:
            raise ValueError(f"expected {dims.m} differentials, got {len(diffs)}")
        domain = diffs[0].domain if diffs else QQ
        for i, d in enumerate(diffs):
            if d.domain != domain:
                raise TypeError("differentials over mixed domains")
            if d.rows != dims[i + 1] or d.cols != dims[i]:
                raise ValueError(
                    f"D_{i} has shape {d.rows}x{d.cols}, expected "
                    f"{dims[i + 1]}x{dims[i]}")
        for i in range(len(diffs) - 1):
            if not (diffs[i + 1] @ diffs[i]).is_zero():
                raise NotAComplexError(i)
        self.dims = dims
        self.diffs = diffs
        self.domain = domain
        self._adapted = None

    @classmethod
    def zero(cls, dims: GradedDims, domain: Domain = QQ) -> "Complex":
        return cls(dims, [Matrix.zeros(domain, dims[i + 1], dims[i])
                          for i in range(dims.m)])

    def __eq__(self, other):
        return (isinstance(other, Complex) and self.dims == other.dims
                and self.diffs == other.diffs)

    def __hash__(self):
        return hash((self.dims, self.diffs))

    def __repr__(self):
        return f"Complex(dims={self.dims.n}, ranks={rank_vector(self).r})"


def validate(dims, raw_diffs, domain: Domain = QQ) -> Complex:
    """Build a Complex from raw entry grids, rejecting non-complexes."""
    dims = dims if isinstance(dims, GradedDims) else GradedDims(dims)
    diffs = [Matrix(domain, dims[i + 1], dims[i], raw)
             for i, raw in enumerate(raw_diffs)]
    return Complex(dims, diffs)


class GradedMap:
    """Graded map of pure degree d between graded spaces of the same
    dimension vector: components f_i: V^i -> V^{i+d}, with V^j = 0 outside
    0..m."""

    __slots__ = ("dims", "degree", "components")

    def __init__(self, dims: GradedDims, degree: int, components):
        components = tuple(components)
        if len(components) != dims.m + 1:
            raise ValueError("one component per degree expected")
        for i, f in enumerate(components):
            tgt = dims[i + degree] if 0 <= i + degree <= dims.m else 0
            if f.rows != tgt or f.cols != dims[i]:
                raise ValueError(
                    f"component {i} has shape {f.rows}x{f.cols}, expected {tgt}x{dims[i]}")
        self.dims = dims
        self.degree = degree
        self.components = components

    @classmethod
    def identity(cls, dims: GradedDims, domain: Domain = QQ) -> "GradedMap":
        return cls(dims, 0, [Matrix.identity(domain, n) for n in dims])

    def component(self, i: int) -> Matrix:
        return self.components[i]

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.components)

    def inverse(self) -> "GradedMap":
        if self.degree != 0:
            raise ValueError("only degree-0 maps can be inverted")
        return GradedMap(self.dims, 0, [inverse(f) for f in self.components])

    def conjugate(self, c: Complex) -> Complex:
        """Transport a differential through this degree-0 isomorphism:
        D -> (g D g^{-1})_i = g_{i+1} D_i g_i^{-1}."""
        if self.degree != 0:
            raise ValueError("conjugation needs a degree-0 map")
        if self.dims != c.dims:
            raise ValueError("graded space mismatch")
        inv = [inverse(f) for f in self.components]
        diffs = [self.components[i + 1] @ c.diffs[i] @ inv[i]
                 for i in range(c.dims.m)]
        return Complex(c.dims, diffs)

    def __eq__(self, other):
        return (isinstance(other, GradedMap) and self.dims == other.dims
                and self.degree == other.degree
                and self.components == other.components)

    def __repr__(self):
        return f"GradedMap(degree={self.degree}, dims={self.dims.n})"


def rank_vector(c: Complex) -> RankVector:
    """Ranks of the differential components; coordinate i+1 is the rank of
    D_i, and the inequalities defining R hold automatically."""
    return RankVector(c.dims, tuple(rank(d) for d in c.diffs))


class CohomologyData:
    """Cohomology dimensions with canonical lifts and projections.

    lifts[i] has h_i columns: representatives in V^i of the canonical
    basis of H^i, lying in Ker(D_i).  projections[i] is an h_i x n_i
    matrix killing Im(D_{i-1}) with projections[i] @ lifts[i] = identity.
    """

    __slots__ = ("h", "lifts", "projections")

    def __init__(self, h, lifts, projections):
        self.h = tuple(h)
        self.lifts = tuple(lifts)
        self.projections = tuple(projections)


def _adapted_bases(c: Complex):
    """Per-degree basis adapted to Im(D_{i-1}) | W^i | H^i, where W^i is a
    greedy complement of Ker(D_i) and H^i greedily extends the image
    inside the kernel.  In these bases the differential becomes the
    canonical block form of its rank vector.

    Returns (full_ranks, B, Binv) with B[i] the basis-column matrix.
    """
    if c._adapted is not None:
        return c._adapted
    dims, dom = c.dims, c.domain
    m = dims.m
    kernels = []
    for i in range(m):
        kernels.append(kernel_basis(c.diffs[i]))
    kernels.append(Matrix.identity(dom, dims[m]))

    wblocks = []
    for i in range(m + 1):
        if i < m:
            comp = complement_basis(kernels[i], dims[i])
            wblocks.append(comp.columns())
        else:
            wblocks.append([])

    full = [0] * (m + 2)
    B = []
    Binv = []
    prev_image_cols: list = []
    for i in range(m + 1):
        im_cols = prev_image_cols
        full[i] = len(im_cols)
        h_cols = extend_columns(dom, dims[i], im_cols, kernels[i].columns())
        cols = im_cols + wblocks[i] + h_cols
        Bi = Matrix.from_columns(dom, dims[i], cols)
        B.append(Bi)
        Binv.append(inverse(Bi))
        if i < m:
            prev_image_cols = [c.diffs[i].apply(w) for w in wblocks[i]]
    full[m + 1] = 0
    c._adapted = (tuple(full), tuple(B), tuple(Binv))
    return c._adapted


def cohomology(c: Complex) -> CohomologyData:
    """Canonical cohomology data; h_i = n_i - r_i - r_{i+1}."""
    full, B, Binv = _adapted_bases(c)
    m = c.dims.m
    h, lifts, projections = [], [], []
    for i in range(m + 1):
        r_in, r_out = full[i], full[i + 1]
        hi = c.dims[i] - r_in - r_out
        h.append(hi)
        h_cols = list(range(r_in + r_out, c.dims[i]))
        lifts.append(B[i].submatrix(range(c.dims[i]), h_cols))
        projections.append(Binv[i].submatrix(h_cols, range(c.dims[i])))
    return CohomologyData(h, lifts, projections)


def split_canonical(c: Complex):
    """Degree-0 isomorphism g with g . D . g^{-1} equal to the canonical
    block representative of the rank vector of D.  Constructive splitting
    of the complex into an acyclic part plus its cohomology.

    Returns (g, rank_vector).
    """
    full, B, Binv = _adapted_bases(c)
    g = GradedMap(c.dims, 0, list(Binv))
    return g, RankVector(c.dims, tuple(full[1:c.dims.m + 1]))


def _f_offsets(dims: GradedDims):
    """Coordinate layout for degree-1 graded maps f = (f_i: V^i -> V^{i+1}),
    i = 0..m-1."""
    offsets = []
    pos = 0
    for i in range(dims.m):
        offsets.append(pos)
        pos += dims[i + 1] * dims[i]
    return offsets, pos


def _s_offsets(dims: GradedDims):
    offsets = []
    pos = 0
    for i in range(dims.m + 1):
        offsets.append(pos)
        pos += dims[i] * dims[i]
    return offsets, pos


def _unpack_degree1(dims: GradedDims, domain: Domain, vec) -> GradedMap:
    offsets, _ = _f_offsets(dims)
    comps = []
    for i in range(dims.m):
        rows, cols = dims[i + 1], dims[i]
        base = offsets[i]
        comps.append(Matrix(domain, rows, cols,
                            [[vec[base + a * cols + b] for b in range(cols)]
                             for a in range(rows)]))
    comps.append(Matrix.zeros(domain, 0, dims[dims.m]))
    return GradedMap(dims, 1, comps)


def _morphism_equation_matrix(c: Complex) -> Matrix:
    """Linear system on degree-1 maps expressing D_{i+1} f_i + f_{i+1} D_i = 0
    for i = 0..m-2."""
    dims, dom = c.dims, c.domain
    m = dims.m
    f_off, f_total = _f_offsets(dims)
    rows = []
    for i in range(m - 1):
        Dnext = c.diffs[i + 1]
        Dcur = c.diffs[i]
        n_i, n_i2 = dims[i], dims[i + 2]
        cols_fi = dims[i]
        cols_fi1 = dims[i + 1]
        for u in range(n_i2):
            for v in range(n_i):
                row = [dom.zero] * f_total
                for k in range(dims[i + 1]):
                    coeff = Dnext.entries[u][k]
                    if coeff != dom.zero:
                        row[f_off[i] + k * cols_fi + v] = \
                            row[f_off[i] + k * cols_fi + v] + coeff
                for k in range(dims[i + 1]):
                    coeff = Dcur.entries[k][v]
                    if coeff != dom.zero:
                        idx = f_off[i + 1] + u * cols_fi1 + k
                        row[idx] = row[idx] + coeff
                rows.append(row)
    return Matrix(dom, len(rows), f_total, rows)


def morphism_space(c: Complex) -> list[GradedMap]:
    """Deterministic basis of the degree-1 morphisms of complexes
    (V, D) -> (V, D)[1]; this is the tangent space to the variety of
    complexes at D."""
    eq = _morphism_equation_matrix(c)
    ker = kernel_basis(eq)
    return [_unpack_degree1(c.dims, c.domain, ker.column(j))
            for j in range(ker.cols)]


def _homotopy_matrix(c: Complex) -> Matrix:
    """Matrix of s |-> (s_{i+1} D_i - D_i s_i) from degree-0 graded maps to
    degree-1 graded maps."""
    dims, dom = c.dims, c.domain
    m = dims.m
    f_off, f_total = _f_offsets(dims)
    s_off, s_total = _s_offsets(dims)
    z = dom.zero
    cols = [[z] * f_total for _ in range(s_total)]
    for i in range(m):
        D = c.diffs[i]
        n_i, n_i1 = dims[i], dims[i + 1]
        for u in range(n_i1):
            for v in range(n_i):
                fidx = f_off[i] + u * n_i + v
                # (s_{i+1} D_i)[u][v] = sum_k s_{i+1}[u][k] D[k][v]
                for k in range(n_i1):
                    coeff = D.entries[k][v]
                    if coeff != z:
                        sidx = s_off[i + 1] + u * n_i1 + k
                        cols[sidx][fidx] = cols[sidx][fidx] + coeff
                # -(D_i s_i)[u][v] = -sum_k D[u][k] s_i[k][v]
                for k in range(n_i):
                    coeff = D.entries[u][k]
                    if coeff != z:
                        sidx = s_off[i] + k * n_i + v
                        cols[sidx][fidx] = cols[sidx][fidx] - coeff
    return Matrix.from_columns(dom, f_total, cols)


def nullhomotopic_space(c: Complex) -> list[GradedMap]:
    """Deterministic basis of {sD - Ds}: the tangent space to the orbit of
    D.  Basis vectors are the pivot columns of the homotopy map."""
    theta = _homotopy_matrix(c)
    _, pivots = rref(theta)
    return [_unpack_degree1(c.dims, c.domain, theta.column(j)) for j in pivots]


def stabilizer_dim(c: Complex) -> int:
    """Dimension of the Lie algebra of the stabilizer of D: degree-0 maps s
    with s_{i+1} D_i = D_i s_i."""
    theta = _homotopy_matrix(c)
    _, s_total = _s_offsets(c.dims)
    return s_total - rank(theta)


def orbit_dim(c: Complex) -> int:
    return rank(_homotopy_matrix(c))


def assemble_D_delta(c: Complex, delta):
    """Extend a degree-1 graded map delta on the cohomology of c to a
    differential-shaped map on the whole space: in the splitting basis the
    acyclic block of D is kept and delta is written on the cohomology
    block, then everything is conjugated back.

    delta may be a GradedMap of degree 1 on the cohomology dims, or a list
    of h_{i+1} x h_i matrices.  Returns a Complex when delta squares to
    zero, otherwise the assembled GradedMap of degree 1.
    """
    dims, dom = c.dims, c.domain
    m = dims.m
    full, B, Binv = _adapted_bases(c)
    h = [dims[i] - full[i] - full[i + 1] for i in range(m + 1)]
    if isinstance(delta, GradedMap):
        dcomps = list(delta.components[:m])
    else:
        dcomps = list(delta)
    if len(dcomps) < m:
        raise ValueError(f"expected {m} delta components, got {len(dcomps)}")
    for i in range(m):
        d = dcomps[i]
        if d.rows != h[i + 1] or d.cols != h[i]:
            raise ValueError(
                f"delta component {i} has shape {d.rows}x{d.cols}, "
                f"expected {h[i + 1]}x{h[i]}")

    assembled = []
    for i in range(m):
        rows, cols = dims[i + 1], dims[i]
        grid = [[dom.zero] * cols for _ in range(rows)]
        for k in range(full[i + 1]):           # canonical acyclic block
            grid[k][full[i] + k] = dom.one
        roff = full[i + 1] + full[i + 2]
        coff = full[i] + full[i + 1]
        for a in range(h[i + 1]):
            for b in range(h[i]):
                grid[roff + a][coff + b] = dcomps[i].entries[a][b]
        block = Matrix(dom, rows, cols, grid)
        assembled.append(B[i + 1] @ block @ Binv[i])

    square_ok = all((dcomps[i + 1] @ dcomps[i]).is_zero() for i in range(m - 1))
    if square_ok:
        return Complex(dims, assembled)
    comps = assembled + [Matrix.zeros(dom, 0, dims[m])]
    return GradedMap(dims, 1, comps)


def chart_jacobian_rank(c: Complex) -> int:
    """Rank at (1, 0) of the differential of (g, delta) |-> g . D_delta:
    the combined linear map (s, delta) |-> (sD - Ds) + eta(delta), where
    eta embeds degree-1 maps on the cohomology through the splitting
    basis.  Equals orbit dimension + sum_i h_i h_{i+1}."""
    dims, dom = c.dims, c.domain
    m = dims.m
    theta = _homotopy_matrix(c)
    full, B, Binv = _adapted_bases(c)
    h = [dims[i] - full[i] - full[i + 1] for i in range(m + 1)]
    f_off, f_total = _f_offsets(dims)
    eta_cols = []
    for i in range(m):
        roff = full[i + 1] + full[i + 2]
        coff = full[i] + full[i + 1]
        for a in range(h[i + 1]):
            for b in range(h[i]):
                col = [dom.zero] * f_total
                # eta(E_ab) = B_{i+1} E_ab Binv_i: an outer product of the
                # (roff+a)-th basis column with the (coff+b)-th inverse row.
                for u in range(dims[i + 1]):
                    cu = B[i + 1].entries[u][roff + a]
                    if cu == dom.zero:
                        continue
                    for v in range(dims[i]):
                        cv = Binv[i].entries[coff + b][v]
                        if cv != dom.zero:
                            col[f_off[i] + u * dims[i] + v] = cu * cv
                eta_cols.append(col)
    combined = theta.hstack(Matrix.from_columns(dom, f_total, eta_cols))
    return rank(combined)
