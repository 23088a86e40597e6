"""Dense exact matrices and the elimination kernels everything else uses.

All basis-producing operations follow one deterministic convention: pivots
are the first nonzero entry in column order, kernel vectors set the free
coordinate to 1 in ascending index order, complements are grown greedily
over standard basis vectors.  Reproducibility of these choices is what
later makes spectral-sequence pages canonical objects with decidable
equality.
"""

from __future__ import annotations

from fractions import Fraction

from .rings import LOCAL, QQ, Domain, RatFun


class Matrix:
    """Immutable rectangular matrix with entries in a single domain."""

    __slots__ = ("domain", "rows", "cols", "entries")

    def __init__(self, domain: Domain, rows: int, cols: int, entries):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        grid = [[domain.coerce(x) for x in row] for row in entries]
        if len(grid) != rows or any(len(r) != cols for r in grid):
            raise ValueError(f"entries do not form a {rows}x{cols} grid")
        self.domain = domain
        self.rows = rows
        self.cols = cols
        self.entries = tuple(tuple(r) for r in grid)

    @classmethod
    def zeros(cls, domain: Domain, rows: int, cols: int) -> "Matrix":
        z = domain.zero
        return cls(domain, rows, cols, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, domain: Domain, n: int) -> "Matrix":
        z, o = domain.zero, domain.one
        return cls(domain, n, n,
                   [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, domain: Domain, nrows: int, columns) -> "Matrix":
        columns = list(columns)
        return cls(domain, nrows, len(columns),
                   [[col[i] for col in columns] for i in range(nrows)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i):
        return list(self.entries[i])

    def column(self, j):
        return [self.entries[i][j] for i in range(self.rows)]

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def is_zero(self) -> bool:
        z = self.domain.zero
        return all(x == z for row in self.entries for x in row)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.domain == other.domain
                and self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.domain, self.entries))

    def __add__(self, other):
        self._same_shape(other)
        return Matrix(self.domain, self.rows, self.cols,
                      [[a + b for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.entries, other.entries)])

    def __sub__(self, other):
        self._same_shape(other)
        return Matrix(self.domain, self.rows, self.cols,
                      [[a - b for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.entries, other.entries)])

    def __neg__(self):
        return Matrix(self.domain, self.rows, self.cols,
                      [[-a for a in row] for row in self.entries])

    def scale(self, c) -> "Matrix":
        c = self.domain.coerce(c)
        return Matrix(self.domain, self.rows, self.cols,
                      [[c * a for a in row] for row in self.entries])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.domain != other.domain:
            raise TypeError(f"domain mismatch {self.domain} @ {other.domain}")
        if self.cols != other.rows:
            raise ValueError(
                f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        z = self.domain.zero
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = z
                for k in range(self.cols):
                    a = self.entries[i][k]
                    if a != z:
                        acc = acc + a * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return Matrix(self.domain, self.rows, other.cols, out)

    def apply(self, vec):
        z = self.domain.zero
        out = []
        for i in range(self.rows):
            acc = z
            for k in range(self.cols):
                a = self.entries[i][k]
                if a != z:
                    acc = acc + a * vec[k]
            out.append(acc)
        return out

    def transpose(self) -> "Matrix":
        return Matrix(self.domain, self.cols, self.rows,
                      [[self.entries[i][j] for i in range(self.rows)]
                       for j in range(self.cols)])

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows or self.domain != other.domain:
            raise ValueError("hstack shape/domain mismatch")
        return Matrix(self.domain, self.rows, self.cols + other.cols,
                      [list(a) + list(b)
                       for a, b in zip(self.entries, other.entries)])

    def submatrix(self, row_idx, col_idx) -> "Matrix":
        return Matrix(self.domain, len(row_idx), len(col_idx),
                      [[self.entries[i][j] for j in col_idx] for i in row_idx])

    def map_entries(self, fn, domain: Domain | None = None) -> "Matrix":
        dom = domain or self.domain
        return Matrix(dom, self.rows, self.cols,
                      [[fn(x) for x in row] for row in self.entries])

    def _same_shape(self, other):
        if (self.domain != other.domain or self.rows != other.rows
                or self.cols != other.cols):
            raise ValueError("matrix shape/domain mismatch")

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.entries)
        return f"Matrix({self.domain}, {self.rows}x{self.cols}, [{body}])"


def _require_field(M: Matrix, op: str):
    if not M.domain.is_field:
        raise TypeError(f"{op} needs field entries, got {M.domain}; "
                        "use the valuation-aware local-ring routines")


def _rref(grid, rows, cols, zero):
    """In-place reduced row echelon form; returns pivot column list.

    Pivot choice: for each column left to right, the first row (top to
    bottom among unused rows) with a nonzero entry.
    """
    pivots = []
    r = 0
    for j in range(cols):
        if r == rows:
            break
        sel = None
        for i in range(r, rows):
            if grid[i][j] != zero:
                sel = i
                break
        if sel is None:
            continue
        grid[r], grid[sel] = grid[sel], grid[r]
        inv = grid[r][j]
        grid[r] = [x / inv for x in grid[r]]
        for i in range(rows):
            if i != r and grid[i][j] != zero:
                c = grid[i][j]
                grid[i] = [a - c * b for a, b in zip(grid[i], grid[r])]
        pivots.append(j)
        r += 1
    return pivots


def rref(M: Matrix):
    """Reduced row echelon form and pivot columns (deterministic)."""
    _require_field(M, "rref")
    grid = [list(row) for row in M.entries]
    pivots = _rref(grid, M.rows, M.cols, M.domain.zero)
    return Matrix(M.domain, M.rows, M.cols, grid), pivots


def _bareiss_rank(int_grid, rows, cols) -> int:
    """Fraction-free (Bareiss) elimination on an integer grid."""
    g = [row[:] for row in int_grid]
    rank = 0
    prev = 1
    r = 0
    for j in range(cols):
        if r == rows:
            break
        sel = None
        for i in range(r, rows):
            if g[i][j] != 0:
                sel = i
                break
        if sel is None:
            continue
        g[r], g[sel] = g[sel], g[r]
        piv = g[r][j]
        for i in range(r + 1, rows):
            gi, gr = g[i], g[r]
            ci = gi[j]
            for k in range(j, cols):
                gi[k] = (piv * gi[k] - ci * gr[k]) // prev
        prev = piv
        rank += 1
        r += 1
    return rank


def rank(M: Matrix) -> int:
    """Rank of a matrix over a field.

    Over Q the rows are cleared to integers and eliminated fraction-free;
    over a prime field ordinary elimination is used.
    """
    _require_field(M, "rank")
    if M.rows == 0 or M.cols == 0:
        return 0
    if M.domain == QQ:
        int_grid = []
        for row in M.entries:
            lcm = 1
            for x in row:
                lcm = lcm * x.denominator // _gcd(lcm, x.denominator)
            int_grid.append([int(x * lcm) for x in row])
        return _bareiss_rank(int_grid, M.rows, M.cols)
    return len(rref(M)[1])


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def kernel_basis(M: Matrix) -> Matrix:
    """Columns form the deterministic basis of ker M.

    Free columns of the RREF, taken in ascending index order, each give a
    basis vector with a 1 in the free coordinate.
    """
    _require_field(M, "kernel_basis")
    R, pivots = rref(M)
    pivot_set = set(pivots)
    free = [j for j in range(M.cols) if j not in pivot_set]
    z, o = M.domain.zero, M.domain.one
    cols = []
    for f in free:
        v = [z] * M.cols
        v[f] = o
        for k, p in enumerate(pivots):
            v[p] = -R.entries[k][f]
        cols.append(v)
    return Matrix.from_columns(M.domain, M.cols, cols)


def solve(M: Matrix, b):
    """A solution x of Mx = b, or None if inconsistent.

    Deterministic: free variables are set to zero.
    """
    _require_field(M, "solve")
    if len(b) != M.rows:
        raise ValueError("right-hand side length mismatch")
    aug = Matrix(M.domain, M.rows, M.cols + 1,
                 [list(row) + [b[i]] for i, row in enumerate(M.entries)])
    R, pivots = rref(aug)
    if M.cols in pivots:
        return None
    z = M.domain.zero
    x = [z] * M.cols
    for k, p in enumerate(pivots):
        x[p] = R.entries[k][M.cols]
    return x

def solve_matrix(M: Matrix, B: Matrix):
    """Solve MX = B column by column; None if any column is inconsistent."""
    if M.rows != B.rows:
        raise ValueError("row mismatch in solve_matrix")
    aug = M.hstack(B)
    R, pivots = rref(aug)
    if pivots and pivots[-1] >= M.cols:
        return None
    z = M.domain.zero
    out = [[z] * B.cols for _ in range(M.cols)]
    for k, p in enumerate(pivots):
        for j in range(B.cols):
            out[p][j] = R.entries[k][M.cols + j]
    return Matrix(M.domain, M.cols, B.cols, out)


def inverse(M: Matrix) -> Matrix:
    _require_field(M, "inverse")
    if M.rows != M.cols:
        raise ValueError("inverse of a non-square matrix")
    aug = M.hstack(Matrix.identity(M.domain, M.rows))
    R, pivots = rref(aug)
    if pivots != list(range(M.rows)):
        raise ValueError("matrix is singular")
    return R.submatrix(range(M.rows), range(M.rows, 2 * M.rows))


class _IndependenceTracker:
    """Incremental rank oracle: feed candidate vectors, keep the independent
    ones.  Maintains its own RREF of the accepted set."""

    def __init__(self, domain: Domain, dim: int):
        self.domain = domain
        self.dim = dim
        self.rows = []          # rref rows of accepted vectors
        self.pivots = []

    def try_add(self, vec) -> bool:
        z = self.domain.zero
        v = [self.domain.coerce(x) for x in vec]
        for row, p in zip(self.rows, self.pivots):
            if v[p] != z:
                c = v[p]
                v = [a - c * b for a, b in zip(v, row)]
        piv = None
        for j in range(self.dim):
            if v[j] != z:
                piv = j
                break
        if piv is None:
            return False
        v = [x / v[piv] for x in v]
        for k in range(len(self.rows)):
            if self.rows[k][piv] != z:
                c = self.rows[k][piv]
                self.rows[k] = [a - c * b for a, b in zip(self.rows[k], v)]
        self.rows.append(v)
        self.pivots.append(piv)
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


def extend_columns(domain: Domain, dim: int, base_cols, candidates):
    """Greedily extend base_cols by candidates that increase the rank.

    Returns the accepted candidates in input order.  base_cols must be
    independent.
    """
    tracker = _IndependenceTracker(domain, dim)
    for col in base_cols:
        if not tracker.try_add(col):
            raise ValueError("dependent base columns")
    accepted = []
    for col in candidates:
        if tracker.try_add(col):
            accepted.append([domain.coerce(x) for x in col])
    return accepted


def complement_basis(sub: Matrix, ambient_dim: int) -> Matrix:
    """Greedy complement of the column span of sub inside k^ambient_dim,
    built from standard basis vectors in index order."""
    _require_field(sub, "complement_basis")
    if sub.rows != ambient_dim:
        raise ValueError("ambient dimension mismatch")
    z, o = sub.domain.zero, sub.domain.one
    std = []
    for j in range(ambient_dim):
        e = [z] * ambient_dim
        e[j] = o
        std.append(e)
    chosen = extend_columns(sub.domain, ambient_dim, sub.columns(), std)
    return Matrix.from_columns(sub.domain, ambient_dim, chosen)


# ---------------------------------------------------------------------------
# Valuation-aware elimination over the local ring at t = 0.

def local_rank(M: Matrix) -> int:
    """Rank over the fraction field Q(t), computed without leaving the
    local ring: pivots of minimal t-adic valuation make every elimination
    quotient regular at 0."""
    if M.domain != LOCAL:
        raise TypeError("local_rank expects local-ring entries")
    return len(local_pivot_elimination(M)[1])


def local_pivot_elimination(M: Matrix):
    """Eliminate with minimal-valuation pivoting.

    Returns (pivot_entries, pivot_positions): the pivot scalars seen (in
    order) and their (row, col) positions in the original matrix.  Row and
    column indices are retired as pivots are chosen.
    """
    grid = [list(row) for row in M.entries]
    live_rows = list(range(M.rows))
    live_cols = list(range(M.cols))
    pivot_entries = []
    pivot_positions = []
    while live_rows and live_cols:
        best = None
        best_val = None
        for i in live_rows:
            for j in live_cols:
                x = grid[i][j]
                if x.is_zero():
                    continue
                v = x.valuation()
                if best_val is None or v < best_val:
                    best, best_val = (i, j), v
        if best is None:
            break
        pi, pj = best
        piv = grid[pi][pj]
        pivot_entries.append(piv)
        pivot_positions.append((pi, pj))
        for i in live_rows:
            if i == pi or grid[i][pj].is_zero():
                continue
            c = grid[i][pj] / piv      # val >= 0 by pivot minimality
            for j in live_cols:
                grid[i][j] = grid[i][j] - c * grid[pi][j]
        live_rows.remove(pi)
        live_cols.remove(pj)
    return pivot_entries, pivot_positions


def local_inverse(M: Matrix) -> Matrix:
    """Inverse of a local-ring matrix whose determinant is a unit.

    Gauss-Jordan with minimal-valuation pivoting; all pivots come out with
    valuation 0, so every entry of the inverse is regular at t = 0.
    """
    if M.domain != LOCAL:
        raise TypeError("local_inverse expects local-ring entries")
    n = M.rows
    if n != M.cols:
        raise ValueError("inverse of a non-square matrix")
    grid = [list(row) + [RatFun(1) if i == j else RatFun(0) for j in range(n)]
            for i, row in enumerate(M.entries)]
    used_rows: list[int] = []
    col_of_row = {}
    remaining_rows = list(range(n))
    remaining_cols = list(range(n))
    while remaining_cols:
        best = None
        best_val = None
        for i in remaining_rows:
            for j in remaining_cols:
                x = grid[i][j]
                if x.is_zero():
                    continue
                v = x.valuation()
                if best_val is None or v < best_val:
                    best, best_val = (i, j), v
        if best is None or best_val != 0:
            raise ValueError("matrix is not invertible at t = 0")
        pi, pj = best
        piv = grid[pi][pj]
        grid[pi] = [x / piv for x in grid[pi]]
        for i in range(n):
            if i != pi and not grid[i][pj].is_zero():
                c = grid[i][pj]
                grid[i] = [a - c * b for a, b in zip(grid[i], grid[pi])]
        used_rows.append(pi)
        col_of_row[pi] = pj
        remaining_rows.remove(pi)
        remaining_cols.remove(pj)
    out = [[None] * n for _ in range(n)]
    for i in used_rows:
        out[col_of_row[i]] = grid[i][n:]
    return Matrix(LOCAL, n, n, out)


def local_from_rational(M: Matrix) -> Matrix:
    if M.domain != QQ:
        raise TypeError("expected a rational matrix")
    return M.map_entries(RatFun, LOCAL)


def local_at_zero(M: Matrix) -> Matrix:
    """Evaluate a local-ring matrix at t = 0 (always defined)."""
    if M.domain != LOCAL:
        raise TypeError("expected a local-ring matrix")
    return M.map_entries(lambda x: x.at_zero(), QQ)


def local_eval(M: Matrix, point: Fraction) -> Matrix:
    """Evaluate at a rational point where no denominator vanishes."""
    if M.domain != LOCAL:
        raise TypeError("expected a local-ring matrix")
    return M.map_entries(lambda x: x(point), QQ)
