"""Exact rational dense matrix kernel.

Entries are ``fractions.Fraction`` values (plain ints are accepted as exact
rationals; they mix freely under arithmetic).  Every elimination picks the
first usable pivot in row/column order, so ranks, kernels, cokernels and
idempotent splittings are bit-identical across runs and platforms.

A CLI-only float mode replaces exact zero tests by a threshold; see
:class:`tolerance`.  The default is exact comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, NotIdempotent, NotInvertible

_EPS = None  # None = exact mode; a float threshold in CLI float mode


class tolerance:
    """Context manager for the CLI float mode; not used by the test suite."""

    def __init__(self, eps):
        self.eps = eps
        self._saved = None

    def __enter__(self):
        global _EPS
        self._saved = _EPS
        _EPS = self.eps
        return self

    def __exit__(self, *exc):
        global _EPS
        _EPS = self._saved
        return False


def is_zero(x):
    if _EPS is None:
        return x == 0
    return abs(x) <= _EPS


def _reciprocal(x):
    # keeps int entries exact: 1/int would be a float
    if isinstance(x, int):
        return Fraction(1, x)
    return 1 / x


class Mat:
    """Immutable dense matrix, row-major tuple-of-tuples storage."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows, cols, data):
        data = tuple(tuple(row) for row in data)
        if len(data) != rows or any(len(row) != cols for row in data):
            raise DimensionMismatch(f"bad shape for {rows}x{cols} matrix")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "data", data)

    def __setattr__(self, *a):
        raise AttributeError("Mat is immutable")

    @staticmethod
    def zeros(rows, cols):
        return Mat(rows, cols, [[0] * cols for _ in range(rows)])

    @staticmethod
    def identity(n):
        return Mat(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def from_rows(rows):
        rows = [list(r) for r in rows]
        return Mat(len(rows), len(rows[0]) if rows else 0, rows)

    @staticmethod
    def column(values):
        return Mat(len(values), 1, [[v] for v in values])

    @staticmethod
    def from_entries(rows, cols, entries):
        """Build from a {(i, j): value} dict; omitted entries are zero."""
        grid = [[0] * cols for _ in range(rows)]
        for (i, j), v in entries.items():
            grid[i][j] = v
        return Mat(rows, cols, grid)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and all(
                self.data[i][j] == other.data[i][j]
                for i in range(self.rows)
                for j in range(self.cols)
            )
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self):
        return f"Mat({self.rows}x{self.cols})"

    def pretty(self):
        return "\n".join(
            " ".join(str(Fraction(v)) if v else "." for v in row) for row in self.data
        )

    def __add__(self, other):
        self._same_shape(other)
        return Mat(
            self.rows,
            self.cols,
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.data, other.data)
            ],
        )

    def __sub__(self, other):
        self._same_shape(other)
        return Mat(
            self.rows,
            self.cols,
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.data, other.data)
            ],
        )

    def __neg__(self):
        return Mat(self.rows, self.cols, [[-a for a in row] for row in self.data])

    def scale(self, c):
        return Mat(self.rows, self.cols, [[c * a for a in row] for row in self.data])

    def _same_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionMismatch(
                f"{self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def __matmul__(self, other):
        return mul(self, other)

    def transpose(self):
        return Mat(
            self.cols,
            self.rows,
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
        )

    def is_zero_mat(self):
        return all(is_zero(v) for row in self.data for v in row)

    def column_mat(self, js):
        """Submatrix made of the listed columns, in the given order."""
        return Mat(
            self.rows, len(js), [[row[j] for j in js] for row in self.data]
        )


def mul(a: Mat, b: Mat) -> Mat:
    """Exact product a*b, skipping zero entries of a."""
    if a.cols != b.rows:
        raise DimensionMismatch(f"{a.rows}x{a.cols} @ {b.rows}x{b.cols}")
    out = []
    for arow in a.data:
        acc = [0] * b.cols
        for k, aik in enumerate(arow):
            if aik == 0:
                continue
            brow = b.data[k]
            for j, bkj in enumerate(brow):
                if bkj != 0:
                    acc[j] += aik * bkj
        out.append(acc)
    return Mat(a.rows, b.cols, out)


def kron(a: Mat, b: Mat) -> Mat:
    """Kronecker product; the left factor is most significant in index order."""
    rows, cols = a.rows * b.rows, a.cols * b.cols
    grid = [[0] * cols for _ in range(rows)]
    for i1, arow in enumerate(a.data):
        for j1, av in enumerate(arow):
            if av == 0:
                continue
            roff, coff = i1 * b.rows, j1 * b.cols
            for i2, brow in enumerate(b.data):
                for j2, bv in enumerate(brow):
                    if bv != 0:
                        grid[roff + i2][coff + j2] = av * bv
    return Mat(rows, cols, grid)


def rref(m: Mat):
    """Reduced row echelon form with first-nonzero pivoting.

    Returns (R, pivots) where pivots is the tuple of pivot column indices.
    """
    rows = [list(r) for r in m.data]
    nrows, ncols = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for k in range(r, nrows):
            if not is_zero(rows[k][c]):
                pr = k
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = _reciprocal(rows[r][c])
        rows[r] = [inv * v for v in rows[r]]
        for k in range(nrows):
            if k != r and not is_zero(rows[k][c]):
                f = rows[k][c]
                rows[k] = [v - f * w for v, w in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return Mat(nrows, ncols, rows), tuple(pivots)


def rank(m: Mat) -> int:
    return len(rref(m)[1])


@dataclass(frozen=True)
class Splitting:
    """Factorization of an idempotent e as i*p with p*i = identity."""

    p: Mat  # r x n
    i: Mat  # n x r
    rank: int


def split_idempotent(e: Mat) -> Splitting:
    """Split e = i*p through the rank; pivot columns of e give the basis."""
    if e.rows != e.cols:
        raise DimensionMismatch("idempotent must be square")
    if not (mul(e, e) - e).is_zero_mat():
        raise NotIdempotent("e*e != e")
    red, pivots = rref(e)
    r = len(pivots)
    i = e.column_mat(list(pivots))
    p = Mat(r, e.cols, red.data[:r])
    # rank factorization of an idempotent: i*p = e forces p*i = identity
    if not (mul(p, i) - Mat.identity(r)).is_zero_mat():
        raise NotIdempotent("rank factorization did not split")
    if not (mul(i, p) - e).is_zero_mat():
        raise NotIdempotent("rank factorization does not recompose e")
    return Splitting(p=p, i=i, rank=r)


def kernel_basis(m: Mat) -> Mat:
    """Columns form the echelon-derived null space basis (free variable = 1)."""
    red, pivots = rref(m)
    pivset = set(pivots)
    free = [c for c in range(m.cols) if c not in pivset]
    cols = []
    for f in free:
        v = [0] * m.cols
        v[f] = 1
        for r, c in enumerate(pivots):
            v[c] = -red.data[r][f]
        cols.append(v)
    return Mat(m.cols, len(free), [[col[i] for col in cols] for i in range(m.cols)])


def cokernel_projection(m: Mat):
    """Surjection proj with proj*m = 0 and rank(proj) = rows - rank(m).

    The rows of proj are the echelon-derived left null space basis, i.e. the
    deterministic complement of the row space through non-pivot rows.
    """
    basis = kernel_basis(m.transpose())
    proj = basis.transpose()
    return proj, proj.rows


def invert(m: Mat) -> Mat:
    """Exact inverse via Gauss-Jordan; raises NotInvertible with the rank."""
    if m.rows != m.cols:
        raise NotInvertible(min(m.rows, m.cols), dims=(m.rows, m.cols))
    n = m.rows
    aug = Mat(n, 2 * n, [list(row) + [1 if i == j else 0 for j in range(n)]
                         for i, row in enumerate(m.data)])
    red, pivots = rref(aug)
    lead = [c for c in pivots if c < n]
    if len(lead) < n:
        raise NotInvertible(len(lead), dims=(n, n))
    return Mat(n, n, [row[n:] for row in red.data])


def solve(a: Mat, b: Mat):
    """Deterministic particular solution X of a*X = b, or None if inconsistent.

    Free variables are set to 0, so the result only depends on the input.
    """
    if a.rows != b.rows:
        raise DimensionMismatch("solve: row counts differ")
    aug = Mat(a.rows, a.cols + b.cols,
              [list(ra) + list(rb) for ra, rb in zip(a.data, b.data)])
    red, pivots = rref(aug)
    if any(c >= a.cols for c in pivots):
        return None
    x = [[0] * b.cols for _ in range(a.cols)]
    for r, c in enumerate(pivots):
        for j in range(b.cols):
            x[c][j] = red.data[r][a.cols + j]
    return Mat(a.cols, b.cols, x)


def section(m: Mat):
    """Right inverse s with m*s = identity, or None if m is not surjective."""
    return solve(m, Mat.identity(m.rows))


def same_column_span(a: Mat, b: Mat) -> bool:
    """True when the column spaces of a and b coincide."""
    if a.rows != b.rows:
        raise DimensionMismatch("span comparison needs equal ambient dimension")
    ra, rb = rank(a), rank(b)
    if ra != rb:
        return False
    joined = Mat(a.rows, a.cols + b.cols,
                 [list(x) + list(y) for x, y in zip(a.data, b.data)])
    return rank(joined) == ra
