"""Exact linear algebra over the rationals.

Everything here works with :class:`fractions.Fraction` entries, so no
result is ever rounded.  The three primitives the rest of the package
leans on are :func:`kernel`, :func:`solve` and :func:`rank`; they all
go through a single reduced-row-echelon routine.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Scalar = Fraction


class NoSolution(ValueError):
    """Raised by :func:`solve` when the right-hand side is not in the column space."""


def to_scalar(value) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError("floating point values are not accepted; pass 'p/q' strings")
    return Fraction(value)


def format_scalar(x: Fraction) -> str:
    x = to_scalar(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_scalar(text) -> Fraction:
    return to_scalar(text)


class Matrix:
    """Immutable dense matrix of Fractions.

    Zero-row and zero-column shapes are legal; they stand for the zero map
    into or out of the zero space.
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, entries: Iterable[Iterable] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimension")
        if entries is None:
            data = tuple((Fraction(0),) * cols for _ in range(rows))
        else:
            data = tuple(tuple(to_scalar(x) for x in row) for row in entries)
            if len(data) != rows or any(len(r) != cols for r in data):
                raise ValueError(f"entries do not match shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self._data = data

    # construction helpers
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = list(rows)
        if not rows:
            return cls(0, cols or 0)
        return cls(len(rows), len(rows[0]), rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Matrix":
        columns = list(columns)
        return cls(rows, len(columns), [[c[i] for c in columns] for i in range(rows)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    # access
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, idx):
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self._data)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.cols)]

    def to_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def to_json(self) -> list[list[str]]:
        return [[format_scalar(x) for x in r] for r in self._data]

    @classmethod
    def from_json(cls, rows, nrows: int | None = None, ncols: int | None = None) -> "Matrix":
        if not rows:
            return cls(nrows or 0, ncols or 0)
        return cls(len(rows), len(rows[0]), rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_scalar(x) for x in r) for r in self._data)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    # arithmetic
    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = other.columns()
        out = []
        for r in self._data:
            nz = [(k, a) for k, a in enumerate(r) if a]
            out.append([sum((a * c[k] for k, a in nz), Fraction(0)) for c in ocols])
        return Matrix(self.rows, other.cols, out)

    def apply(self, vec: Sequence) -> list[Fraction]:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        nz = [(k, to_scalar(v)) for k, v in enumerate(vec) if v]
        return [sum((r[k] * v for k, v in nz), Fraction(0)) for r in self._data]

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch in addition")
        return Matrix(self.rows, self.cols,
                      [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, c) -> "Matrix":
        c = to_scalar(c)
        return Matrix(self.rows, self.cols, [[c * a for a in r] for r in self._data])

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, [self.column(j) for j in range(self.cols)])

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def is_zero(self) -> bool:
        return all(not x for r in self._data for x in r)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(len(rows), len(cols), [[self._data[i][j] for j in cols] for i in rows])


def hstack(blocks: Sequence[Matrix], rows: int | None = None) -> Matrix:
    blocks = list(blocks)
    if not blocks:
        return Matrix(rows or 0, 0)
    n = blocks[0].rows
    if any(b.rows != n for b in blocks):
        raise ValueError("hstack needs equal row counts")
    return Matrix(n, sum(b.cols for b in blocks),
                  [sum((b.row(i) for b in blocks), ()) for i in range(n)])


def vstack(blocks: Sequence[Matrix], cols: int | None = None) -> Matrix:
    blocks = list(blocks)
    if not blocks:
        return Matrix(0, cols or 0)
    m = blocks[0].cols
    if any(b.cols != m for b in blocks):
        raise ValueError("vstack needs equal column counts")
    rows = [r for b in blocks for r in b.to_lists()]
    return Matrix(len(rows), m, rows)


def block_diag(blocks: Sequence[Matrix]) -> Matrix:
    blocks = list(blocks)
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = [[Fraction(0)] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                out[r0 + i][c0 + j] = b[i, j]
        r0 += b.rows
        c0 += b.cols
    return Matrix(rows, cols, out)


def _rref_lists(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """In-place reduced row echelon form on a list of rows; returns (rows, pivots)."""
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r >= nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        inv = 1 / prow[c]
        if inv != 1:
            prow = [x * inv for x in prow]
            rows[r] = prow
        nz = [k for k in range(c, ncols) if prow[k]]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    row_i = rows[i]
                    for k in nz:
                        row_i[k] -= f * prow[k]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rref(M: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form with the zero rows dropped, plus pivot columns."""
    rows, piv = _rref_lists(M.to_lists(), M.cols)
    return Matrix(len(rows), M.cols, rows), piv


def rank(M: Matrix) -> int:
    return len(_rref_lists(M.to_lists(), M.cols)[1])


def _kernel_from_rref(rows: list[list[Fraction]], pivots: list[int], ncols: int) -> list[list[Fraction]]:
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row, p in zip(rows, pivots):
            v[p] = -row[free]
        basis.append(v)
    return basis


def kernel_vectors(M: Matrix) -> list[list[Fraction]]:
    rows, piv = _rref_lists(M.to_lists(), M.cols)
    return _kernel_from_rref(rows, piv, M.cols)


def kernel(M: Matrix) -> Matrix:
    """Matrix whose columns form a basis of the null space of ``M``."""
    return Matrix.from_columns(kernel_vectors(M), M.cols)


def solve(A: Matrix, b: Sequence) -> tuple[list[Fraction], Matrix]:
    """One solution ``x`` of ``A x = b`` and a kernel basis of ``A``.

    Raises NoSolution when ``b`` is outside the column space.
    """
    b = [to_scalar(x) for x in b]
    if len(b) != A.rows:
        raise ValueError("right-hand side length does not match rows")
    aug = [list(r) + [bi] for r, bi in zip(A.to_lists(), b)]
    rows, piv = _rref_lists(aug, A.cols + 1)
    if piv and piv[-1] == A.cols:
        raise NoSolution("right-hand side is not in the column space")
    x = [Fraction(0)] * A.cols
    for row, p in zip(rows, piv):
        x[p] = row[A.cols]
    coeff_rows = [r[:A.cols] for r in rows]
    return x, Matrix.from_columns(_kernel_from_rref(coeff_rows, piv, A.cols), A.cols)


def inverse(M: Matrix) -> Matrix:
    if M.rows != M.cols:
        raise ValueError("only square matrices can be inverted")
    n = M.rows
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(M.to_lists())]
    rows, piv = _rref_lists(aug, 2 * n)
    if piv[:n] != list(range(n)) or len(rows) < n:
        raise ZeroDivisionError("matrix is singular")
    return Matrix(n, n, [r[n:] for r in rows])


def is_invertible(M: Matrix) -> bool:
    return M.rows == M.cols and rank(M) == M.rows


def row_space_basis(vectors: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Echelon basis for the span of ``vectors``."""
    rows, _ = _rref_lists([[to_scalar(x) for x in v] for v in vectors], ncols)
    return rows


def span_rank(vectors: Sequence[Sequence], ncols: int) -> int:
    return len(row_space_basis(vectors, ncols))


def complement_basis(vectors: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Standard basis vectors completing span(vectors) to the whole space."""
    _, piv = _rref_lists([[to_scalar(x) for x in v] for v in vectors], ncols)
    pivset = set(piv)
    out = []
    for j in range(ncols):
        if j not in pivset:
            e = [Fraction(0)] * ncols
            e[j] = Fraction(1)
            out.append(e)
    return out


def in_span(vectors: Sequence[Sequence], v: Sequence, ncols: int) -> bool:
    base = span_rank(vectors, ncols)
    return span_rank(list(vectors) + [v], ncols) == base


def intersect_spans(a: Sequence[Sequence], b: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of span(a) ∩ span(b)."""
    a = row_space_basis(a, ncols)
    b = row_space_basis(b, ncols)
    if not a or not b:
        return []
    # solve sum x_i a_i - sum y_j b_j = 0
    cols = [list(v) for v in a] + [[-x for x in v] for v in b]
    K = kernel_vectors(Matrix.from_columns(cols, ncols))
    out = []
    for k in K:
        w = [Fraction(0)] * ncols
        for coeff, v in zip(k[:len(a)], a):
            if coeff:
                for t in range(ncols):
                    w[t] += coeff * v[t]
        out.append(w)
    return row_space_basis(out, ncols)


def coordinates(basis: Sequence[Sequence], v: Sequence, ncols: int) -> list[Fraction]:
    """Coordinates of ``v`` in the (independent) list ``basis``; NoSolution if outside."""
    A = Matrix.from_columns([list(b) for b in basis], ncols)
    x, _ = solve(A, v)
    return x
