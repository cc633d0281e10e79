"""Exact rational sparse linear algebra.

Matrices follow the usual convention: a map V -> W with dim V = n and
dim W = m is an m x n matrix whose column j holds the image of basis vector j.
Vectors handed back to callers are tuples of Fractions.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import CompositionNotZero, DimensionMismatch, SingularMatrix

ExactScalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def to_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class FreeSpace:
    """A vector space with an ordered basis of distinct string labels."""

    labels: tuple

    def __post_init__(self):
        labels = tuple(str(s) for s in self.labels)
        if len(set(labels)) != len(labels):
            raise ValueError(f"basis labels are not unique: {labels}")
        object.__setattr__(self, "labels", labels)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(label) from None

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)


class SparseMatrix:
    """Immutable sparse matrix with Fraction entries, stored row by row."""

    __slots__ = ("rows", "cols", "_rows")

    def __init__(self, rows: int, cols: int, entries: Mapping | Iterable = ()):
        self.rows = rows
        self.cols = cols
        data: dict[int, dict[int, Fraction]] = {}
        items = entries.items() if isinstance(entries, Mapping) else entries
        for (r, c), value in items:
            if not (0 <= r < rows and 0 <= c < cols):
                raise DimensionMismatch(f"entry ({r}, {c}) outside {rows}x{cols}")
            value = to_fraction(value)
            if value:
                row = data.setdefault(r, {})
                total = row.get(c, ZERO) + value
                if total:
                    row[c] = total
                else:
                    del row[c]
                    if not row:
                        del data[r]
        self._rows = data

    @classmethod
    def _from_rows(cls, rows, cols, row_dicts):
        m = cls.__new__(cls)
        m.rows = rows
        m.cols = cols
        m._rows = {r: d for r, d in row_dicts.items() if d}
        return m

    @classmethod
    def zeros(cls, rows, cols):
        return cls._from_rows(rows, cols, {})

    @classmethod
    def identity(cls, n):
        return cls._from_rows(n, n, {i: {i: ONE} for i in range(n)})

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence], cols: int | None = None):
        rows = len(dense)
        if cols is None:
            cols = len(dense[0]) if rows else 0
        entries = {}
        for r, row in enumerate(dense):
            if len(row) != cols:
                raise DimensionMismatch("ragged dense matrix")
            for c, v in enumerate(row):
                if v:
                    entries[(r, c)] = v
        return cls(rows, cols, entries)

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Mapping[int, Fraction]]):
        data: dict[int, dict[int, Fraction]] = {}
        for c, col in enumerate(columns):
            for r, v in col.items():
                if v:
                    data.setdefault(r, {})[c] = to_fraction(v)
        return cls._from_rows(rows, len(columns), data)

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def entries(self) -> dict:
        return {(r, c): v for r, row in self._rows.items() for c, v in row.items()}

    def nnz(self) -> int:
        return sum(len(row) for row in self._rows.values())

    def __getitem__(self, rc):
        r, c = rc
        return self._rows.get(r, {}).get(c, ZERO)

    def row(self, r) -> dict:
        return dict(self._rows.get(r, {}))

    def row_dicts(self):
        return {r: dict(row) for r, row in self._rows.items()}

    def column(self, c) -> dict:
        return {r: row[c] for r, row in self._rows.items() if c in row}

    def columns(self) -> list[dict]:
        cols = [dict() for _ in range(self.cols)]
        for r, row in self._rows.items():
            for c, v in row.items():
                cols[c][r] = v
        return cols

    def to_dense(self):
        out = [[ZERO] * self.cols for _ in range(self.rows)]
        for r, row in self._rows.items():
            for c, v in row.items():
                out[r][c] = v
        return out

    def is_zero(self) -> bool:
        return not self._rows

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"

    def transpose(self) -> SparseMatrix:
        data: dict[int, dict[int, Fraction]] = {}
        for r, row in self._rows.items():
            for c, v in row.items():
                data.setdefault(c, {})[r] = v
        return SparseMatrix._from_rows(self.cols, self.rows, data)

    T = property(transpose)

    def _combine(self, other, sign):
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} vs {other.shape}")
        data = {r: dict(row) for r, row in self._rows.items()}
        for r, row in other._rows.items():
            target = data.setdefault(r, {})
            for c, v in row.items():
                total = target.get(c, ZERO) + sign * v
                if total:
                    target[c] = total
                else:
                    target.pop(c, None)
        return SparseMatrix._from_rows(self.rows, self.cols, data)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, s) -> SparseMatrix:
        s = to_fraction(s)
        if not s:
            return SparseMatrix.zeros(self.rows, self.cols)
        return SparseMatrix._from_rows(
            self.rows, self.cols,
            {r: {c: v * s for c, v in row.items()} for r, row in self._rows.items()})

    def __rmul__(self, s):
        return self.scale(s)

    def __matmul__(self, other):
        if isinstance(other, SparseMatrix):
            if self.cols != other.rows:
                raise DimensionMismatch(f"cannot compose {self.shape} @ {other.shape}")
            data: dict[int, dict[int, Fraction]] = {}
            orows = other._rows
            for r, row in self._rows.items():
                acc: dict[int, Fraction] = {}
                for k, a in row.items():
                    krow = orows.get(k)
                    if krow is None:
                        continue
                    for c, b in krow.items():
                        acc[c] = acc.get(c, ZERO) + a * b
                acc = {c: v for c, v in acc.items() if v}
                if acc:
                    data[r] = acc
            return SparseMatrix._from_rows(self.rows, other.cols, data)
        return self.apply(other)

    def apply(self, vector) -> tuple:
        """Multiply by a dense vector (sequence) and return a dense tuple."""
        if len(vector) != self.cols:
            raise DimensionMismatch(f"vector of length {len(vector)} for {self.shape}")
        out = [ZERO] * self.rows
        for r, row in self._rows.items():
            out[r] = sum((v * vector[c] for c, v in row.items()), ZERO)
        return tuple(out)

    def apply_sparse(self, vector: Mapping[int, Fraction]) -> dict:
        out: dict[int, Fraction] = {}
        cols = self.columns() if len(vector) > 4 else None
        if cols is None:
            for c, x in vector.items():
                for r, v in self.column(c).items():
                    out[r] = out.get(r, ZERO) + v * x
        else:
            for c, x in vector.items():
                for r, v in cols[c].items():
                    out[r] = out.get(r, ZERO) + v * x
        return {r: v for r, v in out.items() if v}

    def kron(self, other: SparseMatrix) -> SparseMatrix:
        """Kronecker product, matching row-major ordering of tensor indices."""
        data: dict[int, dict[int, Fraction]] = {}
        for r1, row1 in self._rows.items():
            for r2, row2 in other._rows.items():
                r = r1 * other.rows + r2
                target = data.setdefault(r, {})
                for c1, a in row1.items():
                    for c2, b in row2.items():
                        target[c1 * other.cols + c2] = a * b
        return SparseMatrix._from_rows(self.rows * other.rows, self.cols * other.cols, data)

    def power(self, k: int) -> SparseMatrix:
        if self.rows != self.cols:
            raise DimensionMismatch("power of a non-square matrix")
        result = SparseMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def hstack(self, other: SparseMatrix) -> SparseMatrix:
        if self.rows != other.rows:
            raise DimensionMismatch("hstack row mismatch")
        data = {r: dict(row) for r, row in self._rows.items()}
        for r, row in other._rows.items():
            target = data.setdefault(r, {})
            for c, v in row.items():
                target[c + self.cols] = v
        return SparseMatrix._from_rows(self.rows, self.cols + other.cols, data)

    def vstack(self, other: SparseMatrix) -> SparseMatrix:
        if self.cols != other.cols:
            raise DimensionMismatch("vstack column mismatch")
        data = {r: dict(row) for r, row in self._rows.items()}
        for r, row in other._rows.items():
            data[r + self.rows] = dict(row)
        return SparseMatrix._from_rows(self.rows + other.rows, self.cols, data)


def block_matrix(row_dims: Sequence[int], col_dims: Sequence[int],
                 blocks: Mapping[tuple, SparseMatrix]) -> SparseMatrix:
    """Assemble a matrix from blocks keyed by (block_row, block_col)."""
    row_off = [0]
    for d in row_dims:
        row_off.append(row_off[-1] + d)
    col_off = [0]
    for d in col_dims:
        col_off.append(col_off[-1] + d)
    data: dict[int, dict[int, Fraction]] = {}
    for (bi, bj), m in blocks.items():
        if m.shape != (row_dims[bi], col_dims[bj]):
            raise DimensionMismatch(f"block ({bi}, {bj}) has shape {m.shape}")
        for r, row in m._rows.items():
            target = data.setdefault(r + row_off[bi], {})
            for c, v in row.items():
                cc = c + col_off[bj]
                total = target.get(cc, ZERO) + v
                if total:
                    target[cc] = total
                else:
                    target.pop(cc, None)
    return SparseMatrix._from_rows(row_off[-1], col_off[-1], data)


class Echelon:
    """Incrementally maintained reduced row echelon form of a set of vectors.

    Vectors are sparse dicts. Each stored row has a leading 1 at its pivot
    column and zeros at every other pivot column, so the result is the
    canonical RREF of the span regardless of insertion order.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivot_rows: dict[int, dict[int, Fraction]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def reduce(self, vector: Mapping[int, Fraction]) -> dict:
        v = {c: to_fraction(x) for c, x in vector.items() if x}
        for p in sorted(set(v) & self.pivot_rows.keys()):
            coef = v.get(p)
            if not coef:
                continue
            for c, x in self.pivot_rows[p].items():
                total = v.get(c, ZERO) - coef * x
                if total:
                    v[c] = total
                else:
                    v.pop(c, None)
        return v

    def add(self, vector: Mapping[int, Fraction]) -> bool:
        """Insert a vector; return True if it enlarged the span."""
        v = self.reduce(vector)
        if not v:
            return False
        p = min(v)
        lead = v[p]
        v = {c: x / lead for c, x in v.items()}
        for q, row in self.pivot_rows.items():
            coef = row.get(p)
            if coef:
                for c, x in v.items():
                    total = row.get(c, ZERO) - coef * x
                    if total:
                        row[c] = total
                    else:
                        row.pop(c, None)
        self.pivot_rows[p] = v
        return True

    def contains(self, vector) -> bool:
        return not self.reduce(vector)

    def rows_sorted(self) -> list[dict]:
        return [self.pivot_rows[p] for p in sorted(self.pivot_rows)]

    def pivots(self) -> list[int]:
        return sorted(self.pivot_rows)


def _as_matrix(M) -> SparseMatrix:
    if isinstance(M, SparseMatrix):
        return M
    return SparseMatrix.from_dense(M)


def _dense(vec: Mapping[int, Fraction], n: int) -> tuple:
    out = [ZERO] * n
    for i, x in vec.items():
        out[i] = x
    return tuple(out)


def rref(M) -> Echelon:
    M = _as_matrix(M)
    ech = Echelon(M.cols)
    for r in sorted(M._rows):
        ech.add(M._rows[r])
    return ech


def rank(M) -> int:
    M = _as_matrix(M)
    # eliminate along the shorter side
    if M.rows > M.cols:
        M = M.transpose()
    return rref(M).rank


def _kernel_sparse(M: SparseMatrix) -> list[dict]:
    ech = rref(M)
    pivots = ech.pivot_rows
    free = [c for c in range(M.cols) if c not in pivots]
    # column view of the pivot rows restricted to free columns
    by_free: dict[int, dict[int, Fraction]] = {}
    for p, row in pivots.items():
        for c, x in row.items():
            if c != p:
                by_free.setdefault(c, {})[p] = x
    basis = []
    for f in free:
        vec = {f: ONE}
        for p, x in by_free.get(f, {}).items():
            vec[p] = -x
        basis.append(vec)
    # present the kernel itself in reduced echelon form
    kech = Echelon(M.cols)
    for vec in basis:
        kech.add(vec)
    return kech.rows_sorted()


def kernel_basis(M) -> list[tuple]:
    """Basis of the null space, given as the rows of its reduced echelon form."""
    M = _as_matrix(M)
    return [_dense(v, M.cols) for v in _kernel_sparse(M)]


def image_basis(M) -> list[tuple]:
    """The pivot columns of M, a deterministic basis of its column space."""
    M = _as_matrix(M)
    pivots = rref(M).pivots()
    return [_dense(M.column(c), M.rows) for c in pivots]


def cohomology_at(d_in, d_out) -> tuple[int, list[tuple]]:
    """Cohomology of  . -d_in-> C -d_out-> .  at C.

    Returns the Betti number and representative cocycles extending a basis
    of the image of d_in to a basis of the kernel of d_out.
    """
    d_in, d_out = _as_matrix(d_in), _as_matrix(d_out)
    if d_in.rows != d_out.cols:
        raise DimensionMismatch(
            f"d_in lands in dimension {d_in.rows}, d_out starts at {d_out.cols}")
    if not (d_out @ d_in).is_zero():
        raise CompositionNotZero("d_out @ d_in is not zero")
    n = d_out.cols
    ech = Echelon(n)
    for col in d_in.columns():
        ech.add(col)
    reps = []
    for vec in _kernel_sparse(d_out):
        if ech.add(vec):
            reps.append(_dense(vec, n))
    return len(reps), reps


def betti(d_in, d_out) -> int:
    """Betti number only, without representatives or the composition check."""
    d_in, d_out = _as_matrix(d_in), _as_matrix(d_out)
    return d_out.cols - rank(d_out) - rank(d_in)


def inverse(M) -> SparseMatrix:
    M = _as_matrix(M)
    if M.rows != M.cols:
        raise DimensionMismatch("inverse of a non-square matrix")
    n = M.rows
    aug = M.hstack(SparseMatrix.identity(n))
    ech = rref(aug)
    if any(p >= n for p in ech.pivots()) or ech.rank < n:
        raise SingularMatrix("matrix is not invertible")
    data = {}
    for p, row in ech.pivot_rows.items():
        data[p] = {c - n: x for c, x in row.items() if c >= n}
    return SparseMatrix._from_rows(n, n, data)


def solve(A, B) -> SparseMatrix | None:
    """Some X with A @ X = B, or None when the system is inconsistent."""
    A, B = _as_matrix(A), _as_matrix(B)
    if A.rows != B.rows:
        raise DimensionMismatch("solve: row mismatch")
    ech = rref(A.hstack(B))
    n = A.cols
    data: dict[int, dict[int, Fraction]] = {}
    for p, row in ech.pivot_rows.items():
        if p >= n:
            return None
        entries = {c - n: x for c, x in row.items() if c >= n}
        if entries:
            data[p] = entries
    return SparseMatrix._from_rows(n, B.cols, data)


class Quotient:
    """The quotient of k^n by the span of a set of relation vectors.

    The surviving basis consists of the standard vectors at non-pivot columns
    of the reduced relation matrix, so every class has a canonical reduced
    representative.
    """

    def __init__(self, ambient_dim: int, relations: Iterable[Mapping[int, Fraction]]):
        self.ambient_dim = ambient_dim
        self.echelon = Echelon(ambient_dim)
        for rel in relations:
            self.echelon.add(rel)
        pivots = self.echelon.pivot_rows
        self.survivors = [c for c in range(ambient_dim) if c not in pivots]
        self._position = {c: i for i, c in enumerate(self.survivors)}

    @property
    def dim(self) -> int:
        return len(self.survivors)

    def project_sparse(self, vector: Mapping[int, Fraction]) -> dict:
        reduced = self.echelon.reduce(vector)
        return {self._position[c]: x for c, x in reduced.items()}

    def projection(self) -> SparseMatrix:
        data: dict[int, dict[int, Fraction]] = {}
        for c, i in self._position.items():
            data.setdefault(i, {})[c] = ONE
        for p, row in self.echelon.pivot_rows.items():
            for c, x in row.items():
                if c != p:
                    data.setdefault(self._position[c], {})[p] = -x
        return SparseMatrix._from_rows(self.dim, self.ambient_dim, data)

    def lift(self) -> SparseMatrix:
        return SparseMatrix._from_rows(
            self.ambient_dim, self.dim, {c: {i: ONE} for i, c in enumerate(self.survivors)})

    def relation_matrix(self) -> SparseMatrix:
        return SparseMatrix.from_columns(self.ambient_dim, self.echelon.rows_sorted())

    def is_relation(self, vector) -> bool:
        return self.echelon.contains(vector)
