"""Exact linear algebra over a :class:`~gerstenhaber.scalars.FieldSpec`.

Matrices are stored as a list of sparse rows (``dict`` column -> raw scalar);
zero entries are never stored.  All the matrices that show up in the Taft
computations are very sparse, so elimination works row-by-row on dicts.
"""

from __future__ import annotations

import heapq
from typing import Iterable, Sequence

from gerstenhaber.scalars import FieldSpec, FieldError, Scalar


class DimensionError(ValueError):
    pass


class Matrix:
    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: FieldSpec, rows: int, cols: int, data: list[dict] | None = None):
        self.field = field
        self.rows = rows
        self.cols = cols
        self.data = data if data is not None else [{} for _ in range(rows)]
        assert len(self.data) == rows

    # -- construction ---------------------------------------------------

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, rows, cols)

    @classmethod
    def identity(cls, field, n):
        return cls(field, n, n, [{i: field.one} for i in range(n)])

    @classmethod
    def from_rows(cls, field, rows: Sequence[Sequence], cols: int | None = None):
        """Dense rows of ints/Fractions/Scalars/text."""
        if cols is None:
            cols = len(rows[0]) if rows else 0
        data = []
        for row in rows:
            if len(row) != cols:
                raise DimensionError("ragged rows")
            d = {}
            for j, v in enumerate(row):
                r = field.coerce(v)
                if not field.is_zero(r):
                    d[j] = r
            data.append(d)
        return cls(field, len(rows), cols, data)

    @classmethod
    def from_columns(cls, field, columns: Sequence[dict], rows: int):
        """Columns given as sparse raw dicts."""
        data = [{} for _ in range(rows)]
        for j, col in enumerate(columns):
            for i, v in col.items():
                data[i][j] = v
        return cls(field, rows, len(columns), data)

    @classmethod
    def diagonal_blocks(cls, blocks: Sequence["Matrix"]):
        field = blocks[0].field
        data, off = [], 0
        for b in blocks:
            for row in b.data:
                data.append({j + off: v for j, v in row.items()})
            off += b.cols
        return cls(field, len(data), off, data)

    @classmethod
    def hstack(cls, blocks: Sequence["Matrix"], field=None, rows=None):
        if not blocks:
            return cls(field, rows, 0)
        rows = blocks[0].rows
        data = [{} for _ in range(rows)]
        off = 0
        for b in blocks:
            if b.rows != rows:
                raise DimensionError("hstack row mismatch")
            for i, row in enumerate(b.data):
                if row:
                    d = data[i]
                    for j, v in row.items():
                        d[j + off] = v
            off += b.cols
        return cls(blocks[0].field, rows, off, data)

    @classmethod
    def vstack(cls, blocks: Sequence["Matrix"], field=None, cols=None):
        if not blocks:
            return cls(field, 0, cols)
        cols = blocks[0].cols
        data = []
        for b in blocks:
            if b.cols != cols:
                raise DimensionError("vstack column mismatch")
            data.extend(dict(r) for r in b.data)
        return cls(blocks[0].field, len(data), cols, data)

    def copy(self):
        return Matrix(self.field, self.rows, self.cols, [dict(r) for r in self.data])

    # -- access ---------------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, key) -> Scalar:
        i, j = key
        return Scalar(self.field, self.data[i].get(j, self.field.zero))

    def get(self, i, j):
        return self.data[i].get(j, self.field.zero)

    def set(self, i, j, raw):
        if self.field.is_zero(raw):
            self.data[i].pop(j, None)
        else:
            self.data[i][j] = raw

    def add_to(self, i, j, raw):
        F = self.field
        row = self.data[i]
        if j in row:
            v = F.add(row[j], raw)
            if F.is_zero(v):
                del row[j]
            else:
                row[j] = v
        elif not F.is_zero(raw):
            row[j] = raw

    def column(self, j) -> dict:
        return {i: r[j] for i, r in enumerate(self.data) if j in r}

    def columns(self) -> list[dict]:
        cols = [{} for _ in range(self.cols)]
        for i, r in enumerate(self.data):
            for j, v in r.items():
                cols[j][i] = v
        return cols

    def to_lists(self) -> list[list[Scalar]]:
        z = self.field.zero
        return [[Scalar(self.field, r.get(j, z)) for j in range(self.cols)] for r in self.data]

    def nnz(self):
        return sum(len(r) for r in self.data)

    def is_zero(self):
        return not any(self.data)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, nnz={self.nnz()}, {self.field!r})"

    def pretty(self):
        return "\n".join("[" + ", ".join(str(v) for v in row) + "]" for row in self.to_lists())

    # -- arithmetic -----------------------------------------------------

    def _check(self, other):
        if self.field != other.field:
            raise FieldError("matrix field mismatch")

    def __add__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        out = self.copy()
        for i, r in enumerate(other.data):
            for j, v in r.items():
                out.add_to(i, j, v)
        return out

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        neg = self.field.neg
        return Matrix(self.field, self.rows, self.cols, [{j: neg(v) for j, v in r.items()} for r in self.data])

    def scale(self, raw):
        F = self.field
        if F.is_zero(raw):
            return Matrix(F, self.rows, self.cols)
        mul = F.mul
        return Matrix(F, self.rows, self.cols, [{j: mul(raw, v) for j, v in r.items()} for r in self.data])

    def __mul__(self, c):
        return self.scale(self.field.coerce(c))

    __rmul__ = __mul__

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        F = self.field
        add, mul, is_zero = F.add, F.mul, F.is_zero
        odata = other.data
        out = []
        for r in self.data:
            acc: dict = {}
            for k, a in r.items():
                for j, b in odata[k].items():
                    p = mul(a, b)
                    if j in acc:
                        acc[j] = add(acc[j], p)
                    else:
                        acc[j] = p
            out.append({j: v for j, v in acc.items() if not is_zero(v)})
        return Matrix(F, self.rows, other.cols, out)

    def apply(self, vec: dict) -> dict:
        """Matrix times a sparse column vector."""
        F = self.field
        add, mul = F.add, F.mul
        out = {}
        for i, r in enumerate(self.data):
            acc = None
            for k, a in r.items():
                b = vec.get(k)
                if b is not None:
                    p = mul(a, b)
                    acc = p if acc is None else add(acc, p)
            if acc is not None and not F.is_zero(acc):
                out[i] = acc
        return out

    def transpose(self) -> "Matrix":
        data = [{} for _ in range(self.cols)]
        for i, r in enumerate(self.data):
            for j, v in r.items():
                data[j][i] = v
        return Matrix(self.field, self.cols, self.rows, data)

    T = property(transpose)

    def kron(self, other: "Matrix") -> "Matrix":
        self._check(other)
        mul = self.field.mul
        oc = other.cols
        data = []
        for r in self.data:
            for s in other.data:
                d = {}
                for j, a in r.items():
                    base = j * oc
                    for l, b in s.items():
                        d[base + l] = mul(a, b)
                data.append(d)
        return Matrix(self.field, self.rows * other.rows, self.cols * oc, data)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "Matrix":
        cmap = {c: k for k, c in enumerate(col_idx)}
        data = []
        for i in row_idx:
            data.append({cmap[j]: v for j, v in self.data[i].items() if j in cmap})
        return Matrix(self.field, len(row_idx), len(col_idx), data)

    def block(self, r0, r1, c0, c1) -> "Matrix":
        data = [{j - c0: v for j, v in self.data[i].items() if c0 <= j < c1} for i in range(r0, r1)]
        return Matrix(self.field, r1 - r0, c1 - c0, data)

    def rank(self) -> int:
        return len(echelon(self.data, self.field, self.cols)[0])


# ---------------------------------------------------------------------------
# elimination
# ---------------------------------------------------------------------------


def _reduce_row(row: dict, pivots: dict, F):
    """Eliminate pivot columns from ``row`` (in place), lowest column first.

    ``pivots[c]`` is a normalized row whose leading column is ``c``.
    """
    sub, mul, is_zero = F.sub, F.mul, F.is_zero
    heap = [c for c in row if c in pivots]
    heapq.heapify(heap)
    seen = set(heap)
    while heap:
        c = heapq.heappop(heap)
        a = row.get(c)
        if a is None:
            continue
        for j, b in pivots[c].items():
            if j in row:
                v = sub(row[j], mul(a, b))
                if is_zero(v):
                    del row[j]
                else:
                    row[j] = v
            else:
                row[j] = F.neg(mul(a, b))
                if j in pivots and j not in seen:
                    seen.add(j)
                    heapq.heappush(heap, j)
    return row


def echelon(rows: Iterable[dict], F: FieldSpec, ncols: int, track: bool = False):
    """Row echelon form of sparse rows.

    Returns ``(pivots, combos)`` where ``pivots`` maps leading column to a
    normalized row (leading entry one).  If ``track`` is set, ``combos[c]`` is
    the sparse combination of *input* row indices producing ``pivots[c]``.
    """
    pivots: dict[int, dict] = {}
    combos: dict[int, dict] = {}
    for idx, src in enumerate(rows):
        if not src:
            continue
        row = dict(src)
        if track:
            combo = {idx: F.one}
            sub, mul, is_zero = F.sub, F.mul, F.is_zero
            # replay the reduction on the combination
            heap = [c for c in row if c in pivots]
            heapq.heapify(heap)
            seen = set(heap)
            while heap:
                c = heapq.heappop(heap)
                a = row.get(c)
                if a is None:
                    continue
                for j, b in pivots[c].items():
                    if j in row:
                        v = sub(row[j], mul(a, b))
                        if is_zero(v):
                            del row[j]
                        else:
                            row[j] = v
                    else:
                        row[j] = F.neg(mul(a, b))
                        if j in pivots and j not in seen:
                            seen.add(j)
                            heapq.heappush(heap, j)
                for k, b in combos[c].items():
                    v = sub(combo.get(k, F.zero), mul(a, b))
                    if is_zero(v):
                        combo.pop(k, None)
                    else:
                        combo[k] = v
        else:
            _reduce_row(row, pivots, F)
        if not row:
            continue
        lead = min(row)
        inv = F.inv(row[lead])
        mul = F.mul
        pivots[lead] = {j: mul(inv, v) for j, v in row.items()}
        if track:
            combos[lead] = {k: mul(inv, v) for k, v in combo.items()}
    return pivots, combos


def insert_row(pivots: dict, vec: dict, F) -> bool:
    """Add ``vec`` to an echelon basis; False if it was already in the span."""
    row = _reduce_row(dict(vec), pivots, F)
    if not row:
        return False
    lead = min(row)
    inv = F.inv(row[lead])
    pivots[lead] = {j: F.mul(inv, v) for j, v in row.items()}
    return True


def _back_substitute(pivots: dict, F, combos: dict | None = None):
    """Turn echelon pivots into reduced echelon form (in place).

    Rows are cleared from the last pivot upwards; each row only looks at its
    own entries in pivot columns, which are already reduced below it.
    """
    sub, mul, is_zero = F.sub, F.mul, F.is_zero
    for c in sorted(pivots, reverse=True):
        row = pivots[c]
        targets = sorted(j for j in row if j != c and j in pivots)
        if not targets:
            continue
        crow = combos[c] if combos is not None else None
        for j in targets:
            a = row.get(j)
            if a is None:
                continue
            for k, b in pivots[j].items():
                v = sub(row.get(k, F.zero), mul(a, b))
                if is_zero(v):
                    row.pop(k, None)
                else:
                    row[k] = v
            if crow is not None:
                for k, b in combos[j].items():
                    v = sub(crow.get(k, F.zero), mul(a, b))
                    if is_zero(v):
                        crow.pop(k, None)
                    else:
                        crow[k] = v
    return pivots


def rref(M: Matrix, with_transform: bool = False):
    """Reduced row echelon form.

    Returns ``(R, pivot_columns)``; with ``with_transform`` also a matrix ``P``
    such that the nonzero rows of ``R`` equal ``P @ M`` (rows of ``P`` record
    the row operations as combinations of the rows of ``M``).
    """
    F = M.field
    pivots, combos = echelon(M.data, F, M.cols, track=with_transform)
    _back_substitute(pivots, F, combos if with_transform else None)
    order = sorted(pivots)
    data = [dict(pivots[c]) for c in order] + [{} for _ in range(M.rows - len(order))]
    R = Matrix(F, M.rows, M.cols, data)
    if with_transform:
        P = Matrix(F, len(order), M.rows, [dict(combos[c]) for c in order])
        return R, order, P
    return R, order


class Subspace:
    """Subspace of F^ambient_dim with a reduced-echelon basis (stored as sparse rows)."""

    def __init__(self, field: FieldSpec, ambient_dim: int, pivots: dict[int, dict]):
        self.field = field
        self.ambient_dim = ambient_dim
        self._pivots = pivots

    @classmethod
    def span(cls, field, ambient_dim, vectors: Iterable[dict]):
        pivots, _ = echelon(vectors, field, ambient_dim)
        _back_substitute(pivots, field)
        return cls(field, ambient_dim, pivots)

    @property
    def dim(self):
        return len(self._pivots)

    @property
    def pivots(self):
        return sorted(self._pivots)

    @property
    def basis(self) -> list[dict]:
        return [self._pivots[c] for c in sorted(self._pivots)]

    def basis_matrix(self) -> Matrix:
        """Basis vectors as the columns of a matrix."""
        return Matrix.from_columns(self.field, self.basis, self.ambient_dim)

    def reduce(self, v: dict) -> dict:
        return _reduce_row(dict(v), self._pivots, self.field)

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def coordinates(self, v: dict) -> dict | None:
        """Coefficients of ``v`` in the echelon basis, or None if ``v`` is outside."""
        if self.reduce(v):
            return None
        order = sorted(self._pivots)
        return {k: v[c] for k, c in enumerate(order) if c in v}

    def complement_columns(self) -> list[int]:
        return [j for j in range(self.ambient_dim) if j not in self._pivots]

    def __repr__(self):
        return f"Subspace(dim={self.dim} in {self.ambient_dim}, {self.field!r})"


def kernel(M: Matrix) -> Subspace:
    """Right null space ``{v : M v = 0}``."""
    F = M.field
    pivots, _ = echelon(M.data, F, M.cols)
    _back_substitute(pivots, F)
    vecs = []
    piv = sorted(pivots)
    free = [j for j in range(M.cols) if j not in pivots]
    neg = F.neg
    # column j of the free variables -> its entries in each pivot row
    by_free: dict[int, dict] = {j: {} for j in free}
    for c in piv:
        for j, v in pivots[c].items():
            if j != c:
                by_free[j][c] = v
    for j in free:
        vec = {j: F.one}
        for c, v in by_free[j].items():
            vec[c] = neg(v)
        vecs.append(vec)
    return Subspace.span(F, M.cols, vecs)


def image(M: Matrix) -> Subspace:
    """Column space of ``M``."""
    return Subspace.span(M.field, M.rows, M.columns())


def contains(S: Subspace, v: dict) -> bool:
    if v and max(v) >= S.ambient_dim:
        raise DimensionError("vector longer than ambient space")
    return S.contains(v)


def solve(M: Matrix, b: dict) -> dict | None:
    """Some ``x`` with ``M x = b`` (sparse vectors), or None if ``b`` is not in the image.

    The returned solution is checked by substitution before it is returned.
    """
    F = M.field
    if b and max(b) >= M.rows:
        raise DimensionError(f"right-hand side has index {max(b)} but matrix has {M.rows} rows")
    rows = [dict(r) for r in M.data]
    n = M.cols
    for i, v in b.items():
        rows[i][n] = v
    pivots, _ = echelon(rows, F, n + 1)
    if n in pivots:
        return None
    # triangular solve on the rhs column only (free variables set to zero)
    sub, mul, is_zero = F.sub, F.mul, F.is_zero
    x = {}
    for c in sorted(pivots, reverse=True):
        row = pivots[c]
        v = row.get(n, F.zero)
        for j, a in row.items():
            if j != c and j != n:
                xj = x.get(j)
                if xj is not None:
                    v = sub(v, mul(a, xj))
        if not is_zero(v):
            x[c] = v
    residual = M.apply(x)
    if residual != {k: v for k, v in b.items() if not F.is_zero(v)}:
        raise ArithmeticError("solve: substitution check failed")
    return x


def solve_matrix(M: Matrix, B: Matrix) -> Matrix | None:
    """Some ``X`` with ``M @ X == B``, or None.  Eliminates ``M`` once for all columns."""
    F = M.field
    if M.rows != B.rows:
        raise DimensionError("solve_matrix row mismatch")
    n, k = M.cols, B.cols
    rows = [dict(r) for r in M.data]
    for i, r in enumerate(B.data):
        for j, v in r.items():
            rows[i][n + j] = v
    pivots, _ = echelon(rows, F, n + k)
    if any(c >= n for c in pivots):
        return None
    _back_substitute(pivots, F)
    data = [{} for _ in range(n)]
    for c, row in pivots.items():
        data[c] = {j - n: v for j, v in row.items() if j >= n}
    X = Matrix(F, n, k, data)
    if M @ X != B:
        raise ArithmeticError("solve_matrix: substitution check failed")
    return X


def vec_add(F, a: dict, b: dict, coeff=None) -> dict:
    """``a + coeff*b`` on sparse vectors (new dict)."""
    out = dict(a)
    add, mul, is_zero = F.add, F.mul, F.is_zero
    for k, v in b.items():
        if coeff is not None:
            v = mul(coeff, v)
        if k in out:
            s = add(out[k], v)
            if is_zero(s):
                del out[k]
            else:
                out[k] = s
        elif not is_zero(v):
            out[k] = v
    return out
