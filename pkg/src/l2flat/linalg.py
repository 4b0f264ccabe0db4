"""Exact rational linear algebra.

Matrices are stored as sparse rows of :class:`fractions.Fraction`.  All
elimination is done fraction-free: each row is scaled to a primitive integer
vector and rows are combined as ``a*r - b*p`` followed by content removal, so
no tolerance ever enters a rank or kernel computation.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from .errors import DimMismatch, Inconsistent, NotChainCompatible, NotContained

Vector = tuple  # tuple[Fraction, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def vector(values: Iterable) -> Vector:
    return tuple(_as_fraction(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (_ZERO,) * n


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v) if a and b), _ZERO)


def add(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Sequence) -> Vector:
    c = _as_fraction(c)
    return tuple(c * a for a in v)


def is_zero(v: Sequence) -> bool:
    return not any(v)


class RatMatrix:
    """Immutable ``rows x cols`` matrix over the rationals (sparse rows)."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, data: Iterable[Mapping[int, object]] | None = None):
        self.rows = rows
        self.cols = cols
        if data is None:
            self._data = tuple({} for _ in range(rows))
        else:
            packed = []
            for r in data:
                packed.append({j: _as_fraction(v) for j, v in r.items() if v})
            if len(packed) != rows:
                raise DimMismatch(f"expected {rows} rows, got {len(packed)}")
            for r in packed:
                for j in r:
                    if not 0 <= j < cols:
                        raise DimMismatch(f"column index {j} outside 0..{cols - 1}")
            self._data = tuple(packed)

    # constructors
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RatMatrix":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimMismatch("ragged rows")
        return cls(len(rows), cols, ({j: v for j, v in enumerate(r) if v} for r in rows))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "RatMatrix":
        data = [{} for _ in range(rows)]
        for j, col in enumerate(columns):
            if len(col) != rows:
                raise DimMismatch("column length does not match row count")
            for i, v in enumerate(col):
                if v:
                    data[i][j] = v
        return cls(rows, len(columns), data)

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Sequence) -> "RatMatrix":
        """Build from a row-major flat sequence."""
        if len(entries) != rows * cols:
            raise DimMismatch("entries length must be rows*cols")
        return cls(rows, cols, ({j: entries[i * cols + j] for j in range(cols)} for i in range(rows)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, ({i: _ONE} for i in range(n)))

    @classmethod
    def diag(cls, values: Sequence) -> "RatMatrix":
        n = len(values)
        return cls(n, n, ({i: v} for i, v in enumerate(values)))

    # access
    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def row(self, i: int) -> dict[int, Fraction]:
        return dict(self._data[i])

    def row_items(self):
        return self._data

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self._data[i].get(j, _ZERO)

    @property
    def entries(self) -> tuple[Fraction, ...]:
        return tuple(self._data[i].get(j, _ZERO) for i in range(self.rows) for j in range(self.cols))

    def tolist(self) -> list[list[Fraction]]:
        return [[r.get(j, _ZERO) for j in range(self.cols)] for r in self._data]

    def column(self, j: int) -> Vector:
        return tuple(r.get(j, _ZERO) for r in self._data)

    def columns(self) -> list[Vector]:
        cols = [[_ZERO] * self.rows for _ in range(self.cols)]
        for i, r in enumerate(self._data):
            for j, v in r.items():
                cols[j][i] = v
        return [tuple(c) for c in cols]

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self._data)

    def is_zero(self) -> bool:
        return not any(self._data)

    # algebra
    @property
    def T(self) -> "RatMatrix":
        data = [{} for _ in range(self.cols)]
        for i, r in enumerate(self._data):
            for j, v in r.items():
                data[j][i] = v
        return RatMatrix(self.cols, self.rows, data)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise DimMismatch(f"vector of length {len(v)} against {self.rows}x{self.cols} matrix")
        out = []
        for r in self._data:
            s = _ZERO
            for j, a in r.items():
                x = v[j]
                if x:
                    s += a * x
            out.append(s)
        return tuple(out)

    def __matmul__(self, other):
        if isinstance(other, RatMatrix):
            if self.cols != other.rows:
                raise DimMismatch(f"cannot multiply {self.shape} by {other.shape}")
            data = []
            od = other._data
            for r in self._data:
                acc: dict[int, Fraction] = {}
                for k, a in r.items():
                    for j, b in od[k].items():
                        acc[j] = acc.get(j, _ZERO) + a * b
                data.append(acc)
            return RatMatrix(self.rows, other.cols, data)
        return self.apply(other)

    def _combine(self, other: "RatMatrix", sign: int) -> "RatMatrix":
        if self.shape != other.shape:
            raise DimMismatch(f"shape mismatch {self.shape} vs {other.shape}")
        data = []
        for a, b in zip(self._data, other._data):
            acc = dict(a)
            for j, v in b.items():
                acc[j] = acc.get(j, _ZERO) + sign * v
            data.append(acc)
        return RatMatrix(self.rows, self.cols, data)

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        return self._combine(other, 1)

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return self._combine(other, -1)

    def __neg__(self) -> "RatMatrix":
        return RatMatrix(self.rows, self.cols, ({j: -v for j, v in r.items()} for r in self._data))

    def scaled(self, c) -> "RatMatrix":
        c = _as_fraction(c)
        return RatMatrix(self.rows, self.cols, ({j: c * v for j, v in r.items()} for r in self._data))

    def select(self, rows: Sequence[int] | None = None, cols: Sequence[int] | None = None) -> "RatMatrix":
        """Submatrix on the given row and column index lists (in the given order)."""
        rows = range(self.rows) if rows is None else rows
        if cols is None:
            return RatMatrix(len(rows), self.cols, (self._data[i] for i in rows))
        where = {j: n for n, j in enumerate(cols)}
        data = []
        for i in rows:
            data.append({where[j]: v for j, v in self._data[i].items() if j in where})
        return RatMatrix(len(rows), len(cols), data)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    __hash__ = None

    def __repr__(self) -> str:
        return f"RatMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


def vstack(blocks: Sequence[RatMatrix]) -> RatMatrix:
    cols = {b.cols for b in blocks}
    if len(cols) > 1:
        raise DimMismatch("vstack needs equal column counts")
    data = [r for b in blocks for r in b.row_items()]
    return RatMatrix(len(data), cols.pop() if cols else 0, data)


def hstack(blocks: Sequence[RatMatrix]) -> RatMatrix:
    rows = {b.rows for b in blocks}
    if len(rows) > 1:
        raise DimMismatch("hstack needs equal row counts")
    nrows = rows.pop() if rows else 0
    data = [{} for _ in range(nrows)]
    offset = 0
    for b in blocks:
        for i, r in enumerate(b.row_items()):
            for j, v in r.items():
                data[i][offset + j] = v
        offset += b.cols
    return RatMatrix(nrows, offset, data)


# ---------------------------------------------------------------------------
# fraction-free elimination core


def _integer_row(row: Mapping[int, object]) -> dict[int, int]:
    """Scale a rational row to a primitive integer row (same span)."""
    items = [(j, _as_fraction(v)) for j, v in row.items() if v]
    if not items:
        return {}
    den = lcm(*(v.denominator for _, v in items))
    out = {j: v.numerator * (den // v.denominator) for j, v in items}
    return _primitive(out)


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = gcd(*row.values())
    if g > 1:
        return {j: v // g for j, v in row.items()}
    return row


def _eliminate(row: dict[int, int], piv: dict[int, int], col: int) -> dict[int, int]:
    """Return a*row - b*piv with the entry at ``col`` cancelled, made primitive."""
    a = piv[col]
    b = row[col]
    g = gcd(a, b)
    a //= g
    b //= g
    out = {j: a * v for j, v in row.items()} if a != 1 else dict(row)
    for j, v in piv.items():
        w = out.get(j, 0) - b * v
        if w:
            out[j] = w
        else:
            out.pop(j, None)
    out.pop(col, None)
    return _primitive(out) if out else out


class Echelon:
    """Incremental reduced echelon form over the integers.

    Each stored row has a designated pivot column at which it is the only
    stored row with a nonzero entry.  Columns ``>= limit`` never become
    pivots; they carry right-hand sides in augmented systems.
    """

    def __init__(self, limit: int | None = None):
        self.limit = limit
        self.pivots: dict[int, dict[int, int]] = {}
        self.residuals: list[dict[int, int]] = []

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict[int, int]) -> dict[int, int]:
        pivots = self.pivots
        for c in [c for c in row if c in pivots]:
            if c in row:
                row = _eliminate(row, pivots[c], c)
        return row

    def insert(self, row: Mapping[int, object]) -> int | None:
        """Insert a row; return its new pivot column, or None if dependent."""
        r = self.reduce(_integer_row(row))
        if not r:
            return None
        limit = self.limit
        eligible = [j for j in r if limit is None or j < limit]
        if not eligible:
            self.residuals.append(r)
            return None
        c = min(eligible)
        if r[c] < 0:
            r = {j: -v for j, v in r.items()}
        for pc, prow in self.pivots.items():
            if c in prow:
                self.pivots[pc] = _eliminate(prow, r, c)
        self.pivots[c] = r
        return c

    def contains(self, row: Mapping[int, object]) -> bool:
        return not self.reduce(_integer_row(row))


def _row_dict(v: Sequence) -> dict[int, Fraction]:
    return {j: x for j, x in enumerate(v) if x}


def _forward(rows: Iterable[Mapping[int, object]], limit: int | None = None):
    """Sparse fraction-free forward elimination with Markowitz-style pivoting.

    Returns ``(pivots, residuals)``: ``pivots`` lists ``(col, row)`` in
    elimination order, and a pivot row only has entries at its own column and
    at columns not eliminated before it.  ``residuals`` are the leftover
    nonzero rows, which have no entries below ``limit``.
    """
    active: dict[int, dict[int, int]] = {}
    for i, r in enumerate(rows):
        ir = _integer_row(r)
        if ir:
            active[i] = ir
    colmap: dict[int, set[int]] = {}
    for i, r in active.items():
        for j in r:
            if limit is None or j < limit:
                colmap.setdefault(j, set()).add(i)
    pivots = []
    while colmap:
        c = min(colmap, key=lambda j: (len(colmap[j]), j))
        members = colmap.pop(c)
        pi = min(members, key=lambda i: (len(active[i]), i))
        prow = active.pop(pi)
        for j in prow:
            if j != c and j in colmap:
                colmap[j].discard(pi)
        for i in sorted(members):
            if i == pi:
                continue
            old = active[i]
            new = _eliminate(old, prow, c)
            for j in old:
                if j not in new and j != c and j in colmap:
                    colmap[j].discard(i)
            for j in new:
                if j not in old and (limit is None or j < limit):
                    colmap.setdefault(j, set()).add(i)
            if new:
                active[i] = new
            else:
                del active[i]
        for j in [j for j, m in colmap.items() if not m]:
            del colmap[j]
        pivots.append((c, prow))
    return pivots, [active[i] for i in sorted(active)]


def _back_substitute(pivots, seed: dict[int, object], rhs_col: int | None = None) -> dict[int, Fraction]:
    """Solve the echelon system for pivot variables given values at free columns.

    With ``rhs_col`` set, each pivot row reads ``row[:rhs_col] . x = row[rhs_col]``.
    """
    x: dict[int, Fraction] = {j: Fraction(v) for j, v in seed.items()}
    for c, row in reversed(pivots):
        s = Fraction(row[rhs_col]) if rhs_col is not None and rhs_col in row else _ZERO
        for j, v in row.items():
            if j == c or (rhs_col is not None and j >= rhs_col):
                continue
            xj = x.get(j)
            if xj:
                s -= v * xj
        if s:
            x[c] = s / row[c]
    return x


def _echelon_of(A: RatMatrix) -> Echelon:
    ech = Echelon()
    for r in A.row_items():
        if r:
            ech.insert(r)
    return ech


# ---------------------------------------------------------------------------
# public operations


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient_dim given by a linearly independent basis."""

    ambient_dim: int
    basis: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(vector(b) for b in self.basis))
        for b in self.basis:
            if len(b) != self.ambient_dim:
                raise DimMismatch(f"basis vector of length {len(b)} in ambient dimension {self.ambient_dim}")

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        """Subspace spanned by ``vectors``; keeps the greedy independent subset."""
        return cls(ambient_dim, tuple(independent_subset(vectors)))

    @classmethod
    def whole(cls, n: int) -> "Subspace":
        return cls(n, tuple(tuple(_ONE if i == j else _ZERO for j in range(n)) for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def echelon(self) -> Echelon:
        ech = Echelon()
        for b in self.basis:
            ech.insert(_row_dict(b))
        return ech

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise DimMismatch("vector length does not match ambient dimension")
        return self.echelon().contains(_row_dict(v))

    def matrix(self) -> RatMatrix:
        """Basis vectors as the columns of a matrix."""
        return RatMatrix.from_columns(self.basis, self.ambient_dim)


def independent_subset(vectors: Iterable[Sequence]) -> list[Vector]:
    ech = Echelon()
    keep = []
    for v in vectors:
        if ech.insert(_row_dict(v)) is not None:
            keep.append(vector(v))
    return keep


def rank(A: RatMatrix) -> int:
    """Exact rank over the rationals."""
    pivots, _ = _forward(A.row_items())
    return len(pivots)


def nullspace_basis(A: RatMatrix) -> Subspace:
    """Basis of ``{v : A v = 0}``: one vector per free column, in column order.

    Each vector is 1 at its free column and 0 at the other free columns.
    """
    pivots, _ = _forward(A.row_items())
    n = A.cols
    pcols = {c for c, _ in pivots}
    basis = []
    for f in range(n):
        if f in pcols:
            continue
        x = _back_substitute(pivots, {f: 1})
        basis.append(tuple(x.get(j, _ZERO) for j in range(n)))
    return Subspace(n, tuple(basis))


def image_basis(A: RatMatrix) -> Subspace:
    """Column span of ``A``; the basis is the leftmost independent columns."""
    return Subspace(A.rows, tuple(independent_subset(A.columns())))


def pivot_columns(A: RatMatrix) -> list[int]:
    """Indices of the leftmost maximal independent set of columns."""
    ech = Echelon()
    out = []
    for j, col in enumerate(A.columns()):
        if ech.insert(_row_dict(col)) is not None:
            out.append(j)
    return out


def solve(A: RatMatrix, rhs: Sequence[Sequence]) -> list[Vector]:
    """Particular solutions of ``A x = y`` for each ``y`` in ``rhs``.

    Free variables are set to zero.  Raises :class:`Inconsistent` naming the
    first right-hand side with no solution.
    """
    n = A.cols
    for y in rhs:
        if len(y) != A.rows:
            raise DimMismatch("right-hand side length does not match row count")
    aug = []
    for i, r in enumerate(A.row_items()):
        row = dict(r)
        for t, y in enumerate(rhs):
            if y[i]:
                row[n + t] = y[i]
        aug.append(row)
    pivots, residuals = _forward(aug, limit=n)
    bad = sorted({j - n for res in residuals for j in res})
    if bad:
        raise Inconsistent(f"right-hand side {bad[0]} is not in the column space")
    out = []
    for t in range(len(rhs)):
        x = _back_substitute(pivots, {}, rhs_col=n + t)
        out.append(tuple(x.get(j, _ZERO) for j in range(n)))
    return out


def coordinates(basis: Sequence[Sequence], vectors: Sequence[Sequence], ambient_dim: int) -> list[Vector]:
    """Coordinates of each vector in the (independent) ``basis``."""
    if not basis:
        for v in vectors:
            if any(v):
                raise Inconsistent("nonzero vector has no coordinates in the empty basis")
        return [() for _ in vectors]
    M = RatMatrix.from_columns(basis, ambient_dim)
    return solve(M, vectors)


class Quotient:
    """The quotient ``Z/B`` with deterministic representatives.

    Representatives are the basis vectors of ``Z`` that stay independent when
    added, in order, after the basis of ``B``.
    """

    def __init__(self, Z: Subspace, B: Subspace, check: bool = True):
        if Z.ambient_dim != B.ambient_dim:
            raise DimMismatch(f"ambient dimensions {Z.ambient_dim} and {B.ambient_dim} differ")
        self.Z = Z
        self.B = B
        self.ambient_dim = Z.ambient_dim
        if check:
            zech = Z.echelon()
            for b in B.basis:
                if not zech.contains(_row_dict(b)):
                    raise NotContained("a basis vector of B lies outside span(Z)")
        ech = B.echelon()
        reps = []
        for z in Z.basis:
            if ech.insert(_row_dict(z)) is not None:
                reps.append(z)
        self.reps: tuple = tuple(reps)
        # basis of Z adapted to the flag B <= Z
        self._adapted = B.basis + self.reps

    @property
    def dim(self) -> int:
        return len(self.reps)

    def classes(self, vectors: Sequence[Sequence]) -> list[Vector]:
        """Coordinates of the classes of ``vectors`` (which must lie in Z)."""
        if not vectors:
            return []
        try:
            full = coordinates(self._adapted, vectors, self.ambient_dim)
        except Inconsistent as exc:
            raise NotContained("vector does not lie in Z") from exc
        nb = self.B.dim
        return [c[nb:] for c in full]


def quotient_dim(Z: Subspace, B: Subspace) -> int:
    """``dim Z - dim B`` after verifying ``B`` is contained in ``Z``."""
    return Quotient(Z, B).dim


def _check_maps_into(f: RatMatrix, source: Subspace, target: Subspace) -> None:
    if not source.basis:
        return
    ech = target.echelon()
    for v in source.basis:
        if not ech.contains(_row_dict(f.apply(v))):
            raise NotChainCompatible("map does not send source subspace into target subspace")


def induced_quotient_map(f: RatMatrix, Qs: Quotient, Qt: Quotient) -> RatMatrix:
    if f.cols != Qs.ambient_dim or f.rows != Qt.ambient_dim:
        raise DimMismatch(f"map of shape {f.shape} between ambient {Qs.ambient_dim} and {Qt.ambient_dim}")
    _check_maps_into(f, Qs.Z, Qt.Z)
    _check_maps_into(f, Qs.B, Qt.B)
    images = [f.apply(r) for r in Qs.reps]
    cols = Qt.classes(images)
    return RatMatrix.from_columns(cols, Qt.dim)


def induced_map(f: RatMatrix, Zs: Subspace, Bs: Subspace, Zt: Subspace, Bt: Subspace) -> RatMatrix:
    """Matrix of the map ``Zs/Bs -> Zt/Bt`` induced by ``f``.

    Columns index the source quotient basis, rows the target one.
    """
    return induced_quotient_map(f, Quotient(Zs, Bs), Quotient(Zt, Bt))


def determinant(rows: Sequence[Sequence[int]]) -> int:
    """Integer determinant by Bareiss elimination; the empty matrix has det 1."""
    n = len(rows)
    if n == 0:
        return 1
    M = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]
