"""Finite cell complexes with signed integer incidences.

A :class:`CellComplex` stores, per dimension, an ordered tuple of cell ids and
for every positive-dimensional cell its boundary chain ``{face_id: coef}``.
The chain boundary ``D_k`` has shape ``(n_{k-1}, n_k)``; the cochain
coboundary is ``d_k = D_{k+1}^T`` of shape ``(n_{k+1}, n_k)``.

Cell ids are globally unique, which keeps the text formats unambiguous.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import InvalidComplex, NotBoundaryClosed, UnknownId
from .linalg import RatMatrix, rank


class CellComplex:
    def __init__(self, cells: Sequence[Sequence[str]], boundary: Mapping[str, Mapping[str, int]] | None = None):
        self.cells: tuple[tuple[str, ...], ...] = tuple(tuple(c) for c in cells)
        while len(self.cells) > 1 and not self.cells[-1]:
            self.cells = self.cells[:-1]
        self._dim: dict[str, int] = {}
        self._index: dict[str, int] = {}
        for k, ids in enumerate(self.cells):
            for i, c in enumerate(ids):
                if c in self._dim:
                    raise InvalidComplex(f"duplicate cell id {c!r}")
                self._dim[c] = k
                self._index[c] = i
        boundary = boundary or {}
        self._faces: dict[str, dict[str, int]] = {}
        for c in self._dim:
            faces = {f: int(v) for f, v in boundary.get(c, {}).items() if v}
            self._faces[c] = faces
        extra = set(boundary) - set(self._dim)
        if extra:
            raise UnknownId(f"boundary given for undeclared cell {sorted(extra)[0]!r}")
        self._D: dict[int, RatMatrix] = {}

    @property
    def top_dim(self) -> int:
        return len(self.cells) - 1

    def n(self, k: int) -> int:
        return len(self.cells[k]) if 0 <= k < len(self.cells) else 0

    def cells_of(self, k: int) -> tuple[str, ...]:
        return self.cells[k] if 0 <= k < len(self.cells) else ()

    @property
    def size(self) -> int:
        return len(self._dim)

    def __contains__(self, cell: str) -> bool:
        return cell in self._dim

    def __iter__(self):
        for ids in self.cells:
            yield from ids

    def dim_of(self, cell: str) -> int:
        try:
            return self._dim[cell]
        except KeyError:
            raise UnknownId(f"unknown cell id {cell!r}") from None

    def index_of(self, cell: str) -> int:
        try:
            return self._index[cell]
        except KeyError:
            raise UnknownId(f"unknown cell id {cell!r}") from None

    def faces(self, cell: str) -> dict[str, int]:
        self.dim_of(cell)
        return dict(self._faces[cell])

    def boundary_matrix(self, k: int) -> RatMatrix:
        """Chain boundary ``D_k : C_k -> C_{k-1}``."""
        if k in self._D:
            return self._D[k]
        rows, cols = self.n(k - 1), self.n(k)
        data = [{} for _ in range(rows)]
        if k >= 1:
            for j, c in enumerate(self.cells_of(k)):
                for f, v in self._faces[c].items():
                    if self._dim.get(f) != k - 1:
                        raise InvalidComplex(f"cell {c!r} has face {f!r} which is not a {k - 1}-cell")
                    data[self._index[f]][j] = v
        D = RatMatrix(rows, cols, data)
        self._D[k] = D
        return D

    def coboundary(self, k: int) -> RatMatrix:
        """Cochain differential ``d_k : C^k -> C^{k+1}``."""
        return self.boundary_matrix(k + 1).T

    def boundary_data(self) -> dict[str, dict[str, int]]:
        return {c: dict(f) for c, f in self._faces.items() if f}

    def __repr__(self) -> str:
        counts = ",".join(str(len(c)) for c in self.cells)
        return f"CellComplex(cells=[{counts}])"


@dataclass(frozen=True)
class Violation:
    dim: int
    cell: str
    reason: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations


def validate(X: CellComplex) -> ValidationReport:
    """Check face references and ``D_{k-1} D_k = 0``; never raises."""
    found: list[Violation] = []
    bad_dims = set()
    for k in range(X.top_dim + 1):
        for c in X.cells_of(k):
            faces = X._faces[c]
            if k == 0 and faces:
                found.append(Violation(0, c, "vertex with nonempty boundary"))
            for f in faces:
                if X._dim.get(f) != k - 1:
                    found.append(Violation(k, c, f"unknown face {f}"))
                    bad_dims.add(k)
    for k in range(2, X.top_dim + 1):
        if k in bad_dims or k - 1 in bad_dims:
            continue
        prod = X.boundary_matrix(k - 1) @ X.boundary_matrix(k)
        nonzero = sorted({j for r in prod.row_items() for j in r})
        for j in nonzero:
            found.append(Violation(k, X.cells[k][j], "boundary of boundary is nonzero"))
    return ValidationReport(tuple(found))


def ensure_valid(X: CellComplex) -> CellComplex:
    report = validate(X)
    if not report.ok:
        v = report.violations[0]
        raise InvalidComplex(f"dimension {v.dim}, cell {v.cell}: {v.reason}")
    return X


def betti(X: CellComplex, k: int) -> int:
    if k < 0 or k > X.top_dim:
        return 0
    return X.n(k) - rank(X.boundary_matrix(k)) - rank(X.boundary_matrix(k + 1))


def betti_numbers(X: CellComplex) -> tuple[int, ...]:
    ranks = [rank(X.boundary_matrix(k)) for k in range(X.top_dim + 2)]
    return tuple(X.n(k) - ranks[k] - ranks[k + 1] for k in range(X.top_dim + 1))


def euler(X: CellComplex) -> int:
    return sum((-1) ** k * X.n(k) for k in range(X.top_dim + 1))


class Subcomplex:
    """A set of cells of ``parent``; boundary closure is checked on demand."""

    def __init__(self, parent: CellComplex, selected: Iterable[str] = ()):
        sel = frozenset(selected)
        for c in sel:
            if c not in parent:
                raise UnknownId(f"unknown cell id {c!r}")
        self.parent = parent
        self.selected = sel

    def __contains__(self, cell: str) -> bool:
        return cell in self.selected

    def __len__(self) -> int:
        return len(self.selected)

    def __eq__(self, other) -> bool:
        return isinstance(other, Subcomplex) and self.parent is other.parent and self.selected == other.selected

    def __hash__(self):
        return hash(self.selected)

    def __or__(self, other: "Subcomplex") -> "Subcomplex":
        return Subcomplex(self.parent, self.selected | other.selected)

    def open_faces(self) -> list[str]:
        """Faces of selected cells that are missing from the selection."""
        missing = set()
        for c in self.selected:
            for f in self.parent._faces[c]:
                if f not in self.selected:
                    missing.add(f)
        return sorted(missing)

    def is_closed(self) -> bool:
        return not self.open_faces()

    def require_closed(self) -> "Subcomplex":
        missing = self.open_faces()
        if missing:
            raise NotBoundaryClosed(f"face {missing[0]!r} of a selected cell is not selected")
        return self

    def cells_of(self, k: int) -> tuple[str, ...]:
        return tuple(c for c in self.parent.cells_of(k) if c in self.selected)

    def indices(self, k: int) -> list[int]:
        return [i for i, c in enumerate(self.parent.cells_of(k)) if c in self.selected]

    def complement_indices(self, k: int) -> list[int]:
        return [i for i, c in enumerate(self.parent.cells_of(k)) if c not in self.selected]

    def as_complex(self) -> CellComplex:
        self.require_closed()
        X = self.parent
        cells = [self.cells_of(k) for k in range(X.top_dim + 1)]
        return CellComplex(cells, {c: X._faces[c] for c in self.selected if X._faces[c]})

    def sorted_ids(self) -> list[str]:
        return [c for c in self.parent if c in self.selected]


def subcomplex_closure(X: CellComplex, seed: Iterable[str]) -> Subcomplex:
    """Smallest boundary-closed subcomplex containing ``seed``."""
    todo = list(seed)
    for c in todo:
        X.dim_of(c)
    seen = set(todo)
    while todo:
        c = todo.pop()
        for f in X._faces[c]:
            if f not in seen:
                seen.add(f)
                todo.append(f)
    return Subcomplex(X, seen)


@dataclass(frozen=True)
class CellularInvolution:
    """Signed permutation of cells: ``cell -> sign * image``."""

    complex: CellComplex
    images: Mapping[str, tuple[int, str]] = field(default_factory=dict)

    def image(self, cell: str) -> tuple[int, str]:
        return self.images.get(cell, (1, cell))

    def chain_matrix(self, k: int) -> RatMatrix:
        X = self.complex
        n = X.n(k)
        data = [{} for _ in range(n)]
        for j, c in enumerate(X.cells_of(k)):
            s, t = self.image(c)
            data[X.index_of(t)][j] = s
        return RatMatrix(n, n, data)

    def cochain_matrix(self, k: int) -> RatMatrix:
        """Pullback ``sigma^*`` on k-cochains."""
        return self.chain_matrix(k).T

    def is_involution(self) -> bool:
        return all((self.chain_matrix(k) @ self.chain_matrix(k)) == RatMatrix.identity(self.complex.n(k))
                   for k in range(self.complex.top_dim + 1))

    def is_chain_map(self) -> bool:
        X = self.complex
        return all(X.boundary_matrix(k) @ self.chain_matrix(k) == self.chain_matrix(k - 1) @ X.boundary_matrix(k)
                   for k in range(1, X.top_dim + 1))


def disjoint_union(X: CellComplex, Y: CellComplex, tags: tuple[str, str] = ("a", "b")) -> CellComplex:
    ta, tb = tags
    top = max(X.top_dim, Y.top_dim)
    cells = [[f"{c}@{ta}" for c in X.cells_of(k)] + [f"{c}@{tb}" for c in Y.cells_of(k)] for k in range(top + 1)]
    bd = {}
    for Z, t in ((X, ta), (Y, tb)):
        for c, faces in Z.boundary_data().items():
            bd[f"{c}@{t}"] = {f"{f}@{t}": v for f, v in faces.items()}
    return CellComplex(cells, bd)


def product_id(a: str, b: str) -> str:
    return f"{a}*{b}"


def product(X: CellComplex, Y: CellComplex) -> CellComplex:
    """Cartesian product with ``D(a x b) = Da x b + (-1)^{|a|} a x Db``."""
    top = X.top_dim + Y.top_dim
    cells: list[list[str]] = [[] for _ in range(top + 1)]
    bd: dict[str, dict[str, int]] = {}
    for p in range(X.top_dim + 1):
        for q in range(Y.top_dim + 1):
            for a in X.cells_of(p):
                fa = X._faces[a]
                for b in Y.cells_of(q):
                    c = product_id(a, b)
                    cells[p + q].append(c)
                    chain: dict[str, int] = {}
                    for f, v in fa.items():
                        chain[product_id(f, b)] = v
                    sign = -1 if p % 2 else 1
                    for f, v in Y._faces[b].items():
                        chain[product_id(a, f)] = sign * v
                    if chain:
                        bd[c] = chain
    return CellComplex(cells, bd)


def double_id(cell: str, copy: int) -> str:
    return f"{cell}@{copy}"


def double(X: CellComplex, A: Subcomplex) -> tuple[CellComplex, CellularInvolution]:
    """Glue two copies of ``X`` along ``A``; the involution swaps the copies."""
    A.require_closed()

    def name(c: str, copy: int) -> str:
        return c if c in A else double_id(c, copy)

    cells: list[list[str]] = []
    bd: dict[str, dict[str, int]] = {}
    images: dict[str, tuple[int, str]] = {}
    for k in range(X.top_dim + 1):
        row: list[str] = []
        for c in X.cells_of(k):
            if c in A:
                row.append(c)
                if X._faces[c]:
                    bd[c] = dict(X._faces[c])
                continue
            for copy in (1, 2):
                cid = double_id(c, copy)
                row.append(cid)
                if X._faces[c]:
                    bd[cid] = {name(f, copy): v for f, v in X._faces[c].items()}
            images[double_id(c, 1)] = (1, double_id(c, 2))
            images[double_id(c, 2)] = (1, double_id(c, 1))
        cells.append(row)
    D = CellComplex(cells, bd)
    return D, CellularInvolution(D, images)


def free_indices(X: CellComplex, A: Subcomplex | None, k: int) -> list[int]:
    """Indices of k-cells carrying relative cochains (all cells when ``A`` is None)."""
    if A is None:
        return list(range(X.n(k)))
    return A.complement_indices(k)


def relative_coboundary(X: CellComplex, A: Subcomplex | None, k: int) -> RatMatrix:
    """``d_k`` restricted to cochains vanishing on ``A``."""
    d = X.coboundary(k)
    if A is None:
        return d
    return d.select(rows=free_indices(X, A, k + 1), cols=free_indices(X, A, k))
