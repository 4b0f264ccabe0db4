"""Cohomology of pairs and the long exact sequence

    ... -> H^k(X,A) --i--> H^k(X) --j*--> H^k(A) --b--> H^{k+1}(X,A) -> ...

``i`` extends relative cochains by zero, ``j*`` restricts to ``A`` and ``b``
extends a cocycle on ``A`` by zero, applies ``d`` and keeps the part off ``A``.
Every map is computed on quotient bases with its chain compatibility verified.
"""
from __future__ import annotations

from dataclasses import dataclass

from .complex import CellComplex, Subcomplex, free_indices, relative_coboundary
from .linalg import (
    Quotient,
    RatMatrix,
    Subspace,
    image_basis,
    induced_quotient_map,
    nullspace_basis,
    pivot_columns,
    rank,
)


@dataclass(frozen=True)
class Pair:
    X: CellComplex
    A: Subcomplex

    def __post_init__(self):
        if self.A.parent is not self.X:
            raise ValueError("subcomplex belongs to a different complex")
        self.A.require_closed()

    @property
    def top_dim(self) -> int:
        return self.X.top_dim


def _subcomplex_coboundary(X: CellComplex, A: Subcomplex, k: int) -> RatMatrix:
    return X.coboundary(k).select(rows=A.indices(k + 1), cols=A.indices(k))


def _cohomology(d_prev: RatMatrix, d_k: RatMatrix, n: int) -> Quotient:
    Z = nullspace_basis(d_k) if d_k.rows else Subspace.whole(n)
    B = image_basis(d_prev) if d_prev.cols else Subspace(n, ())
    return Quotient(Z, B, check=False)


def _selection(rows: int, cols: int, pairs) -> RatMatrix:
    data = [{} for _ in range(rows)]
    for i, j in pairs:
        data[i][j] = 1
    return RatMatrix(rows, cols, data)


class _LES:
    """Cohomology quotients and induced maps of a pair, built lazily per degree."""

    def __init__(self, P: Pair):
        self.P = P
        self._cache: dict = {}

    def _memo(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def rel(self, k: int) -> Quotient:
        X, A = self.P.X, self.P.A
        return self._memo(("rel", k), lambda: _cohomology(
            relative_coboundary(X, A, k - 1), relative_coboundary(X, A, k), len(free_indices(X, A, k))))

    def abs(self, k: int) -> Quotient:
        X = self.P.X
        return self._memo(("abs", k), lambda: _cohomology(X.coboundary(k - 1), X.coboundary(k), X.n(k)))

    def sub(self, k: int) -> Quotient:
        X, A = self.P.X, self.P.A
        return self._memo(("sub", k), lambda: _cohomology(
            _subcomplex_coboundary(X, A, k - 1), _subcomplex_coboundary(X, A, k), len(A.indices(k))))

    def i_cochain(self, k: int) -> RatMatrix:
        X, A = self.P.X, self.P.A
        free = free_indices(X, A, k)
        return _selection(X.n(k), len(free), ((f, j) for j, f in enumerate(free)))

    def j_cochain(self, k: int) -> RatMatrix:
        X, A = self.P.X, self.P.A
        idx = A.indices(k)
        return _selection(len(idx), X.n(k), enumerate(idx))

    def b_cochain(self, k: int) -> RatMatrix:
        X, A = self.P.X, self.P.A
        return X.coboundary(k).select(rows=free_indices(X, A, k + 1), cols=A.indices(k))

    def i(self, k: int) -> RatMatrix:
        return self._memo(("i", k), lambda: induced_quotient_map(self.i_cochain(k), self.rel(k), self.abs(k)))

    def j(self, k: int) -> RatMatrix:
        return self._memo(("j", k), lambda: induced_quotient_map(self.j_cochain(k), self.abs(k), self.sub(k)))

    def b(self, k: int) -> RatMatrix:
        return self._memo(("b", k), lambda: induced_quotient_map(self.b_cochain(k), self.sub(k), self.rel(k + 1)))


def relative_cohomology(P: Pair, k: int) -> int:
    """``dim H^k(X, A)`` from the complex of cochains vanishing on ``A``."""
    X, A = P.X, P.A
    if not 0 <= k <= X.top_dim:
        return 0
    n = len(free_indices(X, A, k))
    return n - rank(relative_coboundary(X, A, k)) - rank(relative_coboundary(X, A, k - 1))


def les_maps(P: Pair, k: int) -> tuple[RatMatrix, RatMatrix, RatMatrix]:
    """Matrices of ``i_k``, ``j*_k`` and ``b_k`` on echelonized cohomology bases."""
    L = _LES(P)
    return L.i(k), L.j(k), L.b(k)


@dataclass(frozen=True)
class NodeVerdict:
    label: str
    degree: int
    incoming_rank: int
    kernel_dim: int
    composition_zero: bool

    @property
    def exact(self) -> bool:
        return self.composition_zero and self.incoming_rank == self.kernel_dim


@dataclass(frozen=True)
class LesReport:
    rel_dims: tuple[int, ...]
    abs_dims: tuple[int, ...]
    sub_dims: tuple[int, ...]
    rank_i: tuple[int, ...]
    rank_j: tuple[int, ...]
    rank_b: tuple[int, ...]
    nodes: tuple[NodeVerdict, ...]

    @property
    def exact(self) -> bool:
        return all(n.exact for n in self.nodes)

    @property
    def alternating_sum(self) -> int:
        return sum((-1) ** k * (r - a + s) for k, (r, a, s) in enumerate(zip(self.rel_dims, self.abs_dims, self.sub_dims)))

    def failures(self) -> list[NodeVerdict]:
        return [n for n in self.nodes if not n.exact]


def _composes_to_zero(g: RatMatrix, f: RatMatrix) -> bool:
    if g.cols == 0 or f.rows == 0:
        return True
    return (g @ f).is_zero()


def les_audit(P: Pair) -> LesReport:
    """Ranks of every arrow and an exactness verdict at every node."""
    L = _LES(P)
    top = P.top_dim
    rel = tuple(L.rel(k).dim for k in range(top + 1))
    ab = tuple(L.abs(k).dim for k in range(top + 1))
    sb = tuple(L.sub(k).dim for k in range(top + 1))
    ri, rj, rb = [], [], []
    for k in range(top + 1):
        ri.append(rank(L.i(k)))
        rj.append(rank(L.j(k)))
        rb.append(rank(L.b(k)) if k < top else 0)
    nodes = []
    for k in range(top + 1):
        b_in = rb[k - 1] if k >= 1 else 0
        comp = _composes_to_zero(L.i(k), L.b(k - 1)) if k >= 1 else True
        nodes.append(NodeVerdict("H(X,A)", k, b_in, rel[k] - ri[k], comp))
        nodes.append(NodeVerdict("H(X)", k, ri[k], ab[k] - rj[k], _composes_to_zero(L.j(k), L.i(k))))
        comp = _composes_to_zero(L.b(k), L.j(k)) if k < top else True
        nodes.append(NodeVerdict("H(A)", k, rj[k], sb[k] - rb[k], comp))
    return LesReport(rel, ab, sb, tuple(ri), tuple(rj), tuple(rb), tuple(nodes))


@dataclass(frozen=True)
class ImageResult:
    rank: int
    basis: tuple


def image_rel_to_abs(P: Pair, k: int) -> ImageResult:
    """Rank of ``H^k(X,A) -> H^k(X)`` with representative cocycles supported off ``A``."""
    if not 0 <= k <= P.top_dim:
        return ImageResult(0, ())
    L = _LES(P)
    M = L.i(k)
    cols = pivot_columns(M)
    ext = L.i_cochain(k)
    reps = L.rel(k).reps
    basis = tuple(ext.apply(reps[j]) for j in cols)
    return ImageResult(len(cols), basis)


def ker_pullback_cohomology(X: CellComplex, T: Subcomplex, k: int) -> int:
    """``dim H^k`` of the subcomplex of cochains whose pullback to ``T`` vanishes."""
    T.require_closed()
    return relative_cohomology(Pair(X, T), k)


def les_compositions(P: Pair) -> dict[str, bool]:
    """Whether ``j*∘i``, ``b∘j*`` and ``i∘b`` vanish as matrices in every degree."""
    L = _LES(P)
    top = P.top_dim
    out = {"j_i": True, "b_j": True, "i_b": True}
    for k in range(top + 1):
        out["j_i"] &= _composes_to_zero(L.j(k), L.i(k))
        if k < top:
            out["b_j"] &= _composes_to_zero(L.b(k), L.j(k))
            out["i_b"] &= _composes_to_zero(L.i(k + 1), L.b(k))
    return out
