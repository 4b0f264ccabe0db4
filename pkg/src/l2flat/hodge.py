"""Weighted cochains: codifferentials, Laplacians, harmonic spaces, Hodge splits.

The inner product on k-cochains is diagonal in the cell basis,
``<u, v>_k = sum_c w_c u_c v_c``.  With ``W_k`` the diagonal weight matrix the
codifferential is ``delta_k = W_{k-1}^{-1} d_{k-1}^T W_k``.

Functions taking an optional subcomplex ``A`` work on the relative complex of
cochains vanishing on ``A``; vectors are always reported in full cell
coordinates (zeros on ``A``).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .complex import (
    CellComplex,
    CellularInvolution,
    Subcomplex,
    free_indices,
    relative_coboundary,
)
from .errors import AsymmetricWeights, DegreeOutOfRange, DimMismatch, InvalidWeights
from .linalg import (
    RatMatrix,
    Vector,
    nullspace_basis,
    rank,
    solve,
    sub,
    vector,
    vstack,
)


class WeightedComplex:
    def __init__(self, complex: CellComplex, weights: Mapping[str, object]):
        self.complex = complex
        w = {}
        for c in complex:
            if c not in weights:
                raise InvalidWeights(f"cell {c!r} has no weight")
            v = Fraction(weights[c])
            if v <= 0:
                raise InvalidWeights(f"weight of {c!r} is not positive")
            w[c] = v
        extra = set(weights) - set(w)
        if extra:
            raise InvalidWeights(f"weight given for unknown cell {sorted(extra)[0]!r}")
        self.weights = w

    @classmethod
    def uniform(cls, complex: CellComplex) -> "WeightedComplex":
        return cls(complex, {c: 1 for c in complex})

    def weight_vector(self, k: int, A: Subcomplex | None = None) -> list[Fraction]:
        ids = self.complex.cells_of(k)
        return [self.weights[ids[i]] for i in free_indices(self.complex, A, k)]

    def W(self, k: int, A: Subcomplex | None = None) -> RatMatrix:
        return RatMatrix.diag(self.weight_vector(k, A))

    def W_inv(self, k: int, A: Subcomplex | None = None) -> RatMatrix:
        return RatMatrix.diag([1 / w for w in self.weight_vector(k, A)])


def inner(W: WeightedComplex, k: int, u: Sequence, v: Sequence) -> Fraction:
    """Weighted inner product of two full k-cochains."""
    w = W.weight_vector(k)
    if not len(u) == len(v) == len(w):
        raise DimMismatch("cochain length does not match the number of k-cells")
    return sum((wi * a * b for wi, a, b in zip(w, u, v) if a and b), Fraction(0))


def _embed(X: CellComplex, A: Subcomplex | None, k: int, v: Sequence) -> Vector:
    if A is None:
        return vector(v)
    out = [Fraction(0)] * X.n(k)
    for i, x in zip(free_indices(X, A, k), v):
        out[i] = x
    return tuple(out)


def _restrict(X: CellComplex, A: Subcomplex | None, k: int, v: Sequence) -> Vector:
    if A is None:
        return vector(v)
    return tuple(Fraction(v[i]) for i in free_indices(X, A, k))


def _check_closed(A: Subcomplex | None) -> None:
    if A is not None:
        A.require_closed()


def codifferential(W: WeightedComplex, k: int, A: Subcomplex | None = None) -> RatMatrix:
    """``delta_k : C^k -> C^{k-1}``, the adjoint of ``d_{k-1}``."""
    X = W.complex
    if not 1 <= k <= X.top_dim:
        raise DegreeOutOfRange(f"codifferential needs 1 <= k <= {X.top_dim}, got {k}")
    _check_closed(A)
    d = relative_coboundary(X, A, k - 1)
    return W.W_inv(k - 1, A) @ d.T @ W.W(k, A)


def laplacian(W: WeightedComplex, k: int, A: Subcomplex | None = None) -> RatMatrix:
    """``Delta_k = d_{k-1} delta_k + delta_{k+1} d_k`` (absent terms dropped)."""
    X = W.complex
    if not 0 <= k <= X.top_dim:
        raise DegreeOutOfRange(f"laplacian needs 0 <= k <= {X.top_dim}, got {k}")
    _check_closed(A)
    n = len(free_indices(X, A, k))
    L = RatMatrix.zeros(n, n)
    if k >= 1:
        L = L + relative_coboundary(X, A, k - 1) @ codifferential(W, k, A)
    if k < X.top_dim:
        L = L + codifferential(W, k + 1, A) @ relative_coboundary(X, A, k)
    return L


@dataclass(frozen=True)
class HarmonicBasis:
    degree: int
    condition: str
    vectors: tuple

    @property
    def dim(self) -> int:
        return len(self.vectors)


def harmonic_basis(W: WeightedComplex, k: int, condition: str = "abs", A: Subcomplex | None = None) -> HarmonicBasis:
    """Basis of ``ker d_k  ∩  ker delta_k``.

    ``condition="abs"`` uses the full cochain complex of ``X`` (``A`` is only
    checked for closure); ``condition="rel"`` uses cochains vanishing on ``A``.
    The kernel is taken of the stacked matrix ``[d_k ; d_{k-1}^T W_k]``, which
    has the same kernel as ``[d_k ; delta_k]``.
    """
    if condition not in ("abs", "rel"):
        raise ValueError(f"condition must be 'abs' or 'rel', not {condition!r}")
    _check_closed(A)
    X = W.complex
    if not 0 <= k <= X.top_dim:
        return HarmonicBasis(k, condition, ())
    R = A if condition == "rel" else None
    d = relative_coboundary(X, R, k)
    blocks = [d]
    if k >= 1:
        blocks.append(relative_coboundary(X, R, k - 1).T @ W.W(k, R))
    kernel = nullspace_basis(vstack(blocks))
    return HarmonicBasis(k, condition, tuple(_embed(X, R, k, v) for v in kernel.basis))


@dataclass(frozen=True)
class HodgeSplit:
    """``v = harmonic + exact + coexact`` with ``exact = d b`` and ``coexact = delta c``."""

    harmonic: Vector
    exact: Vector
    coexact: Vector
    exact_potential: Vector
    coexact_potential: Vector

    def parts(self) -> tuple[Vector, Vector, Vector]:
        return self.harmonic, self.exact, self.coexact


class HodgeSplitter:
    """Orthogonal Hodge decomposition of k-cochains for a fixed weighting.

    The exact part solves ``(d^T W d) b = d^T W v`` with ``d = d_{k-1}``; the
    coexact part solves ``(d W^{-1} d^T) c' = d v`` with ``d = d_k`` and is
    ``W^{-1} d^T c'``.  Both systems are consistent and solved exactly.
    """

    def __init__(self, W: WeightedComplex, k: int, A: Subcomplex | None = None):
        X = W.complex
        if not 0 <= k <= X.top_dim:
            raise DegreeOutOfRange(f"degree {k} outside 0..{X.top_dim}")
        _check_closed(A)
        self.W, self.k, self.A = W, k, A
        self.X = X
        self.n = len(free_indices(X, A, k))
        Wk = W.W(k, A)
        self._Winv = W.W_inv(k, A)
        self._down = relative_coboundary(X, A, k - 1) if k >= 1 else RatMatrix.zeros(self.n, 0)
        self._up = relative_coboundary(X, A, k) if k < X.top_dim else RatMatrix.zeros(0, self.n)
        self._dTW = self._down.T @ Wk
        self._L_down = self._dTW @ self._down
        self._L_up = self._up @ self._Winv @ self._up.T
        self._wk1 = W.weight_vector(k + 1, A) if k < X.top_dim else []

    def split_many(self, cochains: Sequence[Sequence]) -> list[HodgeSplit]:
        X, A, k = self.X, self.A, self.k
        for v in cochains:
            if len(v) != X.n(k):
                raise DimMismatch(f"expected a {k}-cochain with {X.n(k)} entries, got {len(v)}")
        vs = [_restrict(X, A, k, v) for v in cochains]
        if self._down.cols:
            bs = solve(self._L_down, [self._dTW.apply(v) for v in vs])
        else:
            bs = [()] * len(vs)
        if self._up.rows:
            cps = solve(self._L_up, [self._up.apply(v) for v in vs])
        else:
            cps = [()] * len(vs)
        out = []
        for v, b, cp in zip(vs, bs, cps):
            ex = self._down.apply(b) if b else (Fraction(0),) * self.n
            co = self._Winv.apply(self._up.T.apply(cp)) if cp else (Fraction(0),) * self.n
            h = sub(sub(v, ex), co)
            c = tuple(x / w for x, w in zip(cp, self._wk1))
            out.append(HodgeSplit(
                harmonic=_embed(X, A, k, h),
                exact=_embed(X, A, k, ex),
                coexact=_embed(X, A, k, co),
                exact_potential=_embed(X, A, k - 1, b) if k >= 1 else (),
                coexact_potential=_embed(X, A, k + 1, c) if k < X.top_dim else (),
            ))
        return out

    def split(self, v: Sequence) -> HodgeSplit:
        return self.split_many([v])[0]

    def rank_exact(self) -> int:
        return rank(self._down)

    def rank_coexact(self) -> int:
        return rank(self._up)


def hodge_split(W: WeightedComplex, k: int, v: Sequence, A: Subcomplex | None = None) -> HodgeSplit:
    return HodgeSplitter(W, k, A).split(v)


def is_harmonic(W: WeightedComplex, k: int, v: Sequence, A: Subcomplex | None = None) -> bool:
    X = W.complex
    r = _restrict(X, A, k, v)
    if k < X.top_dim and any(relative_coboundary(X, A, k).apply(r)):
        return False
    if k >= 1 and any(codifferential(W, k, A).apply(r)):
        return False
    return True


def double_split(W: WeightedComplex, sigma: CellularInvolution, k: int) -> tuple[int, int]:
    """Dimensions of the sigma-invariant and anti-invariant harmonic k-cochains."""
    X = W.complex
    for c in X:
        s, t = sigma.image(c)
        if W.weights[c] != W.weights[t]:
            raise AsymmetricWeights(f"weights of {c!r} and {t!r} differ")
    H = harmonic_basis(W, k, "abs")
    if not H.vectors:
        return 0, 0
    n = X.n(k)
    basis = RatMatrix.from_columns(H.vectors, n)
    S = sigma.cochain_matrix(k)
    image = S @ basis
    inv = nullspace_basis(image - basis).dim
    anti = nullspace_basis(image + basis).dim
    return inv, anti


@dataclass(frozen=True)
class DualityRow:
    degree: int
    abs_dim: int
    rel_dim: int

    @property
    def equal(self) -> bool:
        return self.abs_dim == self.rel_dim


def duality_check(W: WeightedComplex, boundary: Subcomplex | None, n: int | None = None) -> list[DualityRow]:
    """Compare ``dim H^k_abs`` with ``dim H^{n-k}_rel`` for every k.

    ``boundary`` is the boundary subcomplex of the (orientable) model, or None
    for a closed model.
    """
    X = W.complex
    n = X.top_dim if n is None else n
    rows = []
    for k in range(n + 1):
        a = harmonic_basis(W, k, "abs", boundary).dim
        r = harmonic_basis(W, n - k, "rel", boundary).dim if boundary is not None else harmonic_basis(W, n - k, "abs").dim
        rows.append(DualityRow(k, a, r))
    return rows


def harmonic_dims(W: WeightedComplex, condition: str = "abs", A: Subcomplex | None = None) -> tuple[int, ...]:
    return tuple(harmonic_basis(W, k, condition, A).dim for k in range(W.complex.top_dim + 1))


def orthogonality_defects(W: WeightedComplex, k: int, split: HodgeSplit) -> tuple[Fraction, Fraction, Fraction]:
    """Pairwise weighted inner products (h, ex), (h, co), (ex, co)."""
    h, e, c = split.parts()
    return inner(W, k, h, e), inner(W, k, h, c), inner(W, k, e, c)

