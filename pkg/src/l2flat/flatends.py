"""End contributions for flat ends, evaluated exactly.

A finite group acting on a flat torus ``T`` of rank ``m`` is represented by its
action on ``H^1(T) = Z^m``, i.e. by unimodular integer matrices.  Cohomology
of ``T`` is the exterior algebra on ``H^1``, so the trace of ``g`` on
``H^k(T)`` is the k-th coefficient of ``det(I + x g)``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import CapExceeded, InvalidEnd, NonIntegerAverage, NotUnimodular, OddDimension, ParabolicEnd
from .linalg import determinant

IntMatrix = tuple  # tuple[tuple[int, ...], ...]

DEFAULT_CAP = 10_000


def int_matrix(rows: Iterable[Iterable[int]]) -> IntMatrix:
    M = tuple(tuple(int(x) for x in r) for r in rows)
    for r in M:
        if len(r) != len(M):
            raise ValueError("integer matrix must be square")
    return M


def identity(m: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(m)) for i in range(m))


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    bt = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(r, c)) for c in bt) for r in a) if a else ()


def det(g: IntMatrix) -> int:
    return determinant(g)


@dataclass(frozen=True)
class LatticeGroup:
    m: int
    generators: tuple = ()
    elements: tuple = field(default=(), compare=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @classmethod
    def trivial(cls, m: int) -> "LatticeGroup":
        return cls(m, (), (identity(m),))


def closure(generators: Sequence[Sequence[Sequence[int]]], cap: int = DEFAULT_CAP, m: int | None = None) -> LatticeGroup:
    """Breadth-first closure of ``generators`` under multiplication.

    Elements come back sorted lexicographically by their entries.  Raises
    :class:`CapExceeded` once more than ``cap`` elements have been found.
    """
    gens = [int_matrix(g) for g in generators]
    if m is None:
        if not gens:
            raise ValueError("rank m is required when there are no generators")
        m = len(gens[0])
    for g in gens:
        if len(g) != m:
            raise ValueError(f"generator of size {len(g)} in a rank-{m} group")
        if abs(det(g)) != 1:
            raise NotUnimodular(f"generator has determinant {det(g)}")
    e = identity(m)
    seen = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = matmul(x, g)
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise CapExceeded(f"group order exceeds cap {cap}")
                queue.append(y)
    return LatticeGroup(m, tuple(gens), tuple(sorted(seen)))


def exterior_traces(g: IntMatrix) -> tuple[int, ...]:
    """``(t_0, ..., t_m)`` with ``sum t_k x^k = det(I + x g)``.

    ``t_k`` is the sum of the principal k x k minors, i.e. the trace of the
    k-th exterior power.
    """
    m = len(g)
    out = [1]
    for k in range(1, m + 1):
        t = 0
        for idx in combinations(range(m), k):
            t += det(tuple(tuple(g[i][j] for j in idx) for i in idx))
        out.append(t)
    return tuple(out)


def lefschetz(g: IntMatrix) -> int:
    """``det(I - g)``, cross-checked against the alternating exterior trace."""
    m = len(g)
    value = det(tuple(tuple(int(i == j) - g[i][j] for j in range(m)) for i in range(m)))
    alt = sum((-1) ** k * t for k, t in enumerate(exterior_traces(g)))
    if value != alt:
        raise ArithmeticError(f"det(I-g)={value} but alternating trace sum is {alt}")
    return value


def _average(total: int, order: int, what: str) -> int:
    q = Fraction(total, order)
    if q.denominator != 1:
        raise NonIntegerAverage(f"{what} averages to {q}")
    return int(q)


def invariant_betti(G: LatticeGroup, k: int) -> int:
    """``dim H^k(T)^G``, the group average of the exterior traces."""
    if not 0 <= k <= G.m:
        return 0
    total = sum(exterior_traces(g)[k] for g in G.elements)
    value = _average(total, G.order, f"trace on H^{k}")
    if value < 0:
        raise NonIntegerAverage(f"invariant dimension in degree {k} is negative ({value})")
    return value


def invariant_bettis(G: LatticeGroup) -> tuple[int, ...]:
    return tuple(invariant_betti(G, k) for k in range(G.m + 1))


def chi_equivariant(G: LatticeGroup) -> int:
    """Equivariant Euler characteristic ``(1/|G|) sum_g det(I - g)``."""
    total = sum(lefschetz(g) for g in G.elements)
    value = _average(total, G.order, "det(I-g)")
    alt = sum((-1) ** k * b for k, b in enumerate(invariant_bettis(G)))
    if value != alt:
        raise ArithmeticError(f"equivariant Euler characteristic {value} disagrees with invariant Betti sum {alt}")
    return value


@dataclass(frozen=True)
class EndDescriptor:
    """One flat end: ``nu`` Euclidean directions, ambient dimension ``n``.

    ``group`` acts on ``H^1`` of the rank ``n - nu`` torus; ``cover_order`` is
    the order of the deck group used when ``nu == n``.
    """

    nu: int
    n: int
    group: LatticeGroup | None = None
    cover_order: int = 1
    parabolic: bool = False

    def __post_init__(self):
        if self.parabolic:
            if self.group is not None:
                raise InvalidEnd("parabolic ends carry no group data")
            return
        if self.nu < 2:
            raise InvalidEnd(f"nu must be at least 2, got {self.nu}")
        if self.n < self.nu:
            raise InvalidEnd(f"n={self.n} is smaller than nu={self.nu}")
        if self.cover_order < 1:
            raise InvalidEnd("cover order must be positive")
        if self.group is None:
            object.__setattr__(self, "group", LatticeGroup.trivial(self.n - self.nu))
        elif self.group.m != self.n - self.nu:
            raise InvalidEnd(f"group acts on rank {self.group.m}, expected n - nu = {self.n - self.nu}")

    @property
    def rank(self) -> int:
        return self.n - self.nu


def _require_nonparabolic(E: EndDescriptor) -> None:
    if E.parabolic:
        raise ParabolicEnd("no end formula is available for a parabolic end")


def q_end(E: EndDescriptor) -> Fraction:
    _require_nonparabolic(E)
    if E.nu == E.n:
        return Fraction(1, E.cover_order) - 1
    return Fraction(-chi_equivariant(E.group))


def boundary_term(E: EndDescriptor) -> Fraction:
    """Limit of the boundary integral at infinity of the end."""
    _require_nonparabolic(E)
    if E.nu < E.n:
        return Fraction(0)
    return Fraction(1, E.cover_order)


@dataclass(frozen=True)
class ChiL2Result:
    chi_l2: Fraction
    euler_form_integral: Fraction
    q_values: tuple

    @property
    def q_sum(self) -> Fraction:
        return sum(self.q_values, Fraction(0))


def chi_l2(chi_M: int, ends: Sequence[EndDescriptor]) -> ChiL2Result:
    """L^2 Euler characteristic of a manifold whose ends are all non-parabolic.

    Also returns ``chi_M - sum boundary_term`` (the integral of the Euler form)
    and checks that it plus the end contributions gives the same value.
    """
    for E in ends:
        _require_nonparabolic(E)
    value = Fraction(chi_M) - sum((chi_equivariant(E.group) for E in ends), 0)
    integral = Fraction(chi_M) - sum((boundary_term(E) for E in ends), Fraction(0))
    qs = tuple(q_end(E) for E in ends)
    if integral + sum(qs, Fraction(0)) != value:
        raise ArithmeticError("end bookkeeping does not close")
    return ChiL2Result(value, integral, qs)


def chi_l2_warped(chi_M: int, betti_boundary: Sequence[int], mode: str, n: int) -> int:
    """Euler characteristic for a warped-product end over ``dK`` in even dimension ``n``.

    ``mode="cone"`` (``f(r) = a r``) subtracts ``sum_{j<=k-2} (-1)^j b_j``;
    ``mode="shrinking"`` (``f' -> 0``) adds ``sum_{j<=k-1} (-1)^j b_j`` with
    ``k = n/2``.  The analytic hypotheses are the caller's responsibility.
    """
    if n % 2:
        raise OddDimension(f"dimension {n} is odd")
    if len(betti_boundary) != n:
        raise ValueError(f"expected {n} Betti numbers of the boundary, got {len(betti_boundary)}")
    k = n // 2
    if mode == "cone":
        return chi_M - sum((-1) ** j * betti_boundary[j] for j in range(k - 1))
    if mode == "shrinking":
        return chi_M + sum((-1) ** j * betti_boundary[j] for j in range(k))
    raise ValueError(f"mode must be 'cone' or 'shrinking', not {mode!r}")
