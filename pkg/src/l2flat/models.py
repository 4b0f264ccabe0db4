"""Model complexes: circles, tori, cross-polytope spheres, cones, and end models.

Every builder returns a :class:`Model` carrying the complex and a dictionary of
named subcomplexes (``boundary``, ``fiber``, ``inner``, ...).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product as iproduct
from typing import Iterable, Sequence

from .complex import CellComplex, Subcomplex, ensure_valid, product, product_id, subcomplex_closure
from .errors import InvalidSpec, NotAnEndModel
from .hodge import WeightedComplex, harmonic_basis

KINDS = ("point", "circle", "interval", "torus", "sphere", "ball", "disk", "annulus",
         "punctured_torus", "end_model", "core_model")


@dataclass(frozen=True)
class ModelSpec:
    kind: str
    resolution: int = 3
    nu: int = 3
    m: int = 1
    shells: int = 1
    triangulated: bool = False

    def check(self) -> None:
        if self.kind not in KINDS:
            raise InvalidSpec(f"unknown model kind {self.kind!r}")
        if self.resolution < 3:
            raise InvalidSpec("circle resolution must be at least 3")
        if self.kind in ("sphere", "ball", "end_model", "core_model") and self.nu < 2:
            raise InvalidSpec("nu must be at least 2")
        if self.shells < 1:
            raise InvalidSpec("shell count must be at least 1")
        if self.m < 0:
            raise InvalidSpec("torus rank must be non-negative")
        if self.triangulated and not (self.kind in ("torus", "punctured_torus") and self.m == 2):
            raise InvalidSpec("only the rank-2 torus has a triangulated variant")


@dataclass
class Model:
    kind: str
    complex: CellComplex
    subcomplexes: dict[str, Subcomplex] = field(default_factory=dict)
    # per cell: ids of the factor cells (sphere, interval, torus) for end models
    factors: dict[str, tuple[str, str, str]] = field(default_factory=dict)
    dimension: int | None = None

    def sub(self, name: str) -> Subcomplex:
        return self.subcomplexes[name]


# ---------------------------------------------------------------------------
# simplicial building blocks


def simplicial(simplices: Iterable[Sequence[int]], label) -> tuple[CellComplex, dict[tuple[int, ...], str]]:
    """Complex generated by ``simplices`` (vertex tuples) and all their faces.

    ``label(simplex)`` names a cell.  The boundary of ``[v_0..v_k]`` (sorted
    by vertex index) is ``sum_i (-1)^i [.. v_i omitted ..]``.
    """
    faces: set[tuple[int, ...]] = set()
    for s in simplices:
        s = tuple(sorted(s))
        for k in range(1, len(s) + 1):
            faces.update(combinations(s, k))
    top = max(len(s) for s in faces) - 1
    by_dim = [sorted(s for s in faces if len(s) == k + 1) for k in range(top + 1)]
    names = {s: label(s) for s in faces}
    bd = {}
    for k in range(1, top + 1):
        for s in by_dim[k]:
            bd[names[s]] = {names[s[:i] + s[i + 1:]]: (-1) ** i for i in range(len(s))}
    X = CellComplex([[names[s] for s in ss] for ss in by_dim], bd)
    return X, names


def point(name: str = "p") -> CellComplex:
    return CellComplex([[name]])


def circle(resolution: int = 3, prefix: str = "c") -> CellComplex:
    n = resolution
    edges = [(i, (i + 1) % n) for i in range(n)]
    X, _ = simplicial(edges, lambda s: prefix + "".join(str(v) for v in s) if len(s) == 1
                      else f"{prefix}{s[0]}_{s[1]}")
    return X


def interval(segments: int = 1, prefix: str = "i") -> CellComplex:
    cells = [[f"{prefix}{j}" for j in range(segments + 1)], [f"{prefix}{j}_{j + 1}" for j in range(segments)]]
    bd = {f"{prefix}{j}_{j + 1}": {f"{prefix}{j + 1}": 1, f"{prefix}{j}": -1} for j in range(segments)}
    return CellComplex(cells, bd)


def _xlabel(prefix: str, nu: int):
    # vertex 2a is +e_a, 2a+1 is -e_a; vertex 2nu is the cone apex
    def name(v: int) -> str:
        if v == 2 * nu:
            return "c"
        return f"{'+' if v % 2 == 0 else '-'}{v // 2}"

    return lambda s: prefix + "".join(name(v) for v in s)


def _cross_polytope_facets(nu: int) -> list[tuple[int, ...]]:
    return [tuple(2 * a + sgn for a, sgn in enumerate(signs)) for signs in iproduct((0, 1), repeat=nu)]


def sphere(nu: int, prefix: str = "s") -> CellComplex:
    """Boundary of the nu-dimensional cross-polytope (a (nu-1)-sphere, 2nu vertices)."""
    X, _ = simplicial(_cross_polytope_facets(nu), _xlabel(prefix, nu))
    return X


def ball(nu: int, prefix: str = "s") -> tuple[CellComplex, Subcomplex, str]:
    """Cone on ``sphere(nu)``; returns the complex, its boundary sphere and the apex id."""
    apex = 2 * nu
    facets = [f + (apex,) for f in _cross_polytope_facets(nu)]
    label = _xlabel(prefix, nu)
    X, names = simplicial(facets, label)
    boundary = [names[s] for s in names if apex not in s]
    return X, Subcomplex(X, boundary), label((apex,))


def triangulated_torus(prefix: str = "t") -> CellComplex:
    """3x3 grid torus split into 18 triangles."""
    def v(i, j):
        return 3 * (i % 3) + (j % 3)

    tris = []
    for i in range(3):
        for j in range(3):
            tris.append((v(i, j), v(i + 1, j), v(i + 1, j + 1)))
            tris.append((v(i, j), v(i, j + 1), v(i + 1, j + 1)))
    X, _ = simplicial(tris, lambda s: prefix + "_".join(str(x) for x in s))
    return X


def torus(m: int, resolution: int = 3) -> CellComplex:
    """``m``-fold product of circles; ``torus(0)`` is a point."""
    X = point("o")
    if m == 0:
        return X
    X = circle(resolution, "a0")
    for r in range(1, m):
        X = product(X, circle(resolution, f"a{r}"))
    return X


def _product_sub(X: CellComplex, parts: Sequence[Iterable[str]]) -> Subcomplex:
    ids = [product_id(a, b) for a, b in iproduct(*parts)] if len(parts) == 2 else \
        [product_id(product_id(a, b), c) for a, b, c in iproduct(*parts)]
    return Subcomplex(X, ids)


# ---------------------------------------------------------------------------


def build(spec: ModelSpec) -> Model:
    spec.check()
    kind = spec.kind
    res = spec.resolution
    if kind == "point":
        return Model(kind, point(), dimension=0)
    if kind == "circle":
        return Model(kind, circle(res), dimension=1)
    if kind == "interval":
        X = interval(spec.shells)
        return Model(kind, X, {"boundary": Subcomplex(X, ["i0", f"i{spec.shells}"]),
                               "start": Subcomplex(X, ["i0"]), "end": Subcomplex(X, [f"i{spec.shells}"])},
                     dimension=1)
    if kind == "torus":
        X = triangulated_torus() if spec.triangulated else torus(spec.m, res)
        return Model(kind, X, dimension=spec.m)
    if kind == "sphere":
        return Model(kind, sphere(spec.nu), dimension=spec.nu - 1)
    if kind in ("ball", "disk"):
        nu = 2 if kind == "disk" else spec.nu
        X, bd, apex = ball(nu)
        return Model(kind, X, {"boundary": bd, "apex": Subcomplex(X, [apex])}, dimension=nu)
    if kind == "annulus":
        C, I = circle(res), interval(spec.shells)
        X = product(C, I)
        last = f"i{spec.shells}"
        inner = _product_sub(X, [list(C), ["i0"]])
        outer = _product_sub(X, [list(C), [last]])
        return Model(kind, X, {"boundary": inner | outer, "inner": inner, "outer": outer}, dimension=2)
    if kind == "punctured_torus":
        T = triangulated_torus() if spec.triangulated else torus(2, res)
        hole = T.cells[2][0]
        keep = [c for c in T if c != hole]
        X = Subcomplex(T, keep).as_complex()
        circle_ids = subcomplex_closure(T, T.faces(hole)).selected
        return Model(kind, X, {"boundary": Subcomplex(X, circle_ids)}, dimension=2)
    if kind == "core_model":
        B, bd, apex = ball(spec.nu)
        T = torus(spec.m, res)
        X = product(B, T)
        return Model(kind, X, {
            "boundary": _product_sub(X, [bd.sorted_ids(), list(T)]),
            "fiber": _product_sub(X, [[apex], list(T)]),
        }, dimension=spec.nu + spec.m)
    if kind == "end_model":
        return _end_model(spec)
    raise InvalidSpec(f"unknown model kind {kind!r}")


def _end_model(spec: ModelSpec) -> Model:
    S = sphere(spec.nu)
    I = interval(spec.shells)
    T = torus(spec.m, spec.resolution)
    X = product(product(S, I), T)
    last = f"i{spec.shells}"
    factors = {}
    for a, b, c in iproduct(S, I, T):
        factors[product_id(product_id(a, b), c)] = (a, b, c)
    inner = _product_sub(X, [list(S), ["i0"], list(T)])
    outer = _product_sub(X, [list(S), [last], list(T)])
    fiber = _product_sub(X, [[S.cells[0][0]], ["i0"], list(T)])
    return Model("end_model", X, {"inner": inner, "outer": outer, "boundary": inner | outer, "fiber": fiber},
                 factors=factors, dimension=spec.nu + spec.m)


def model(kind: str, **params) -> Model:
    """Shorthand: ``model("end_model", nu=3, m=1, shells=3)``."""
    M = build(ModelSpec(kind, **params))
    ensure_valid(M.complex)
    return M


def _shell_index(interval_cell: str) -> int:
    # "i3" -> 3, "i3_4" -> 3 (radial edges sit at their inner endpoint)
    return int(interval_cell[1:].split("_")[0])


def radial_weights(M: Model, nu: int, r0=1, step=1) -> WeightedComplex:
    """Weight ``r^(nu - 1 - 2p + q)`` per cell of an end model.

    ``p`` is the dimension of the sphere and torus factors of the cell, ``q``
    that of its interval factor; ``r = r0 + step * shell`` with radial edges
    placed at their inner shell.
    """
    if M.kind != "end_model" or not M.factors:
        raise NotAnEndModel(f"radial weights need an end model, got {M.kind!r}")
    r0, step = Fraction(r0), Fraction(step)
    if r0 <= 0 or step <= 0:
        raise InvalidSpec("r0 and step must be positive")
    X = M.complex
    w = {}
    for cell, (a, b, c) in M.factors.items():
        p = _dim_in_factor(a) + _dim_in_factor(c, torus_factor=True)
        q = 1 if "_" in b else 0
        r = r0 + step * _shell_index(b)
        w[cell] = r ** (nu - 1 - 2 * p + q)
    # cell ids must all be present
    missing = [c for c in X if c not in w]
    if missing:
        raise NotAnEndModel(f"cell {missing[0]!r} has no product decomposition")
    return WeightedComplex(X, w)


def _dim_in_factor(cell: str, torus_factor: bool = False) -> int:
    if torus_factor:
        # torus cells are products of circle cells; circle edges carry "_"
        if cell == "o":
            return 0
        return sum(1 for part in cell.split("*") if "_" in part)
    # sphere simplices: "s" followed by signed axis labels, two characters per vertex
    return (len(cell) - 1) // 2 - 1


@dataclass(frozen=True)
class SweepRow:
    shells: int
    dim: int
    dim_unweighted: int


def sweep(nu: int, m: int, k: int, shell_counts: Sequence[int], r0=1, step=1,
          boundary: str = "both", resolution: int = 3) -> list[SweepRow]:
    """Relative harmonic dimension in degree ``k`` of truncated end models.

    ``boundary`` selects the relative condition: ``"both"`` (inner and outer
    shells) or ``"inner"``.  Rows follow the order of ``shell_counts``.
    """
    if boundary not in ("both", "inner"):
        raise InvalidSpec("boundary must be 'both' or 'inner'")
    rows = []
    for R in shell_counts:
        M = build(ModelSpec("end_model", resolution=resolution, nu=nu, m=m, shells=R))
        A = M.sub("boundary" if boundary == "both" else "inner")
        W = radial_weights(M, nu, r0, step)
        dim = harmonic_basis(W, k, "rel", A).dim
        flat = harmonic_basis(WeightedComplex.uniform(M.complex), k, "rel", A).dim
        rows.append(SweepRow(R, dim, flat))
    flats = {r.dim_unweighted for r in rows}
    if len(flats) > 1:
        raise ArithmeticError(f"unweighted dimension changed with truncation depth: {sorted(flats)}")
    return rows
