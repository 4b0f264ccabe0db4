"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines inline; they
are also repeated in the terminal summary.
"""
import io
import random
import time
from fractions import Fraction
from itertools import product as iproduct
from pathlib import Path

import pytest

from l2flat.cli import run
from l2flat.complex import Subcomplex, betti_numbers, double, product, subcomplex_closure
from l2flat.flatends import (
    EndDescriptor,
    chi_equivariant,
    chi_l2,
    chi_l2_warped,
    closure,
    exterior_traces,
    invariant_bettis,
    lefschetz,
    q_end,
)
from l2flat.errors import ParabolicEnd
from l2flat.hodge import (
    HodgeSplitter,
    WeightedComplex,
    double_split,
    duality_check,
    harmonic_basis,
    harmonic_dims,
    inner,
)
from l2flat.models import interval, model, sphere, torus, triangulated_torus
from l2flat.pairs import Pair, image_rel_to_abs, ker_pullback_cohomology, les_audit

from cli_cases import CASES
from conftest import random_weights
from oracles import GROUP_SUITE, averaging_projector_rank, det_identity_minus, warped_direct

RESULTS: list[str] = []
HERE = Path(__file__).parent


def report(number: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}" + (f"  ({detail})" if detail else "")
    RESULTS.append(line)
    print(line)
    assert ok, line


def _pairs():
    out = []

    def add(name, X, A):
        out.append((name, Pair(X, A)))

    for kind, params in [("disk", {}), ("ball", {"nu": 3}), ("annulus", {}), ("punctured_torus", {})]:
        M = model(kind, **params)
        add(f"{kind}/boundary", M.complex, M.sub("boundary"))
    ann = model("annulus")
    add("annulus/inner", ann.complex, ann.sub("inner"))
    ball = model("ball", nu=3)
    add("ball3/apex", ball.complex, ball.sub("apex"))
    I = model("interval", shells=2)
    add("interval/boundary", I.complex, I.sub("boundary"))
    add("interval/start", I.complex, I.sub("start"))
    T = triangulated_torus()
    add("torus/triangle", T, subcomplex_closure(T, [T.cells_of(2)[0]]))
    add("torus/vertex", T, Subcomplex(T, [T.cells_of(0)[0]]))
    T2 = torus(2)
    add("torus2/meridian", T2, Subcomplex(T2, [c for c in T2 if c.endswith("*a10")]))
    add("torus2/empty", T2, Subcomplex(T2, []))
    add("torus2/all", T2, Subcomplex(T2, list(T2)))
    S3 = sphere(3)
    add("sphere3/equator", S3, subcomplex_closure(S3, [c for c in S3.cells_of(1) if "2" not in c]))
    add("sphere3/hemisphere", S3, subcomplex_closure(S3, [c for c in S3.cells_of(2) if "+2" in c]))
    S4 = sphere(4)
    add("sphere4/facet", S4, subcomplex_closure(S4, [S4.cells_of(3)[0]]))
    cyl3 = product(sphere(3), interval(1))
    add("sphere3xI/ends", cyl3, Subcomplex(cyl3, [c for c in cyl3 if c.endswith("*i0") or c.endswith("*i1")]))
    T3 = torus(3)
    add("torus3/subtorus", T3, Subcomplex(T3, [c for c in T3 if c.endswith("*a20")]))
    core = model("core_model", nu=3, m=1)
    add("core31/fiber", core.complex, core.sub("fiber"))
    add("core31/boundary", core.complex, core.sub("boundary"))
    end = model("end_model", nu=3, m=1, shells=2)
    add("end312/inner", end.complex, end.sub("inner"))
    add("end312/boundary", end.complex, end.sub("boundary"))
    end2 = model("end_model", nu=2, m=2, shells=1)
    add("end221/outer", end2.complex, end2.sub("outer"))
    return out


def test_criterion_01_structural_exactness():
    t0 = time.time()
    pairs = _pairs()
    bad = []
    for name, P in pairs:
        R = les_audit(P)
        if not R.exact or R.alternating_sum != 0:
            bad.append(name)
    elapsed = time.time() - t0
    report(1, "long exact sequence exact at every node", len(pairs) >= 20 and not bad and elapsed < 60,
           f"{len(pairs)} pairs, {elapsed:.1f}s, failures={bad}")


def test_criterion_02_weight_independence():
    t0 = time.time()
    rng = random.Random(20261019)
    bad = []
    for name, X in [("torus2", torus(2)), ("sphere3", sphere(3)), ("annulus", model("annulus").complex),
                    ("end_model313", model("end_model", nu=3, m=1, shells=3).complex)]:
        b = betti_numbers(X)
        for _ in range(50):
            if harmonic_dims(WeightedComplex(X, random_weights(X, rng))) != b:
                bad.append(name)
    elapsed = time.time() - t0
    report(2, "harmonic dimensions equal Betti numbers under 200 random weightings",
           not bad and elapsed < 120, f"{elapsed:.1f}s, failures={bad}")


def test_criterion_03_hodge_decomposition():
    t0 = time.time()
    rng = random.Random(7)
    plan = [("torus2", torus(2), 30), ("sphere3", sphere(3), 30), ("annulus", model("annulus").complex, 25),
            ("end_model313", model("end_model", nu=3, m=1, shells=3).complex, 15)]
    count, bad = 0, []
    for name, X, total in plan:
        done = 0
        while done < total:
            W = WeightedComplex(X, random_weights(X, rng))
            k = rng.randint(0, X.top_dim)
            S = HodgeSplitter(W, k)
            h = harmonic_basis(W, k).dim
            if X.n(k) != h + S.rank_exact() + S.rank_coexact():
                bad.append((name, k, "bookkeeping"))
            batch = min(5, total - done)
            vs = [tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(X.n(k))) for _ in range(batch)]
            for v, s in zip(vs, S.split_many(vs)):
                hp, ex, co = s.parts()
                if tuple(a + b + c for a, b, c in zip(hp, ex, co)) != v:
                    bad.append((name, k, "sum"))
                if inner(W, k, hp, ex) or inner(W, k, hp, co) or inner(W, k, ex, co):
                    bad.append((name, k, "orthogonality"))
                count += 1
            done += batch
    elapsed = time.time() - t0
    report(3, "Hodge splits exactly orthogonal, summing to the input",
           count == 100 and not bad and elapsed < 120, f"{count} cochains, {elapsed:.1f}s, failures={bad}")


def test_criterion_04_doubling():
    rng = random.Random(4)
    bad = []
    cases = [("interval", model("interval")), ("disk", model("disk")), ("annulus", model("annulus"))]
    for name, M in cases:
        X, A = M.complex, M.sub("boundary")
        D, sigma = double(X, A)
        base = random_weights(X, rng)
        # weights symmetric under the swap: each copy inherits the weight of its original
        wd = {c: base[c.rsplit("@", 1)[0]] for c in D}
        for wname, WD, WX in [("uniform", WeightedComplex.uniform(D), WeightedComplex.uniform(X)),
                              ("random", WeightedComplex(D, wd), WeightedComplex(X, base))]:
            abs_dims = harmonic_dims(WX, "abs", A)
            rel_dims = harmonic_dims(WX, "rel", A)
            for k in range(X.top_dim + 1):
                if double_split(WD, sigma, k) != (abs_dims[k], rel_dims[k]):
                    bad.append((name, wname, k))
    report(4, "doubling splits into absolute and relative harmonic spaces", not bad, f"failures={bad}")


def test_criterion_05_duality():
    bad = []
    for kind, params in [("disk", {}), ("annulus", {}), ("ball", {"nu": 3}), ("core_model", {"nu": 3, "m": 1})]:
        M = model(kind, **params)
        rows = duality_check(WeightedComplex.uniform(M.complex), M.sub("boundary"))
        if not all(r.equal for r in rows):
            bad.append(kind)
    report(5, "absolute degree k matches relative degree n-k", not bad, f"failures={bad}")


@pytest.fixture(scope="module")
def group_suite():
    return [(name, closure(gens, m=m)) for name, m, gens in GROUP_SUITE]


def test_criterion_06_lefschetz(group_suite):
    bad, count = [], 0
    for name, G in group_suite:
        for g in G.elements:
            count += 1
            alt = sum((-1) ** k * t for k, t in enumerate(exterior_traces(g)))
            if not alt == lefschetz(g) == det_identity_minus(g):
                bad.append(name)
    ok = not bad and all(G.order <= 10_000 and G.m <= 6 for _, G in group_suite)
    report(6, "alternating exterior trace equals det(I - g)", ok,
           f"{len(group_suite)} groups, {count} elements, failures={sorted(set(bad))}")


def test_criterion_07_equivariant_oracle(group_suite):
    bad = []
    for name, G in group_suite:
        ranks = tuple(averaging_projector_rank(G.elements, k) for k in range(G.m + 1))
        if invariant_bettis(G) != ranks or chi_equivariant(G) != sum((-1) ** k * r for k, r in enumerate(ranks)):
            bad.append(name)
    report(7, "invariant Betti numbers equal averaging-projector ranks", not bad,
           f"{len(group_suite)} groups, failures={bad}")


def test_criterion_08_paper_constants():
    qs = [q_end(EndDescriptor(3, 3, cover_order=c)) for c in (1, 2, 3, 5)]
    ok = qs == [0, Fraction(-1, 2), Fraction(-2, 3), Fraction(-4, 5)]
    ok &= all(q_end(EndDescriptor(nu, n)) == 0 for n in range(2, 7) for nu in range(2, n))
    # Two planar ends glued along a neck: the L2 Euler characteristic is 0
    # while the curvature integral is -2, so the end formulas must not be used
    # for parabolic ends.  The refusal is the regression being guarded here.
    try:
        chi_l2(0, [EndDescriptor(2, 2, parabolic=True), EndDescriptor(2, 2, parabolic=True)])
        refused = False
    except ParabolicEnd:
        refused = True
    report(8, "q(E) constants and parabolic refusal", ok and refused, f"q={[str(q) for q in qs]}, refused={refused}")


def test_criterion_09_model_checks():
    t0 = time.time()
    pt = model("punctured_torus")
    a = image_rel_to_abs(Pair(pt.complex, pt.sub("boundary")), 1).rank
    b = []
    for m in (1, 2):
        core = model("core_model", nu=3, m=m)
        b.append(tuple(ker_pullback_cohomology(core.complex, core.sub("fiber"), k)
                       for k in range(core.complex.top_dim + 1)))
    ann = model("annulus")
    P = Pair(ann.complex, ann.sub("boundary"))
    c = tuple(image_rel_to_abs(P, k).rank for k in range(3))
    elapsed = time.time() - t0
    ok = a == 2 and all(not any(x) for x in b) and c == (0, 0, 0) and elapsed < 180
    report(9, "punctured torus, core models and cylinder", ok, f"a={a}, b={b}, c={c}, {elapsed:.1f}s")


def test_criterion_10_warped():
    bad, count = [], 0
    for n in (2, 4, 6):
        for betti in iproduct(range(4), repeat=n):
            for mode in ("cone", "shrinking"):
                for chi in (-2, 0, 3):
                    count += 1
                    if chi_l2_warped(chi, betti, mode, n) != warped_direct(chi, betti, mode, n):
                        bad.append((n, betti, mode, chi))
    report(10, "warped-product formulas match direct summation", not bad, f"{count} cases, failures={len(bad)}")


def test_criterion_11_cli_determinism(monkeypatch):
    monkeypatch.chdir(HERE / "data")
    bad = []
    for name, argv in CASES:
        outs = []
        for _ in range(2):
            buf = io.StringIO()
            status = run(argv, out=buf)
            outs.append("$ l2flat " + " ".join(argv) + "\n" + buf.getvalue() + f"exit={status}\n")
        golden = (HERE / "golden" / f"{name}.txt").read_text(encoding="utf-8")
        if outs[0] != outs[1] or outs[0] != golden:
            bad.append(name)
    report(11, "CLI transcripts byte-identical across runs and to golden files", not bad,
           f"{len(CASES)} transcripts, failures={bad}")
