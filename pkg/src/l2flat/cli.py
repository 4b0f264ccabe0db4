"""Command-line interface.

Every command prints ``key=value`` lines with sorted keys.  Exit status is 0 on
success, 1 on a domain error (``error=<Code>``) and 2 on a parse error.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence, TextIO

from . import complex as cx
from . import flatends as fe
from . import hodge, io, models, pairs
from .errors import DomainError, ParseError


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(f"{self.prog}: {message}")


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _complex(path: str) -> cx.CellComplex:
    return io.parse_complex(_read(path), source=path)


def _sub(path: str | None, X: cx.CellComplex) -> cx.Subcomplex | None:
    if path is None:
        return None
    return io.parse_subcomplex(_read(path), X, source=path)


def _weights(args, X: cx.CellComplex) -> hodge.WeightedComplex:
    if args.weights is None:
        if args.default_unit:
            raise ParseError("--default-unit requires --weights")
        return hodge.WeightedComplex.uniform(X)
    return io.parse_weights(_read(args.weights), X, default_unit=args.default_unit, source=args.weights)


def _vec(v) -> str:
    return ",".join(io.format_rational(x) for x in v)


def _idx(i: int) -> str:
    return f"{i:03d}"


# ---------------------------------------------------------------------------
# commands; each returns a dict of output values


def cmd_validate(args) -> dict:
    X = _complex(args.complex)
    report = cx.validate(X)
    out = {"ok": "true" if report.ok else "false", "violations": len(report.violations)}
    for i, v in enumerate(report.violations):
        out[f"violation_{_idx(i)}"] = f"dim={v.dim};cell={v.cell};reason={v.reason.replace(' ', '_')}"
    if not report.ok:
        out["error"] = "InvalidComplex"
        return out, 1
    return out


def cmd_betti(args) -> dict:
    X = cx.ensure_valid(_complex(args.complex))
    return {f"b{k}": b for k, b in enumerate(cx.betti_numbers(X))}


def cmd_euler(args) -> dict:
    X = cx.ensure_valid(_complex(args.complex))
    return {"euler": cx.euler(X)}


def cmd_harmonic(args) -> dict:
    X = cx.ensure_valid(_complex(args.complex))
    W = _weights(args, X)
    A = _sub(args.rel, X)
    condition = "rel" if A is not None else "abs"
    H = hodge.harmonic_basis(W, args.deg, condition, A)
    out = {"condition": condition, "degree": args.deg, "dim": H.dim, "cells": ",".join(X.cells_of(args.deg))}
    for i, v in enumerate(H.vectors):
        out[f"h{_idx(i)}"] = _vec(v)
    return out


def cmd_hodge_split(args) -> dict:
    X = cx.ensure_valid(_complex(args.complex))
    W = _weights(args, X)
    A = _sub(args.rel, X)
    v = io.parse_cochain(_read(args.cochain), X, args.deg, source=args.cochain)
    s = hodge.hodge_split(W, args.deg, v, A)
    defects = hodge.orthogonality_defects(W, args.deg, s)
    total = tuple(a + b + c for a, b, c in zip(*s.parts()))
    return {
        "cells": ",".join(X.cells_of(args.deg)),
        "degree": args.deg,
        "input": _vec(v),
        "harmonic": _vec(s.harmonic),
        "exact": _vec(s.exact),
        "coexact": _vec(s.coexact),
        "orthogonal": "true" if not any(defects) else "false",
        "sum_matches": "true" if total == tuple(v) else "false",
    }


def cmd_pair_audit(args) -> dict:
    X = cx.ensure_valid(_complex(args.complex))
    P = pairs.Pair(X, _sub(args.sub, X))
    r = pairs.les_audit(P)
    out = {"exact": "true" if r.exact else "false", "alternating_sum": r.alternating_sum}
    for k in range(X.top_dim + 1):
        out[f"rel_{k}"] = r.rel_dims[k]
        out[f"abs_{k}"] = r.abs_dims[k]
        out[f"sub_{k}"] = r.sub_dims[k]
        out[f"rank_i_{k}"] = r.rank_i[k]
        out[f"rank_j_{k}"] = r.rank_j[k]
        out[f"rank_b_{k}"] = r.rank_b[k]
    for node in r.failures():
        out[f"failure_{node.label}_{node.degree}"] = f"incoming={node.incoming_rank};kernel={node.kernel_dim}"
    return out


def cmd_im_rel_abs(args) -> dict:
    X = cx.ensure_valid(_complex(args.complex))
    P = pairs.Pair(X, _sub(args.sub, X))
    res = pairs.image_rel_to_abs(P, args.deg)
    out = {"degree": args.deg, "rank": res.rank, "cells": ",".join(X.cells_of(args.deg))}
    for i, v in enumerate(res.basis):
        out[f"basis{_idx(i)}"] = _vec(v)
    return out


def cmd_ker_pullback(args) -> dict:
    X = cx.ensure_valid(_complex(args.complex))
    T = _sub(args.fiber, X)
    return {"degree": args.deg, "dim": pairs.ker_pullback_cohomology(X, T, args.deg)}


def cmd_double(args) -> dict:
    X = cx.ensure_valid(_complex(args.complex))
    A = _sub(args.sub, X)
    D, sigma = cx.double(X, A)
    if args.weights is not None:
        base = _weights(args, X).weights
        W = hodge.WeightedComplex(D, {c: base[c.rsplit("@", 1)[0] if c not in X else c] for c in D})
    else:
        W = hodge.WeightedComplex.uniform(D)
    out = {"euler": cx.euler(D), "involution": "true" if sigma.is_involution() and sigma.is_chain_map() else "false"}
    for k, b in enumerate(cx.betti_numbers(D)):
        inv, anti = hodge.double_split(W, sigma, k)
        out[f"b{k}"] = b
        out[f"inv_{k}"] = inv
        out[f"anti_{k}"] = anti
    if args.out:
        Path(args.out).write_text(io.format_complex(D), encoding="utf-8")
        out["file"] = args.out
    return out


def _group(args) -> fe.LatticeGroup:
    return io.parse_group(_read(args.group), cap=args.cap, source=args.group)


def _matrix_str(g) -> str:
    return ";".join(",".join(str(x) for x in row) for row in g)


def cmd_group_closure(args) -> dict:
    G = _group(args)
    out = {"order": G.order, "rank": G.m}
    for i, g in enumerate(G.elements):
        out[f"element_{i:05d}"] = _matrix_str(g) if g else "()"
    return out


def cmd_equiv_betti(args) -> dict:
    G = _group(args)
    return {f"b{k}": b for k, b in enumerate(fe.invariant_bettis(G))}


def cmd_chi_equivariant(args) -> dict:
    return {"chi_equivariant": fe.chi_equivariant(_group(args))}


def cmd_q_end(args) -> dict:
    E = io.parse_end(args.end, cap=args.cap)
    return {"q": io.format_rational(fe.q_end(E)), "boundary_term": io.format_rational(fe.boundary_term(E))}


def cmd_chi_l2(args) -> dict:
    ends = [io.parse_end(e, cap=args.cap) for e in args.end]
    r = fe.chi_l2(args.chi, ends)
    return {
        "chi_l2": io.format_rational(r.chi_l2),
        "euler_form_integral": io.format_rational(r.euler_form_integral),
        "q_sum": io.format_rational(r.q_sum),
    }


def _int_list(text: str, flag: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise ParseError(f"{flag}: expected comma-separated integers, got {text!r}") from None


def cmd_chi_l2_warped(args) -> dict:
    betti = _int_list(args.betti, "--betti")
    if args.n % 2 == 0 and len(betti) != args.n:
        raise ParseError(f"--betti: expected {args.n} values (degrees 0..{args.n - 1}), got {len(betti)}")
    return {"chi_l2": fe.chi_l2_warped(args.chi, betti, args.case, args.n)}


def cmd_model(args) -> dict:
    spec = models.ModelSpec(args.kind, resolution=args.res, nu=args.nu, m=args.m, shells=args.shells,
                            triangulated=args.triangulated)
    M = models.build(spec)
    cx.ensure_valid(M.complex)
    W = models.radial_weights(M, args.nu, args.r0, args.step) if args.weights_out else None
    prefix = args.out
    path = f"{prefix}.cc"
    Path(path).write_text(io.format_complex(M.complex), encoding="utf-8")
    out = {"complex": path, "euler": cx.euler(M.complex)}
    for k in range(M.complex.top_dim + 1):
        out[f"cells_{k}"] = M.complex.n(k)
    for name, A in sorted(M.subcomplexes.items()):
        sp = f"{prefix}.{name}.sub"
        Path(sp).write_text(io.format_subcomplex(A), encoding="utf-8")
        out[f"sub_{name}"] = sp
    if W is not None:
        Path(args.weights_out).write_text(io.format_weights(W), encoding="utf-8")
        out["weights"] = args.weights_out
    return out


def cmd_sweep(args) -> dict:
    shells = _int_list(args.shells, "--shells")
    rows = models.sweep(args.nu, args.m, args.deg, shells, r0=args.r0, step=args.step,
                        boundary=args.boundary, resolution=args.res)
    out = {"boundary": args.boundary, "degree": args.deg, "m": args.m, "nu": args.nu}
    for i, r in enumerate(rows):
        out[f"row_{_idx(i)}"] = f"R={r.shells};dim={r.dim};dim_unweighted={r.dim_unweighted}"
    return out


def _fraction_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _ArgumentParser(prog="l2flat", description=__doc__.splitlines()[0])
    sp = p.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    def with_complex(name, fn, help):
        q = sp.add_parser(name, help=help)
        q.add_argument("complex")
        q.set_defaults(fn=fn)
        return q

    def with_weights(q):
        q.add_argument("--weights")
        q.add_argument("--default-unit", action="store_true")

    with_complex("validate", cmd_validate, "check incidences and boundary-of-boundary")
    with_complex("betti", cmd_betti, "rational Betti numbers")
    with_complex("euler", cmd_euler, "Euler characteristic")

    q = with_complex("harmonic", cmd_harmonic, "harmonic cochain basis")
    q.add_argument("--deg", type=int, required=True)
    q.add_argument("--rel")
    with_weights(q)

    q = with_complex("hodge-split", cmd_hodge_split, "Hodge decomposition of a cochain")
    q.add_argument("--deg", type=int, required=True)
    q.add_argument("--cochain", required=True)
    q.add_argument("--rel")
    with_weights(q)

    q = with_complex("pair-audit", cmd_pair_audit, "long exact sequence audit of a pair")
    q.add_argument("--sub", required=True)

    q = with_complex("im-rel-abs", cmd_im_rel_abs, "rank of H^k(X,A) -> H^k(X)")
    q.add_argument("--sub", required=True)
    q.add_argument("--deg", type=int, required=True)

    q = with_complex("ker-pullback", cmd_ker_pullback, "cohomology of cochains vanishing on a fiber")
    q.add_argument("--fiber", required=True)
    q.add_argument("--deg", type=int, required=True)

    q = with_complex("double", cmd_double, "double along a subcomplex and split by the involution")
    q.add_argument("--sub", required=True)
    q.add_argument("--out")
    with_weights(q)

    for name, fn, help in (("group-closure", cmd_group_closure, "close a set of GL(m,Z) generators"),
                           ("equiv-betti", cmd_equiv_betti, "invariant Betti numbers of the torus"),
                           ("chi-equivariant", cmd_chi_equivariant, "equivariant Euler characteristic")):
        q = sp.add_parser(name, help=help)
        q.add_argument("group")
        q.add_argument("--cap", type=int, default=fe.DEFAULT_CAP)
        q.set_defaults(fn=fn)

    q = sp.add_parser("q-end", help="end contribution q(E)")
    q.add_argument("--end", required=True)
    q.add_argument("--cap", type=int, default=fe.DEFAULT_CAP)
    q.set_defaults(fn=cmd_q_end)

    q = sp.add_parser("chi-l2", help="L2 Euler characteristic from chi(M) and the ends")
    q.add_argument("--chi", type=int, required=True)
    q.add_argument("--end", action="append", default=[])
    q.add_argument("--cap", type=int, default=fe.DEFAULT_CAP)
    q.set_defaults(fn=cmd_chi_l2)

    q = sp.add_parser("chi-l2-warped", help="L2 Euler characteristic for a warped-product end")
    q.add_argument("--chi", type=int, required=True)
    q.add_argument("--betti", required=True)
    q.add_argument("--case", choices=("cone", "shrinking"), required=True)
    q.add_argument("--n", type=int, required=True)
    q.set_defaults(fn=cmd_chi_l2_warped)

    q = sp.add_parser("model", help="write a model complex and its named subcomplexes")
    q.add_argument("kind", choices=models.KINDS)
    q.add_argument("--out", required=True, help="output prefix")
    q.add_argument("--res", type=int, default=3)
    q.add_argument("--nu", type=int, default=3)
    q.add_argument("--m", type=int, default=1)
    q.add_argument("--shells", type=int, default=1)
    q.add_argument("--triangulated", action="store_true")
    q.add_argument("--weights-out", help="radial weights file (end_model only)")
    q.add_argument("--r0", type=_fraction_arg, default=Fraction(1))
    q.add_argument("--step", type=_fraction_arg, default=Fraction(1))
    q.set_defaults(fn=cmd_model)

    q = sp.add_parser("sweep", help="relative harmonic dimension of end models across truncation depths")
    q.add_argument("--nu", type=int, required=True)
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--deg", type=int, required=True)
    q.add_argument("--shells", required=True, help="comma-separated shell counts")
    q.add_argument("--r0", type=_fraction_arg, default=Fraction(1))
    q.add_argument("--step", type=_fraction_arg, default=Fraction(1))
    q.add_argument("--boundary", choices=("both", "inner"), default="both")
    q.add_argument("--res", type=int, default=3)
    q.set_defaults(fn=cmd_sweep)
    return p


def emit(values: dict, out: TextIO) -> None:
    for key in sorted(values):
        out.write(f"{key}={values[key]}\n")


def run(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        result = args.fn(args)
    except ParseError as exc:
        emit({"error": "ParseError", "message": str(exc)}, out)
        return 2
    except DomainError as exc:
        emit({"error": exc.code, "message": str(exc)}, out)
        return 1
    values, status = result if isinstance(result, tuple) else (result, 0)
    emit(values, out)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
