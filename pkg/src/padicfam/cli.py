"""Command-line front end.

One logical operation per invocation, deterministic stdout, exit code 0 on
success, 1 on a domain error (reported on stderr), 2 on usage errors.
Ring parameters travel inside series files; formats that are
ring-agnostic (modules, element tokens) take them from flags.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction

from .errors import PadicError
from .modules import (
    lambda_constancy_sweep,
    module_from_text,
    mu_zero_criterion,
    specialize_at,
)
from .padic import RingParams
from .pseudo import (
    PseudoRep,
    check_wiles_relations,
    glue_crt,
    matrix_rep_from_text,
    reconstruct,
    sample_reduced_words,
)
from .qexp import (
    check_edixhoven_window,
    check_supersingular,
    check_up_square_condition,
    family_from_manifest,
    ingest_qexp,
    interpolate_family,
    slope_of,
)
from .series import newton_interpolate, series_from_text, series_to_text
from .weights import classical_points


def _bool(x) -> str:
    return "true" if x else "false"


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _ring_args(sub, *, trunc: bool = True, disk: bool = False):
    sub.add_argument("--prime", type=int, required=True, help="the odd prime p")
    sub.add_argument("--ram-index", type=int, default=1, help="ramification index e")
    sub.add_argument("--precision", type=int, default=8, help="pi-adic digits N")
    if trunc:
        sub.add_argument("--trunc-u", type=int, default=32, help="truncation order in U")
        sub.add_argument("--trunc-s", type=int, default=32, help="truncation order in S")
    if disk:
        sub.add_argument("--k0", type=int, default=0, help="disk centre weight")
        sub.add_argument(
            "--e0-exp", type=int, default=0, help="scale valuation in pi-digits"
        )


def _params(args) -> RingParams:
    return RingParams(args.prime, args.ram_index, args.precision)


def _fmt_mu(mu: Fraction) -> str:
    return str(mu)


# -- handlers ----------------------------------------------------------------


def _cmd_invariants(args) -> int:
    f = series_from_text(_read(args.series))
    print(f"mu={_fmt_mu(f.mu_invariant())} lambda={f.lambda_invariant()}")
    return 0


def _cmd_wprep(args) -> int:
    f = series_from_text(_read(args.series))
    w = f.weierstrass_prep()
    print(f"mu={_fmt_mu(w.mu)} lambda={w.lam}")
    print(f"P: {w.distinguished.literal()}")
    print(f"unit: {w.unit.literal()}")
    return 0


def _cmd_evaluate(args) -> int:
    f = series_from_text(_read(args.series))
    u = f.params.parse(args.at)
    value = f.evaluate(u)
    out = value.token()
    if value.precision != f.params.prec:
        out += f" prec={value.precision}"
    print(out)
    return 0


def _cmd_interpolate(args) -> int:
    lines = [
        ln for ln in _read(args.points).splitlines() if ln.strip() and not ln.startswith("#")
    ]
    head = lines[0].split()
    params = RingParams(int(head[0]), int(head[1]), int(head[2]))
    pts = []
    for ln in lines[1:]:
        toks = ln.split()
        pts.append((params.parse(toks[0]), params.parse(toks[1])))
    poly = newton_interpolate(params, pts, order=args.trunc_u, k0=args.k0, e0_exp=args.e0_exp)
    sys.stdout.write(series_to_text(poly))
    return 0


def _cmd_classical_points(args) -> int:
    cps = classical_points(
        args.prime,
        args.k0,
        args.radius_exp,
        Fraction(args.slope),
        args.bound,
        strict=args.strict_disk,
    )
    for k in cps:
        print(k)
    return 0


def _cmd_glue(args) -> int:
    params = _params(args)
    f = glue_crt(
        params.parse(args.x),
        params.parse(args.y),
        params.parse(args.u1),
        params.parse(args.u2),
        order=args.trunc_u,
    )
    print(f.literal())
    return 0


def _cmd_specialize(args) -> int:
    params = _params(args)
    mod = module_from_text(
        _read(args.module),
        params,
        orders=None,
        k0=args.k0,
        e0_exp=args.e0_exp,
    )
    u = params.parse(args.at)
    result = specialize_at(mod, u)
    if isinstance(result, type(mod)):
        print(f"vars=1 free_rank={result.free_rank}")
        for g, m in result.torsion:
            print(f"{m} {g.literal()}")
        return 0
    print(f"rank={result.rank}")
    for piece in result.finite:
        vd = piece.valuation_digits()
        print(f"finite pi^{vd}" if vd is not None else f"finite pi^>={piece.precision}")
    return 0


def _cmd_sweep_lambda(args) -> int:
    params = _params(args)
    mod = module_from_text(_read(args.module), params, k0=args.k0, e0_exp=args.e0_exp)
    cps = classical_points(
        args.prime,
        args.k0,
        args.radius_exp,
        Fraction(args.slope),
        args.bound,
        strict=args.strict_disk,
    )
    report = lambda_constancy_sweep(mod, list(cps), args.k0, args.e0_exp, params=params)
    for k, lam in report.lambdas:
        print(f"k={k} lambda={lam}")
    print(f"generic_lambda={report.generic_lambda}")
    print("exceptional=" + " ".join(str(k) for k in report.exceptional))
    print(f"bound={report.degree_bound}")
    for k, flag in report.certified:
        print(f"certified k={k} {_bool(flag)}")
    return 0


def _cmd_mu_criterion(args) -> int:
    params = _params(args)
    mod = module_from_text(
        _read(args.module),
        params,
        orders=(args.trunc_u, args.trunc_s),
        k0=args.k0,
        e0_exp=args.e0_exp,
    )
    print(f"mu_zero={_bool(mu_zero_criterion(mod))}")
    return 0


def _cmd_pseudo_check(args) -> int:
    rep, params = matrix_rep_from_text(_read(args.rep))
    pi = PseudoRep.from_matrix_rep(rep)
    rng = random.Random(args.seed)
    words = sample_reduced_words(
        rep.t, args.max_len, max(args.pairs * 2, args.quads * 4, args.singles), rng
    )
    tuples = []
    for i in range(args.singles):
        tuples.append((words[i % len(words)],))
    for i in range(args.pairs):
        tuples.append((words[(2 * i) % len(words)], words[(2 * i + 1) % len(words)]))
    for i in range(args.quads):
        tuples.append(tuple(words[(4 * i + j) % len(words)] for j in range(4)))
    report = check_wiles_relations(pi, tuples)
    print(report.summary())
    for v in report.violations:
        witness = ",".join(str(w) for w in v.words)
        print(f"violation {v.relation} at ({witness}): {v.lhs} != {v.rhs}")
    return 0


def _cmd_pseudo_reconstruct(args) -> int:
    rep, params = matrix_rep_from_text(_read(args.rep))
    pi = PseudoRep.from_matrix_rep(rep)
    res = reconstruct(pi, t=rep.t, search_len=args.search_len)
    print(f"sigma={res.sigma} tau={res.tau} mu={_fmt_mu(res.mu)}")
    print(f"unit={res.unit.token()}")
    for i, m in enumerate(res.rep.images, start=1):
        print(f"g{i} " + " ".join(x.token() for x in m))
    return 0


def _cmd_family_interpolate(args) -> int:
    fam = family_from_manifest(args.manifest)
    poly, report = interpolate_family(fam, args.n, order=args.order)
    sys.stdout.write(series_to_text(poly))
    print(
        f"power_bounded={_bool(report.power_bounded)} "
        f"max_denominator_exponent={report.max_denominator_exponent}"
    )
    for k, flag in report.nodes:
        print(f"node k={k} reproduced={_bool(flag)}")
    return 0


def _cmd_family_check_hyp(args) -> int:
    f = ingest_qexp(args.qexp)
    print(f"slope={slope_of(f)}")
    print(f"supersingular={_bool(check_supersingular(f))}")
    verdict = check_edixhoven_window(f)
    print(f"edixhoven={_bool(verdict.ok)} reason={verdict.reason}")
    sq = check_up_square_condition(f)
    print(f"up_square={'indeterminate' if sq is None else _bool(sq)}")
    return 0


# -- wiring ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="padicfam",
        description="finite-precision p-adic algebra toolkit",
    )
    subs = ap.add_subparsers(dest="command", required=True)

    s = subs.add_parser("invariants", help="mu and lambda of a series file")
    s.add_argument("series")
    s.set_defaults(fn=_cmd_invariants)

    s = subs.add_parser("wprep", help="Weierstrass preparation of a series file")
    s.add_argument("series")
    s.set_defaults(fn=_cmd_wprep)

    s = subs.add_parser("evaluate", help="evaluate a series file at a point")
    s.add_argument("series")
    s.add_argument("--at", required=True, help="element token")
    s.set_defaults(fn=_cmd_evaluate)

    s = subs.add_parser("interpolate", help="Newton interpolation through a points file")
    s.add_argument("points", help="file: header 'p e N', then 'u v' token lines")
    s.add_argument("--trunc-u", type=int, default=32)
    s.add_argument("--k0", type=int, default=0)
    s.add_argument("--e0-exp", type=int, default=0)
    s.set_defaults(fn=_cmd_interpolate)

    s = subs.add_parser("classical-points", help="enumerate classical weights in a disk")
    s.add_argument("--prime", type=int, required=True)
    s.add_argument("--k0", type=int, required=True)
    s.add_argument("--radius-exp", type=int, required=True)
    s.add_argument("--slope", default="0", help="slope bound alpha (rational)")
    s.add_argument("--bound", type=int, required=True)
    s.add_argument("--strict-disk", action="store_true",
                   help="use the strictly smaller disk (congruence one level deeper)")
    s.set_defaults(fn=_cmd_classical_points)

    s = subs.add_parser("glue", help="degree-1 glueing of two point values")
    _ring_args(s)
    s.add_argument("--x", required=True)
    s.add_argument("--y", required=True)
    s.add_argument("--u1", required=True)
    s.add_argument("--u2", required=True)
    s.set_defaults(fn=_cmd_glue)

    s = subs.add_parser("specialize", help="specialize a module file at a point")
    _ring_args(s, disk=True)
    s.add_argument("module")
    s.add_argument("--at", required=True, help="element token")
    s.set_defaults(fn=_cmd_specialize)

    s = subs.add_parser("sweep-lambda", help="lambda constancy sweep over classical points")
    _ring_args(s, disk=True)
    s.add_argument("module")
    s.add_argument("--radius-exp", type=int, required=True)
    s.add_argument("--slope", default="0")
    s.add_argument("--bound", type=int, required=True)
    s.add_argument("--strict-disk", action="store_true")
    s.set_defaults(fn=_cmd_sweep_lambda)

    s = subs.add_parser("mu-criterion", help="finite generation over the one-variable ring")
    _ring_args(s, disk=True)
    s.add_argument("module")
    s.set_defaults(fn=_cmd_mu_criterion)

    ps = subs.add_parser("pseudo", help="pseudo-representation operations")
    psubs = ps.add_subparsers(dest="pseudo_command", required=True)

    s = psubs.add_parser("check", help="Wiles relation check on sampled word tuples")
    s.add_argument("rep", help="matrix-representation file")
    s.add_argument("--max-len", type=int, default=4)
    s.add_argument("--pairs", type=int, default=60)
    s.add_argument("--quads", type=int, default=40)
    s.add_argument("--singles", type=int, default=10)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(fn=_cmd_pseudo_check)

    s = psubs.add_parser("reconstruct", help="rank-2 reconstruction from a matrix file")
    s.add_argument("rep")
    s.add_argument("--search-len", type=int, default=2)
    s.set_defaults(fn=_cmd_pseudo_reconstruct)

    fam = subs.add_parser("family", help="q-expansion family operations")
    fsubs = fam.add_subparsers(dest="family_command", required=True)

    s = fsubs.add_parser("interpolate", help="interpolate a_n across a family manifest")
    s.add_argument("manifest")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--order", type=int, default=32)
    s.set_defaults(fn=_cmd_family_interpolate)

    s = fsubs.add_parser("check-hyp", help="slope, supersingularity and window checks")
    s.add_argument("qexp")
    s.set_defaults(fn=_cmd_family_check_hyp)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except PadicError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
