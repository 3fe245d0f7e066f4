"""Command-line interface: ``hyperkl <subcommand> ...`` (or ``python -m hyperkl``).

Exit status: 0 success, 1 a check failed, 2 usage or precondition error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from pathlib import Path
from typing import Sequence

from . import classify, kloosterman as klm, matgroup as mg
from .cache import cache_dlog
from .checks import run_all
from .cyclotomic import CycloError, CycloRing, chi2_minus_one, gauss_sum, make_reduction
from .field import FieldCtx, FieldError, ff_make

log = logging.getLogger("hyperkl")

USAGE_ERRORS = (FieldError, CycloError, klm.KloostermanError, mg.MatGroupError, classify.ClassifyError)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
        log.info("wrote %s", out)
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _field(args) -> FieldCtx:
    ctx = ff_make(args.p, args.k)
    if not args.no_cache:
        path, status = cache_dlog(ctx, args.cache_dir)
        log.info("dlog cache %s: %s", status, path)
    return ctx


def _check_n(n: int, lo: int = 1) -> None:
    if n < lo:
        raise klm.KloostermanError(f"n must be >= {lo}, got {n}")


# -- Kloosterman subcommands ----------------------------------------------------

def cmd_compute(args) -> int:
    _check_n(args.n)
    ctx = _field(args)
    if args.mode == "exact":
        table = klm.kl_raw_all(ctx, args.n)
        doc = {
            "p": ctx.p, "k": ctx.k, "n": args.n, "conductor": table.ring.m,
            "values": [{"a_dlog": j, "coeffs": [str(c) for c in table.raw(j).coeffs]} for j in range(len(table))],
        }
        _emit(_dumps(doc), args.out)
        return 0
    us = args.u or [1]
    for u in us:
        vals = klm.kl_all_float(ctx, args.n, u)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["a_dlog", "re", "im", "abs"])
        for j, z in enumerate(vals):
            w.writerow([j, repr(float(z.real)), repr(float(z.imag)), repr(float(abs(z)))])
        out = args.out
        if out and len(us) > 1:
            path = Path(out)
            out = str(path.with_name(f"{path.stem}_u{u}{path.suffix}"))
        _emit(buf.getvalue(), out)
    return 0


def cmd_reduce(args) -> int:
    _check_n(args.n)
    ctx = _field(args)
    rc = klm.reduction_for(ctx, args.n, args.ell, seed=args.seed)
    vals = klm.kl_reduce_all(klm.kl_raw_all(ctx, args.n), rc, args.sign)
    F = rc.field
    doc = {
        "p": ctx.p, "k": ctx.k, "n": args.n, "ell": args.ell, "conductor": rc.m, "f": rc.f,
        "factor": list(rc.factor), "sign": args.sign,
        "values": [{"a_dlog": j, "value": v, "coeffs": list(F.to_coeffs(v))} for j, v in enumerate(vals)],
    }
    _emit(_dumps(doc), args.out)
    return 0


def cmd_twist_check(args) -> int:
    _check_n(args.n)
    ctx = _field(args)
    table = klm.kl_raw_all(ctx, args.n)
    us = args.u or list(range(1, ctx.p))
    res = {str(u): klm.galois_twist_check(table, u) for u in us}
    ok = all(res.values())
    _emit(_dumps({"p": ctx.p, "k": ctx.k, "n": args.n, "ok": ok, "per_u": res}), args.out)
    return 0 if ok else 1


def cmd_weil_check(args) -> int:
    _check_n(args.n)
    ctx = _field(args)
    table = klm.kl_raw_all(ctx, args.n)
    ok, r = klm.weil_bound_check(ctx, args.n, table)
    doc = {"p": ctx.p, "k": ctx.k, "n": args.n, "max_ratio": r, "ok": ok,
           "global_sum_ok": klm.global_sum_ok(table)}
    _emit(_dumps(doc), args.out)
    return 0 if ok and doc["global_sum_ok"] else 1


def cmd_trace_field(args) -> int:
    _check_n(args.n)
    ctx = _field(args)
    rc = klm.reduction_for(ctx, args.n, args.ell, seed=args.seed)
    d = klm.trace_field(klm.kl_reduce_all(klm.kl_raw_all(ctx, args.n), rc), rc)
    want = rc.f // math.gcd(rc.f, args.n)
    _emit(_dumps({"p": ctx.p, "k": ctx.k, "n": args.n, "ell": args.ell, "f": rc.f,
                  "degree": d, "expected": want, "ok": d == want}), args.out)
    return 0 if d == want else 1


def cmd_sato_tate(args) -> int:
    reps = klm.sato_tate_stats(args.primes, K=args.K, threads=args.threads)
    _emit(_dumps([r.as_dict() for r in reps]), args.out)
    return 0


def cmd_gauss(args) -> int:
    ctx = _field(args)
    ring = CycloRing(ctx.p)
    G = gauss_sum(ring, ctx)
    sq = G * G
    want = chi2_minus_one(ctx) * ctx.q
    ok = sq == ring.const(want)
    _emit(_dumps({"p": ctx.p, "k": ctx.k, "G": [str(c) for c in G.coeffs],
                  "G_squared": [str(c) for c in sq.coeffs], "expected": want, "ok": ok}), args.out)
    return 0 if ok else 1


# -- group subcommands ---------------------------------------------------------

def cmd_gen_check(args) -> int:
    gens = [mg.elem_u(args.n, args.ell), mg.elem_m(args.n, args.ell)]
    want = classify.group_order("SL", args.n, args.ell)
    res = mg.group_closure(gens, cap=args.cap)
    if res.exceeded:
        order, method = mg.group_order_schreier_sims(gens), "schreier-sims"
    else:
        order, method = res.order, "bfs"
    print(f"order {order}")
    doc = {"n": args.n, "ell": args.ell, "order": order, "method": method, "cap": args.cap,
           "cap_exceeded": res.exceeded, "SL_order": want, "ok": order == want}
    if args.out:
        _emit(_dumps(doc), args.out)
    else:
        log.info("%s", doc)
    return 0 if order == want else 1


def _inertia_ctx(args) -> FieldCtx:
    ctx = ff_make(args.p, args.k)
    if (ctx.q - 1) % args.n:
        raise mg.MatGroupError(f"n={args.n} does not divide q-1={ctx.q - 1}")
    return ctx


def cmd_inertia(args) -> int:
    ctx = _inertia_ctx(args)
    doc: dict = {"p": ctx.p, "k": ctx.k, "n": args.n}
    ok = True
    if args.ell is None:
        target = None
    else:
        target = make_reduction(CycloRing(ctx.p), args.ell, seed=args.seed)
    M = mg.inertia_matrix(ctx, args.n, mg.InertiaElement(args.a0, args.i0), target)
    doc["matrix"] = M.to_json()
    if args.sweep:
        rep = mg.inertia_homomorphism_sweep(ctx, args.n, target)
        doc["sweep"] = {"pairs": rep.pairs, "failures": rep.failures, "det_failures": rep.det_failures}
        ok &= rep.ok
    if args.pairing:
        if target is None:
            raise mg.MatGroupError("--pairing needs --ell (forms are computed over F_lambda)")
        doc["pairing"] = mg.wild_pairing_report(ctx, args.n, target).summary()
    _emit(_dumps(doc), args.out)
    return 0 if ok else 1


def cmd_normalizer_check(args) -> int:
    L = FieldCtx(args.ell, args.L_degree)
    res = mg.normalizer_power_check(args.group, args.n, L, args.k_degree, args.mode,
                                    samples=args.samples, seed=args.seed)
    doc = {"group": args.group, "n": args.n, "ell": args.ell, "L_degree": args.L_degree,
           "k_degree": args.k_degree, "mode": res.mode, "ok": res.ok, "examined": res.examined,
           "normalizing": res.normalizing, "vacuous": res.vacuous, "failures": len(res.failures)}
    _emit(_dumps(doc), args.out)
    return 0 if res.ok else 1


def cmd_classify(args) -> int:
    survey = classify.candidate_survey(args.n, args.ell, args.f)
    doc = {"n": args.n, "ell": args.ell, "f": args.f,
           "a_cutoff": classify.max_field_exponent(args.n, args.f),
           "candidates": [d.record() for d in survey],
           "exclusions": classify.geometric_exclusions(args.n, args.ell)}
    _emit(_dumps(doc), args.out)
    return 0


def cmd_verify_all(args) -> int:
    echo = None if args.quiet else print
    results = run_all(seed=args.seed, threads=args.threads, echo=echo)
    if args.out:
        _emit(_dumps([r.as_dict() for r in results]), args.out)
    failed = [r.name for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return 1 if failed else 0


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for all randomness (default 0)")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--out", help="output file (default stdout)")
    common.add_argument("--cache-dir", help="dlog cache directory (default $HYPERKL_CACHE_DIR or ~/.cache/hyperkl)")
    common.add_argument("--no-cache", action="store_true", help="do not read or write the dlog cache")
    common.add_argument("-v", "--verbose", action="count", default=0)

    field = argparse.ArgumentParser(add_help=False)
    field.add_argument("--p", type=int, required=True, help="odd prime")
    field.add_argument("--k", type=int, default=1, help="extension degree, q = p^k")

    ap = argparse.ArgumentParser(prog="hyperkl", description="Hyper-Kloosterman sums and their monodromy fingerprints")
    sub = ap.add_subparsers(dest="cmd", required=True, metavar="subcommand")

    def add(name, fn, help_, parents=(common,)):
        sp = sub.add_parser(name, parents=list(parents), help=help_)
        sp.set_defaults(func=fn)
        return sp

    sp = add("compute", cmd_compute, "all Kl_n(a): exact JSON or float CSV", (common, field))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--mode", choices=("exact", "float"), default="exact")
    sp.add_argument("--u", type=int, nargs="+", help="embeddings zeta_p -> e(u/p) for float mode")

    sp = add("reduce", cmd_reduce, "reduce Kl_n(a) modulo a prime above ell", (common, field))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--sign", type=int, choices=(1, -1), default=1, help="choice of sqrt(q) in F_lambda")

    sp = add("twist-check", cmd_twist_check, "Galois twist identity", (common, field))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--u", type=int, nargs="+")

    sp = add("weil-check", cmd_weil_check, "max |Kl_n| / n over all a and embeddings", (common, field))
    sp.add_argument("--n", type=int, required=True)

    sp = add("trace-field", cmd_trace_field, "degree of the field generated by reduced values", (common, field))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--ell", type=int, required=True)

    sp = add("sato-tate", cmd_sato_tate, "moments and KS distance for n = 2")
    sp.add_argument("--primes", type=int, nargs="+", required=True)
    sp.add_argument("--K", type=int, default=3, help="report moments 1 .. 2K")

    add("gauss", cmd_gauss, "quadratic Gauss sum and its square", (common, field))

    sp = add("gen-check", cmd_gen_check, "order of <u, m> against |SL_n(F_ell)|")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--cap", type=int, default=10 ** 7, help="BFS element cap before Schreier-Sims")

    sp = add("inertia", cmd_inertia, "explicit inertia-at-infinity matrices", (common, field))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--a0", type=int, default=0, help="F_q element (integer encoding)")
    sp.add_argument("--i0", type=int, default=0)
    sp.add_argument("--ell", type=int, help="reduce modulo a prime above ell (default: exact)")
    sp.add_argument("--sweep", action="store_true", help="homomorphism and determinant sweep")
    sp.add_argument("--pairing", action="store_true", help="invariant forms of the wild part")

    sp = add("normalizer-check", cmd_normalizer_check, "g normalising G(k) implies g^n in G(k)")
    sp.add_argument("--group", choices=("SL", "Sp"), default="SL")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--L-degree", type=int, required=True, dest="L_degree")
    sp.add_argument("--k-degree", type=int, default=1, dest="k_degree")
    sp.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    sp.add_argument("--samples", type=int, default=10 ** 4)

    sp = add("classify", cmd_classify, "candidate simple groups and geometric exclusions")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--f", type=int, default=1, help="[F_lambda : F_ell]")

    sp = add("verify-all", cmd_verify_all, "run every acceptance criterion")
    sp.add_argument("--quiet", action="store_true")
    return ap


def dispatch(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(message)s")
    if args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
