"""Acceptance checks: one function per criterion, each returning a CheckResult.

Every check records its wall time; a check passes only if its mathematical
condition holds and it finishes within its time budget.
"""
from __future__ import annotations

import json
import math
import resource
import time
from dataclasses import dataclass
from importlib import resources
from typing import Callable


from . import classify, kloosterman as klm, matgroup as mg
from .cyclotomic import CycloRing, chi2_minus_one, gauss_sum, make_reduction
from .field import FieldCtx, ff_make

ORACLE_FIELDS = ((3, 1), (5, 1), (7, 1), (3, 2), (11, 1), (13, 1))

# Sato-Tate thresholds, fixed after one calibration run
ST_M1_TOL = 0.1
ST_M2_TOL = 0.1
ST_M4_TOL = 0.2


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    elapsed: float
    budget: float

    @property
    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] {self.name}: {self.detail} ({self.elapsed:.2f}s / {self.budget:.0f}s)"

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail,
                "elapsed": round(self.elapsed, 3), "budget": self.budget}


def _timed(name: str, budget: float, fn: Callable[[], tuple[bool, str]]) -> CheckResult:
    t0 = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t0
    if dt > budget:
        detail += "; over time budget"
    return CheckResult(name, bool(ok) and dt <= budget, detail, dt, budget)


def oracle_fields() -> list[FieldCtx]:
    return [ff_make(p, k) for p, k in ORACLE_FIELDS]


def check_oracle(seed: int = 0) -> CheckResult:
    def run():
        bad = []
        for ctx in oracle_fields():
            for n in (2, 3, 4):
                table = klm.kl_raw_all(ctx, n)
                for j in range(ctx.q - 1):
                    if table.raw(j) != klm.kl_raw_direct(ctx, n, ctx.exp(j)):
                        bad.append((ctx.q, n, j))
        return not bad, f"{len(ORACLE_FIELDS) * 3} (q, n) tables, mismatches={bad[:5]}"
    return _timed("1 oracle equivalence", 10, run)


WEIL_CASES = ((101, 2), (101, 3), (499, 2))


def check_weil(seed: int = 0) -> CheckResult:
    def run():
        worst = {}
        for p, n in WEIL_CASES:
            ok, r = klm.weil_bound_check(ff_make(p), n)
            worst[(p, n)] = round(r, 6)
        return all(r <= 1 + klm.WEIL_SLACK for r in worst.values()), f"max |Kl|/n = {worst}"
    return _timed("2 Weil bound", 30, run)


def check_global_sum(seed: int = 0) -> CheckResult:
    def run():
        count, bad = 0, []
        for ctx in oracle_fields():
            for n in (1, 2, 3, 4):
                count += 1
                if not klm.global_sum_ok(klm.kl_raw_all(ctx, n)):
                    bad.append((ctx.q, n))
        for p, n in WEIL_CASES:
            count += 1
            if not klm.global_sum_ok(klm.kl_raw_all(ff_make(p), n)):
                bad.append((p, n))
        return not bad, f"{count} tables, failures={bad}"
    return _timed("3 global sum", 10, run)


def check_twist(seed: int = 0) -> CheckResult:
    def run():
        count, bad = 0, []
        for ctx in oracle_fields():
            for n in (1, 2, 3, 4):
                table = klm.kl_raw_all(ctx, n)
                for u in range(1, ctx.p):
                    count += 1
                    if not klm.galois_twist_check(table, u):
                        bad.append((ctx.q, n, u))
        return not bad, f"{count} (q, n, u) triples, failures={bad[:5]}"
    return _timed("4 Galois twist", 10, run)


def check_gauss(seed: int = 0) -> CheckResult:
    def run():
        cases = [(p, 1) for p in range(3, 201) if all(p % d for d in range(2, int(p ** 0.5) + 1))]
        cases += [(5, 2), (7, 2)]
        bad = []
        for p, k in cases:
            ctx = ff_make(p, k)
            ring = CycloRing(p)
            G = gauss_sum(ring, ctx)
            if G * G != ring.const(chi2_minus_one(ctx) * ctx.q):
                bad.append((p, k))
        return not bad, f"{len(cases)} fields, failures={bad}"
    return _timed("5 Gauss sums", 10, run)


TRACE_FIELD_CASES = ((13, 2, 5), (13, 3, 5), (5, 2, 11), (5, 3, 7))


def check_trace_field(seed: int = 0) -> CheckResult:
    def run():
        out, ok = [], True
        for p, n, ell in TRACE_FIELD_CASES:
            ctx = ff_make(p)
            rc = klm.reduction_for(ctx, n, ell, seed=seed)
            d = klm.trace_field(klm.kl_reduce_all(klm.kl_raw_all(ctx, n), rc), rc)
            want = rc.f // math.gcd(rc.f, n)
            ok &= d == want
            out.append(f"(p={p},n={n},l={ell}): f={rc.f} d={d} want {want}")
        return ok, "; ".join(out)
    return _timed("6 trace-field index", 10, run)


def _maxrss_mb() -> float:
    return resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024


def check_generation(seed: int = 0, cap: int = 10 ** 6) -> CheckResult:
    def run():
        out, ok = [], True
        for n, ell in ((3, 3), (3, 5), (5, 3)):
            gens = [mg.elem_u(n, ell), mg.elem_m(n, ell)]
            want = classify.group_order("SL", n, ell)
            res = mg.group_closure(gens, cap=cap)
            if res.exceeded:
                order = mg.group_order_schreier_sims(gens)
                how = f"BFS cap {cap} exceeded, Schreier-Sims"
            else:
                order = res.order
                how = "BFS"
            ok &= order == want
            out.append(f"(n={n},l={ell}) {how}: {order} vs {want}")
        rss = _maxrss_mb()
        ok &= rss < 2048
        return ok, "; ".join(out) + f"; peak RSS {rss:.0f} MB"
    return _timed("7 generation by u, m", 60, run)


def check_inertia(seed: int = 0) -> CheckResult:
    def run():
        ctx = ff_make(13)
        out, ok = [], True
        for n in (2, 3):
            rep = mg.inertia_homomorphism_sweep(ctx, n)
            ok &= rep.ok
            out.append(f"n={n}: {rep.pairs} products, {rep.failures} failures, {rep.det_failures} det != 1")
        M = mg.inertia_matrix(ctx, 2, mg.InertiaElement(0, 1))
        ring = M.ring
        m2 = mg.elem_m(2, 13)
        # elem_m entries are residues mod 13; compare as integers -1, 0, 1
        want = [[ring.const(x if x <= 1 else x - 13) for x in r] for r in m2.rows]
        same = M.rows == want
        ok &= same
        out.append(f"rho(0,1) == elem_m(2): {same}")
        return ok, "; ".join(out)
    return _timed("8 inertia representation", 60, run)


def check_pairing(seed: int = 0) -> CheckResult:
    def run():
        ctx = ff_make(13)
        rc = make_reduction(CycloRing(13), 53, seed=seed)
        out, ok = [], True
        for n in (2, 3, 4):
            rep = mg.wild_pairing_report(ctx, n, rc)
            good = rep.dim == 0 if n % 2 else (rep.dim > 0 and len(rep.alternating) > 0)
            ok &= good
            out.append(f"n={n}: dim={rep.dim} alt={len(rep.alternating)}")
        return ok, "; ".join(out)
    return _timed("9 wild pairing dichotomy", 10, run)


def check_unipotent(seed: int = 0) -> CheckResult:
    def run():
        bad = [(n, ell) for ell in (2, 3, 5, 7, 11) for n in range(2, 21)
               if mg.unipotent_order(n, ell) != mg.unipotent_order_direct(n, ell)]
        return not bad, f"95 (n, l) pairs, mismatches={bad}"
    return _timed("10 unipotent order", 5, run)


def check_normalizer(seed: int = 0) -> CheckResult:
    def run():
        res = mg.normalizer_power_check("SL", 2, FieldCtx(3, 2), 1, "exhaustive")
        return res.ok and not res.vacuous, (f"SL_2, F_3 in F_9: {res.examined} elements, "
                                            f"{res.normalizing} normalising, {len(res.failures)} failures")
    return _timed("11 normalizer powers", 30, run)


def load_golden() -> list[dict]:
    text = resources.files("hyperkl").joinpath("data/classification_golden.json").read_text()
    return json.loads(text)["rows"]


def check_classification(seed: int = 0) -> CheckResult:
    def run():
        rows = load_golden()
        bad = []
        for r in rows:
            d = classify.descriptor_from_record(r)
            if classify.m_lower(d) != r["m_S"] or classify.out_order(d) != r["out_order"]:
                bad.append(d.name)
        survey = classify.candidate_survey(7, 10 ** 6 + 3, 1)
        g2 = any(d.family == "G2" for d in survey)
        return len(rows) == 20 and not bad and g2, f"{len(rows)} golden rows, mismatches={bad}; G_2 in survey(7): {g2}"
    return _timed("12 classification data", 5, run)


ST_PRIMES = (101, 1009, 10007)


def check_sato_tate(seed: int = 0, threads: int = 1) -> CheckResult:
    def run():
        reps = klm.sato_tate_stats(ST_PRIMES, K=2, threads=threads)
        big = reps[-1]
        m1, m2, m4 = big.moments[0], big.moments[1], big.moments[3]
        ks = [r.ks for r in reps]
        ok = (abs(m1) < ST_M1_TOL and abs(m2 - 1) < ST_M2_TOL and abs(m4 - 2) < ST_M4_TOL
              and all(a > b for a, b in zip(ks, ks[1:])))
        return ok, (f"p={big.p}: m1={m1:.4f} m2={m2:.4f} m4={m4:.4f}; "
                    f"KS over {ST_PRIMES} = {[round(x, 4) for x in ks]}")
    return _timed("13 Sato-Tate", 60, run)


CRITERIA = [
    check_oracle, check_weil, check_global_sum, check_twist, check_gauss, check_trace_field,
    check_generation, check_inertia, check_pairing, check_unipotent, check_normalizer,
    check_classification, check_sato_tate,
]


def run_all(seed: int = 0, threads: int = 1, echo: Callable[[str], None] | None = None) -> list[CheckResult]:
    out = []
    for fn in CRITERIA:
        res = fn(seed=seed, threads=threads) if fn is check_sato_tate else fn(seed=seed)
        if echo:
            echo(res.line)
        out.append(res)
    return out
