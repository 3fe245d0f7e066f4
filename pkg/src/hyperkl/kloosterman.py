"""Hyper-Kloosterman sums: exact tables over Z[zeta_p], floating values, reductions.

Exact sums are stored unnormalised,

    S_n(a) = sum_{x_1 ... x_n = a} zeta_p^{tr(x_1 + ... + x_n)},

as an integer count matrix ``counts[j, t]`` = number of n-tuples with product
g^j and trace t.  The normalised sum is Kl_n(a) = (-1)^(n-1) S_n(a) / q^((n-1)/2);
the division only happens after embedding into C (positive real root) or
after reduction into F_lambda (where sqrt(q) is a unit).
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np
from scipy import stats

from .cyclotomic import (
    CycloError,
    CycloInt,
    CycloRing,
    ReductionCtx,
    chi2_minus_one,
    embed_counts,
    gauss_sum,
    make_reduction,
)
from .field import FieldCtx, FieldError, ff_make

DIRECT_LIMIT = 10 ** 7
# exact counts are recovered by rounding only while they stay far below 2^53
FFT_COUNT_LIMIT = 2 ** 36
WEIL_SLACK = 1e-9


class KloostermanError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class KlTable:
    """Exact table of S_n(g^j), j = 0 .. q-2."""

    ctx: FieldCtx
    n: int
    counts: np.ndarray

    @cached_property
    def ring(self) -> CycloRing:
        return CycloRing(self.ctx.p)

    def __len__(self) -> int:
        return self.ctx.q - 1

    def raw(self, j: int) -> CycloInt:
        """S_n(g^j) in canonical form."""
        return self.ring.from_zeta_p_counts(self.counts[j].tolist())

    def raw_all(self) -> list[CycloInt]:
        return [self.raw(j) for j in range(len(self))]

    def total(self) -> CycloInt:
        return self.ring.from_zeta_p_counts(self.counts.sum(axis=0).tolist())

    def embed(self, u: int = 1) -> np.ndarray:
        """Complex S_n(g^j) under zeta_p -> e(u/p)."""
        if math.gcd(u, self.ctx.p) != 1:
            raise KloostermanError(f"u={u} is not a unit mod p")
        return embed_counts(self.counts, self.ctx.p, u)

    def normalized(self, u: int = 1) -> np.ndarray:
        return (-1) ** (self.n - 1) * self.embed(u) / self.ctx.q ** ((self.n - 1) / 2)


def _count_dtype(ctx: FieldCtx, n: int):
    return np.int64 if (ctx.q - 1) ** max(n - 1, 1) < 2 ** 62 else object


def kl_raw_direct(ctx: FieldCtx, n: int, a: int, *, limit: int = DIRECT_LIMIT) -> CycloInt:
    """S_n(a) by enumerating (x_1, ..., x_{n-1}); the last coordinate is forced."""
    if a == 0:
        raise KloostermanError("a must be nonzero")
    if n < 1:
        raise KloostermanError("rank must be >= 1")
    if (ctx.q - 1) ** (n - 1) > limit:
        raise KloostermanError(f"q^(n-1) = {ctx.q}^{n - 1} exceeds the brute-force limit {limit}")
    counts = [0] * ctx.p
    units = range(1, ctx.q)
    for xs in itertools.product(units, repeat=n - 1):
        prod, s = 1, 0
        for x in xs:
            prod = ctx.mul(prod, x)
            s = ctx.add(s, x)
        last = ctx.div(a, prod)
        counts[ctx.trace(ctx.add(s, last))] += 1
    return CycloRing(ctx.p).from_zeta_p_counts(counts)


def kl_raw_all(ctx: FieldCtx, n: int, method: str = "auto") -> KlTable:
    """All S_n(a) by repeated multiplicative convolution with zeta_p^{tr(.)}.

    In dlog coordinates S_n[j] = sum_i S_{n-1}[j - i] * zeta_p^{T[i]}, which on
    count matrices is a 2-D cyclic convolution over Z/(q-1) x Z/p with the
    indicator of (i, T[i]).  ``method`` is "shift" (sum of rolled copies, exact
    integers), "fft" (rounded float transform, checked) or "auto".
    """
    if n < 1:
        raise KloostermanError("rank must be >= 1")
    if method not in ("auto", "shift", "fft"):
        raise KloostermanError(f"unknown method {method!r}")
    N, p = ctx.q - 1, ctx.p
    T = ctx.trace_table
    dtype = _count_dtype(ctx, n)
    base = np.zeros((N, p), dtype=dtype)
    base[np.arange(N), T] = 1
    if n == 1:
        return KlTable(ctx, n, base)
    if method == "auto":
        method = "fft" if N ** (n - 1) <= FFT_COUNT_LIMIT and N * p > 20000 else "shift"
    if method == "fft":
        if N ** (n - 1) > FFT_COUNT_LIMIT:
            raise KloostermanError("counts too large for the rounded FFT path")
        C = _convolve_fft(base, n)
    else:
        C = base
        for _ in range(n - 1):
            nxt = np.zeros((N, p), dtype=dtype)
            for i in range(N):
                nxt += np.roll(np.roll(C, i, axis=0), int(T[i]), axis=1)
            C = nxt
    if not (C.sum(axis=1) == N ** (n - 1)).all():
        raise AssertionError("row sums differ from the number of n-tuples")
    return KlTable(ctx, n, C)


def _convolve_fft(base: np.ndarray, n: int) -> np.ndarray:
    F = np.fft.rfft2(base.astype(np.float64))
    out = np.fft.irfft2(F ** n, s=base.shape)
    C = np.rint(out)
    err = float(np.abs(out - C).max())
    if err > 0.25:
        raise AssertionError(f"FFT rounding error {err} too large for an exact result")
    return C.astype(np.int64)


def kl_all_float(ctx: FieldCtx, n: int, u: int = 1) -> np.ndarray:
    """Normalised Kl_n(g^j), j = 0 .. q-2, under the embedding zeta_p -> e(u/p).

    One length-(q-1) FFT: the n-fold cyclic self-convolution of e(u tr(g^j)/p).
    """
    if math.gcd(u, ctx.p) != 1:
        raise KloostermanError(f"u={u} is not a unit mod p")
    psi = np.exp(2j * np.pi * ((u * ctx.trace_table) % ctx.p) / ctx.p)
    S = np.fft.ifft(np.fft.fft(psi) ** n)
    return (-1) ** (n - 1) * S / ctx.q ** ((n - 1) / 2)


def kl2_direct_float(p: int, a: int) -> float:
    """Classical Kl_{2,p}(a) = -p^{-1/2} sum_x e((a x + x^{-1}) / p), straight from the definition."""
    x = np.arange(1, p, dtype=np.int64)
    xinv = np.array([pow(int(v), -1, p) for v in x], dtype=np.int64)
    phase = (a * x + xinv) % p
    return float(-np.cos(2 * np.pi * phase / p).sum() / math.sqrt(p))


# -- reduction -----------------------------------------------------------------

def sqrt_q(rc: ReductionCtx, ctx: FieldCtx, sign: int = 1) -> int:
    """Canonical square root of q in F_lambda.

    s = reduce(G_q) when chi_2(-1) = +1, else s = reduce(G_q) / reduce(zeta_4)
    (needs conductor 4p).  ``sign=-1`` returns the other root.
    """
    if sign not in (1, -1):
        raise KloostermanError("sign must be +1 or -1")
    F = rc.field
    s = rc.reduce(gauss_sum(rc.ring, ctx))
    if chi2_minus_one(ctx) == -1:
        if rc.m != 4 * ctx.p:
            raise KloostermanError("sqrt(q) needs Z[zeta_4p] when q = 3 mod 4")
        s = F.div(s, rc.zeta4())
    if sign == -1:
        s = F.neg(s)
    assert F.mul(s, s) == F.elem(ctx.q)
    return s


def reduction_for(ctx: FieldCtx, n: int, ell: int, *, seed: int = 0) -> ReductionCtx:
    """Reduction context able to normalise Kl_n: conductor p, or 4p when n is even and q = 3 mod 4."""
    m = ctx.p if n % 2 == 1 or chi2_minus_one(ctx) == 1 else 4 * ctx.p
    return make_reduction(CycloRing(m), ell, seed=seed)


def kl_reduce_all(table: KlTable, rc: ReductionCtx, sign: int = 1) -> list[int]:
    """(-1)^(n-1) reduce(S_n(a)) / s^(n-1) for every a = g^j, as F_lambda encodings."""
    ctx, n = table.ctx, table.n
    if rc.ring.p != ctx.p:
        raise KloostermanError(f"reduction context has p={rc.ring.p}, table has p={ctx.p}")
    F = rc.field
    if n % 2 == 1:
        denom = F.elem(pow(ctx.q, (n - 1) // 2, rc.ell))
    else:
        denom = F.pow(sqrt_q(rc, ctx, sign), n - 1)
    if denom == 0:
        raise AssertionError("sqrt(q) is not a unit in F_lambda")
    scale = F.inv(denom)
    if n % 2 == 0:
        scale = F.neg(scale)
    reduced = rc.reduce_zeta_p_counts(table.counts)
    return [F.mul(v, scale) for v in reduced]


def trace_field(values: Sequence[int], rc: ReductionCtx) -> int:
    """Degree over F_ell of the subfield of F_lambda generated by ``values``."""
    if not values:
        raise KloostermanError("need at least one value")
    F = rc.field
    distinct = sorted(set(values))
    for d in range(1, rc.f + 1):
        if rc.f % d == 0 and all(F.frob(v, d) == v for v in distinct):
            return d
    raise AssertionError("unreachable: d = f always works")


# -- checks --------------------------------------------------------------------

def twist_target(table: KlTable, u: int) -> np.ndarray:
    """Row index of a * u^n for each row a = g^j."""
    ctx = table.ctx
    shift = table.n * ctx.dlog(ctx.elem(u))
    return (np.arange(ctx.q - 1) + shift) % (ctx.q - 1)


def galois_twist_check(table: KlTable, u: int) -> bool:
    """Does zeta_p -> zeta_p^u send S_n(a) to S_n(a u^n) for all a?"""
    p = table.ctx.p
    if math.gcd(u, p) != 1:
        raise KloostermanError(f"u={u} is not a unit mod p")
    C = table.counts
    moved = np.zeros_like(C)
    moved[:, (u * np.arange(p)) % p] = C
    diff = moved - C[twist_target(table, u)]
    # count vectors represent the same element iff they differ by a constant row
    return bool((diff == diff[:, :1]).all())


def weil_ratios(table: KlTable, embeddings: Sequence[int] | None = None) -> np.ndarray:
    """|Kl_n(a)| / n for every a (rows) and every embedding u (columns)."""
    p, n = table.ctx.p, table.n
    us = list(embeddings) if embeddings is not None else list(range(1, p))
    out = np.empty((len(table), len(us)))
    for c, u in enumerate(us):
        out[:, c] = np.abs(table.normalized(u)) / n
    return out


def weil_bound_check(ctx: FieldCtx, n: int, table: KlTable | None = None) -> tuple[bool, float]:
    if table is None:
        table = kl_raw_all(ctx, n)
    r = float(weil_ratios(table).max())
    return r <= 1 + WEIL_SLACK, r


def global_sum_ok(table: KlTable) -> bool:
    return table.total() == table.ring.const((-1) ** table.n)


# -- Sato-Tate -----------------------------------------------------------------

def semicircle_cdf(x):
    x = np.clip(np.asarray(x, dtype=float), -2.0, 2.0)
    return 0.5 + x * np.sqrt(4 - x * x) / (4 * np.pi) + np.arcsin(x / 2) / np.pi


def semicircle_moment(j: int) -> int:
    """j-th moment of the semicircle law on [-2, 2]: Catalan(j/2) for even j, else 0."""
    if j % 2:
        return 0
    k = j // 2
    return math.comb(2 * k, k) // (k + 1)


@dataclass
class SatoTateReport:
    p: int
    moments: list[float]
    ks: float

    def as_dict(self) -> dict:
        return {"p": self.p, "moments": self.moments, "ks": self.ks}


def sato_tate_one(p: int, K: int = 3) -> SatoTateReport:
    ctx = ff_make(p)
    vals = kl_all_float(ctx, 2, 1).real
    moments = [float(np.mean(vals ** j)) for j in range(1, 2 * K + 1)]
    ks = float(stats.kstest(vals, semicircle_cdf).statistic)
    return SatoTateReport(p, moments, ks)


def sato_tate_stats(p_list: Sequence[int], K: int = 3, threads: int = 1) -> list[SatoTateReport]:
    """Empirical moments m_1..m_2K and KS distance to the semicircle, per prime (n = 2)."""
    for p in p_list:
        if p > 10 ** 6:
            raise KloostermanError(f"p={p} is beyond desk scale")
    if threads <= 1:
        return [sato_tate_one(p, K) for p in p_list]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda p: sato_tate_one(p, K), p_list))


__all__ = [
    "KlTable", "KloostermanError", "kl_raw_direct", "kl_raw_all", "kl_all_float", "kl2_direct_float",
    "sqrt_q", "reduction_for", "kl_reduce_all", "trace_field", "galois_twist_check", "weil_bound_check",
    "weil_ratios", "global_sum_ok", "semicircle_cdf", "semicircle_moment", "sato_tate_stats",
    "SatoTateReport", "CycloError", "FieldError",
]
