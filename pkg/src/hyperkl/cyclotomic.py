"""Exact arithmetic in Z[zeta_m] (m = p or 4p), Gauss sums and reduction mod primes."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import polymod as pm
from .field import FieldCtx


class CycloError(ValueError):
    pass


def euler_phi(m: int) -> int:
    out = m
    for r in pm.prime_factors(m):
        out -= out // r
    return out


def multiplicative_order(a: int, m: int) -> int:
    if math.gcd(a, m) != 1:
        raise CycloError(f"{a} is not a unit mod {m}")
    a %= m
    k, x = 1, a
    while x != 1 % m:
        x = x * a % m
        k += 1
    return k


class CycloRing:
    """Z[zeta_m] in the power basis 1, zeta, ..., zeta^(phi(m)-1)."""

    def __init__(self, m: int):
        p = m // 4 if m % 4 == 0 else m
        if not (pm.is_prime(p) and p % 2 == 1 and m in (p, 4 * p)):
            raise CycloError(f"conductor must be p or 4p with p an odd prime, got {m}")
        self.m = m
        self.p = p
        self.phi = euler_phi(m)
        self.cyclo = tuple(pm.cyclotomic_poly(m))

    def __repr__(self) -> str:
        return f"CycloRing({self.m})"

    def __eq__(self, other) -> bool:
        return isinstance(other, CycloRing) and other.m == self.m

    def __hash__(self) -> int:
        return hash(("CycloRing", self.m))

    def canonical(self, v: Sequence[int]) -> tuple[int, ...]:
        """Reduce an exponent vector (index = power of zeta) to the power basis."""
        m, phi = self.m, self.phi
        w = [0] * m
        for i, c in enumerate(v):
            if c:
                w[i % m] += int(c)
        if m == self.p:
            top = w[m - 1]
            return tuple(c - top for c in w[: m - 1])
        # long division by the monic Phi_m
        cy = self.cyclo
        for i in range(m - 1, phi - 1, -1):
            c = w[i]
            if c:
                for j in range(phi + 1):
                    w[i - phi + j] -= c * cy[j]
        return tuple(w[:phi])

    def from_exponents(self, v: Sequence[int] | Mapping[int, int]) -> "CycloInt":
        if isinstance(v, Mapping):
            w = [0] * self.m
            for e, c in v.items():
                w[e % self.m] += c
            v = w
        return CycloInt(self, self.canonical(v))

    def zeta(self, e: int = 1) -> "CycloInt":
        return self.from_exponents({e: 1})

    def const(self, c: int) -> "CycloInt":
        return CycloInt(self, (c,) + (0,) * (self.phi - 1))

    @property
    def zero(self) -> "CycloInt":
        return self.const(0)

    @property
    def one(self) -> "CycloInt":
        return self.const(1)

    def zeta_p(self, e: int = 1) -> "CycloInt":
        """zeta_p^e, with zeta_p = zeta_m^(m/p)."""
        return self.zeta(e * (self.m // self.p))

    def from_zeta_p_counts(self, counts: Sequence[int]) -> "CycloInt":
        """sum_t counts[t] zeta_p^t."""
        s = self.m // self.p
        w = [0] * self.m
        for t, c in enumerate(counts):
            w[(s * t) % self.m] += int(c)
        return CycloInt(self, self.canonical(w))

    def lift(self, x: "CycloInt") -> "CycloInt":
        """Image of x under Z[zeta_d] -> Z[zeta_m] for d | m."""
        if self.m % x.ring.m:
            raise CycloError(f"cannot embed Z[zeta_{x.ring.m}] in Z[zeta_{self.m}]")
        s = self.m // x.ring.m
        return self.from_exponents({s * i: c for i, c in enumerate(x.coeffs) if c})


@dataclass(frozen=True)
class CycloInt:
    ring: CycloRing
    coeffs: tuple

    def _check(self, other: "CycloInt") -> None:
        if not isinstance(other, CycloInt) or other.ring != self.ring:
            raise CycloError("operands live in different cyclotomic rings")

    def _coerce(self, other) -> "CycloInt":
        if isinstance(other, int):
            return self.ring.const(other)
        self._check(other)
        return other

    def __add__(self, other) -> "CycloInt":
        other = self._coerce(other)
        return CycloInt(self.ring, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "CycloInt":
        return CycloInt(self.ring, tuple(-a for a in self.coeffs))

    def __sub__(self, other) -> "CycloInt":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "CycloInt":
        return (-self) + other

    def __mul__(self, other) -> "CycloInt":
        if isinstance(other, int):
            return CycloInt(self.ring, tuple(a * other for a in self.coeffs))
        self._check(other)
        m = self.ring.m
        w = [0] * m
        ys = [(j, b) for j, b in enumerate(other.coeffs) if b]
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in ys:
                    w[(i + j) % m] += a * b
        return CycloInt(self.ring, self.ring.canonical(w))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "CycloInt":
        out, base = self.ring.one, self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def galois(self, u: int) -> "CycloInt":
        """Apply zeta_m -> zeta_m^u."""
        m = self.ring.m
        if math.gcd(u, m) != 1:
            raise CycloError(f"gcd({u}, {m}) != 1")
        return self.ring.from_exponents({(i * u) % m: c for i, c in enumerate(self.coeffs) if c})

    def embed(self, u: int = 1) -> complex:
        return cy_embed(self.ring, self, u)

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*z^{i}")
        return f"CycloInt[{self.ring.m}](" + (" + ".join(terms) or "0") + ")"


def cy_mul(ring: CycloRing, x: CycloInt, y: CycloInt) -> CycloInt:
    if x.ring != ring or y.ring != ring:
        raise CycloError("operands live in different cyclotomic rings")
    return x * y


def cy_embed(ring: CycloRing, x: CycloInt, u: int = 1) -> complex:
    """Complex embedding zeta_m -> e(u/m)."""
    if math.gcd(u, ring.m) != 1:
        raise CycloError(f"embedding index u={u} is not a unit mod {ring.m}")
    m = ring.m
    re = math.fsum(c * math.cos(2 * math.pi * (u * i % m) / m) for i, c in enumerate(x.coeffs) if c)
    im = math.fsum(c * math.sin(2 * math.pi * (u * i % m) / m) for i, c in enumerate(x.coeffs) if c)
    return complex(re, im)


def chi2_minus_one(ctx: FieldCtx) -> int:
    """Value of the quadratic character of F_q at -1."""
    return 1 if (ctx.q - 1) % 4 == 0 else -1


def gauss_sum_counts(ctx: FieldCtx) -> np.ndarray:
    """counts[t] = sum of chi_2(x) over x in F_q^x with tr(x) = t."""
    signs = np.where(np.arange(ctx.q - 1) % 2 == 0, 1, -1)
    return np.bincount(ctx.trace_table, weights=signs, minlength=ctx.p).astype(np.int64)


def gauss_sum(ring: CycloRing, ctx: FieldCtx) -> CycloInt:
    """G_q = sum_{x != 0} chi_2(x) zeta_p^{tr x}; satisfies G_q^2 = chi_2(-1) q."""
    if ring.p != ctx.p:
        raise CycloError(f"ring has p={ring.p} but field has characteristic {ctx.p}")
    return ring.from_zeta_p_counts(gauss_sum_counts(ctx).tolist())


def split_prime(m: int, ell: int) -> tuple[int, int]:
    """(residue degree f, number g of primes above ell) in Q(zeta_m)."""
    if m % ell == 0:
        raise CycloError(f"{ell} ramifies in Q(zeta_{m})")
    f = multiplicative_order(ell, m)
    return f, euler_phi(m) // f


class ReductionCtx:
    """A prime of Z[zeta_m] above ell and the reduction map onto F_lambda.

    ``field`` is F_ell[t]/(factor) and ``root`` (= t) is the image of zeta_m.
    """

    def __init__(self, ring: CycloRing, ell: int, factor: Sequence[int], *, seed: int = 0,
                 spot_checks: int = 32):
        self.ring = ring
        self.ell = ell
        self.m = ring.m
        self.factor = tuple(factor)
        self.f = len(factor) - 1
        self.field = FieldCtx(ell, self.f, self.factor)
        self.root = self.field.t
        if self.field.pow(self.root, self.m) != 1 or any(
            self.field.pow(self.root, self.m // r) == 1 for r in pm.prime_factors(self.m)
        ):
            raise AssertionError("image of zeta_m does not have order m")
        rng = random.Random(seed)
        for _ in range(spot_checks):
            x = ring.from_exponents([rng.randint(-5, 5) for _ in range(ring.phi)])
            y = ring.from_exponents([rng.randint(-5, 5) for _ in range(ring.phi)])
            if self.reduce(x * y) != self.field.mul(self.reduce(x), self.reduce(y)) or \
                    self.reduce(x + y) != self.field.add(self.reduce(x), self.reduce(y)):
                raise AssertionError("reduction map is not a ring homomorphism")

    def __repr__(self) -> str:
        return f"ReductionCtx(m={self.m}, ell={self.ell}, f={self.f}, factor={list(self.factor)})"

    @cached_property
    def root_powers(self) -> np.ndarray:
        """Row e holds the coefficient vector of root^e, 0 <= e < m."""
        F = self.field
        out = np.zeros((self.m, self.f), dtype=np.int64)
        x = 1
        for e in range(self.m):
            out[e] = F.to_coeffs(x)
            x = F.mul(x, self.root)
        return out

    @cached_property
    def zeta_p_powers(self) -> np.ndarray:
        """Row t holds the coefficients of the image of zeta_p^t, 0 <= t < p."""
        s = self.m // self.ring.p
        return self.root_powers[(s * np.arange(self.ring.p)) % self.m]

    def _encode_rows(self, coeffs: np.ndarray) -> list[int]:
        weights = [self.ell ** i for i in range(self.f)]
        return [sum(int(c) * w for c, w in zip(row, weights)) for row in coeffs]

    def reduce(self, x: CycloInt) -> int:
        if x.ring != self.ring:
            raise CycloError(f"element of Z[zeta_{x.ring.m}] reduced with a conductor-{self.m} context")
        c = np.array([a % self.ell for a in x.coeffs], dtype=np.int64)
        row = c @ self.root_powers[: self.ring.phi] % self.ell
        return self._encode_rows(row[None, :])[0]

    def reduce_zeta_p_counts(self, counts: np.ndarray) -> list[int]:
        """Reduce rows sum_t counts[..., t] zeta_p^t (vectorised)."""
        counts = np.asarray(counts)
        c = np.mod(counts, self.ell).astype(np.int64)
        rows = c.reshape(-1, self.ring.p) @ self.zeta_p_powers % self.ell
        return self._encode_rows(rows)

    def zeta4(self) -> int:
        """Image of zeta_4 = zeta_m^p (only for m = 4p)."""
        if self.m != 4 * self.ring.p:
            raise CycloError("zeta_4 is only available for conductor 4p")
        return self.field.pow(self.root, self.ring.p)


def _factor_key(h: Sequence[int], ell: int) -> tuple[int, ...]:
    # compare x^f = sum r_i x^i through (r_0, ..., r_{f-1}); for f = 1 this is the root itself
    return tuple(-c % ell for c in h[:-1])


def make_reduction(ring: CycloRing, ell: int, *, seed: int = 0) -> ReductionCtx:
    if not pm.is_prime(ell):
        raise CycloError(f"ell={ell} is not prime")
    f, g = split_prime(ring.m, ell)
    factors = pm.factor_squarefree(list(ring.cyclo), ell, seed=seed)
    if len(factors) != g or any(len(h) - 1 != f for h in factors):
        raise AssertionError("factorisation of Phi_m does not match the splitting law")
    factor = min(factors, key=lambda h: _factor_key(h, ell))
    return ReductionCtx(ring, ell, factor, seed=seed)


def reduce(rc: ReductionCtx, x: CycloInt) -> int:
    return rc.reduce(x)


def all_embeddings(m: int) -> Iterable[int]:
    return (u for u in range(1, m) if math.gcd(u, m) == 1)


def embed_counts(counts: np.ndarray, p: int, u: int = 1) -> np.ndarray:
    """Complex values of sum_t counts[..., t] e(u t / p)."""
    phases = np.exp(2j * np.pi * ((u * np.arange(p)) % p) / p)
    return np.asarray(counts, dtype=np.float64) @ phases


__all__ = [
    "CycloError", "CycloRing", "CycloInt", "ReductionCtx", "cy_mul", "cy_embed", "gauss_sum",
    "split_prime", "make_reduction", "reduce", "euler_phi", "multiplicative_order",
    "chi2_minus_one", "embed_counts", "all_embeddings",
]
