"""Finite fields F_q = F_p[t]/(modulus) with discrete-log and trace tables.

Elements are ints: the coefficient vector (c_0, ..., c_{k-1}) of
c_0 + c_1 t + ... + c_{k-1} t^{k-1} is stored as sum c_i p^i.  That
encoding is also the order used to pick canonical moduli and generators.
"""
from __future__ import annotations

from functools import cached_property
from typing import Sequence

import numpy as np

from . import polymod as pm


class FieldError(ValueError):
    """Invalid field parameters or an operation outside its domain."""


class FieldCtx:
    """The field F_{p^k} with a fixed monic irreducible modulus.

    Multiplication goes through polynomial arithmetic so that brute-force
    oracles never touch the log tables; the tables (``exp_table``,
    ``dlog_table``, ``trace_table``) are built lazily, vectorised, once.
    """

    def __init__(self, p: int, k: int = 1, modulus: Sequence[int] | None = None):
        if not isinstance(p, int) or not pm.is_prime(p):
            raise FieldError(f"p={p!r} is not prime")
        if not isinstance(k, int) or k < 1:
            raise FieldError(f"extension degree k={k!r} must be >= 1")
        self.p = p
        self.k = k
        self.q = p ** k
        if modulus is None:
            modulus = _least_irreducible(p, k)
        else:
            modulus = [int(c) % p for c in modulus]
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise FieldError(f"modulus must be monic of degree {k}")
            if not pm.is_irreducible(modulus, p):
                raise FieldError(f"modulus {modulus} is reducible over F_{p}")
        self.modulus = tuple(modulus)
        self._mod = list(self.modulus)
        # tr(t^i), i < k: the trace is F_p-linear
        self.basis_traces = tuple(self.trace(p ** i) for i in range(k))
        self._tables: tuple[np.ndarray, np.ndarray] | None = None

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, k={self.k}, modulus={list(self.modulus)})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, FieldCtx) and self.p == other.p
                and self.modulus == other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.modulus))

    # -- encoding ---------------------------------------------------------
    def to_coeffs(self, x: int) -> tuple[int, ...]:
        return tuple(pm.decode(x, self.p, self.k))

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        c = pm.trim(coeffs, self.p)
        if len(c) > self.k:
            c = pm.mod(c, self._mod, self.p)
        return pm.encode(c, self.p)

    def elem(self, c: int) -> int:
        """Image of the integer ``c`` in the prime field."""
        return c % self.p

    @property
    def t(self) -> int:
        """The class of t (the adjoined root of the modulus)."""
        return self.from_coeffs([0, 1])

    # -- arithmetic ---------------------------------------------------------
    def add(self, x: int, y: int) -> int:
        if self.k == 1:
            return (x + y) % self.p
        a, b = pm.decode(x, self.p, self.k), pm.decode(y, self.p, self.k)
        return pm.encode([(u + v) % self.p for u, v in zip(a, b)], self.p)

    def neg(self, x: int) -> int:
        if self.k == 1:
            return -x % self.p
        return pm.encode([-c % self.p for c in pm.decode(x, self.p, self.k)], self.p)

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if self.k == 1:
            return x * y % self.p
        a, b = pm.decode(x, self.p, self.k), pm.decode(y, self.p, self.k)
        return pm.encode(pm.mulmod(a, b, self._mod, self.p), self.p)

    def pow(self, x: int, e: int) -> int:
        if e < 0:
            x, e = self.inv(x), -e
        if self.k == 1:
            return pow(x, e, self.p)
        return pm.encode(pm.powmod(pm.decode(x, self.p, self.k), e, self._mod, self.p), self.p)

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.pow(x, self.q - 2)

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def frob(self, x: int, e: int = 1) -> int:
        """x^(p^e)."""
        return self.pow(x, self.p ** e)

    def trace(self, x: int) -> int:
        """Absolute trace sum_{i<k} x^(p^i), computed via Frobenius powers."""
        acc, y = 0, x
        for _ in range(self.k):
            acc = self.add(acc, y)
            y = self.frob(y)
        if acc >= self.p:
            raise AssertionError("trace left the prime field")
        return acc

    def trace_linear(self, x: int) -> int:
        """Same value as :meth:`trace`, from the precomputed traces of the basis."""
        return sum(c * t for c, t in zip(pm.decode(x, self.p, self.k), self.basis_traces)) % self.p

    def in_subfield(self, x: int, d: int) -> bool:
        return self.frob(x, d) == x

    def elements(self) -> range:
        return range(self.q)

    # -- multiplicative structure -----------------------------------------
    def order(self, x: int) -> int:
        if x == 0:
            raise FieldError("0 has no multiplicative order")
        n = self.q - 1
        for r in pm.prime_factors(self.q - 1):
            while n % r == 0 and self.pow(x, n // r) == 1:
                n //= r
        return n

    @cached_property
    def generator(self) -> int:
        """Least element (by encoding) of multiplicative order q - 1."""
        n = self.q - 1
        rs = pm.prime_factors(n)
        for x in range(1, self.q):
            if all(self.pow(x, n // r) != 1 for r in rs):
                return x
        raise AssertionError("no generator found")

    def root_of_unity(self, d: int) -> int:
        """The canonical primitive d-th root of unity g^((q-1)/d)."""
        if (self.q - 1) % d:
            raise FieldError(f"F_{self.q} has no primitive {d}-th root of unity")
        return self.pow(self.generator, (self.q - 1) // d)

    def _mul_matrix(self, c: int) -> np.ndarray:
        """Matrix over F_p of x -> c*x on coefficient vectors (row-vector convention)."""
        rows = []
        for i in range(self.k):
            rows.append(pm.decode(self.mul(c, self.p ** i), self.p, self.k))
        return np.array(rows, dtype=np.int64)

    def _build_tables(self) -> tuple[np.ndarray, np.ndarray]:
        n = self.q - 1
        g = self.generator
        if self.k == 1:
            exp = np.ones(1, dtype=np.int64)
            while len(exp) < n:
                step = self.pow(g, len(exp))
                exp = np.concatenate([exp, exp * step % self.p])
            exp = exp[:n]
        else:
            weights = self.p ** np.arange(self.k, dtype=np.int64)
            digits = np.zeros((1, self.k), dtype=np.int64)
            digits[0, 0] = 1
            while len(digits) < n:
                step = self._mul_matrix(self.pow(g, len(digits)))
                digits = np.concatenate([digits, digits @ step % self.p])
            exp = (digits[:n] * weights).sum(axis=1)
        dlog = np.full(self.q, -1, dtype=np.int64)
        dlog[exp] = np.arange(n, dtype=np.int64)
        if (dlog[1:] < 0).any():
            raise AssertionError("generator does not have full order")
        return exp, dlog

    def install_tables(self, exp: np.ndarray) -> None:
        """Adopt an externally stored exp table after spot-checking it."""
        exp = np.asarray(exp, dtype=np.int64)
        n = self.q - 1
        if exp.shape != (n,) or exp[0] != 1 or (n > 1 and exp[1] != self.generator):
            raise FieldError("exp table does not match this field")
        for j in range(0, n - 1, max(1, n // 16)):
            if self.mul(int(exp[j]), self.generator) != exp[j + 1]:
                raise FieldError("exp table is inconsistent")
        dlog = np.full(self.q, -1, dtype=np.int64)
        dlog[exp] = np.arange(n, dtype=np.int64)
        if (dlog[1:] < 0).any():
            raise FieldError("exp table is not a permutation of F_q^x")
        self._tables = (exp, dlog)

    def _ensure_tables(self) -> tuple[np.ndarray, np.ndarray]:
        if self._tables is None:
            self._tables = self._build_tables()
        return self._tables

    @property
    def exp_table(self) -> np.ndarray:
        """exp_table[j] = g^j for 0 <= j < q - 1."""
        return self._ensure_tables()[0]

    @property
    def dlog_table(self) -> np.ndarray:
        """dlog_table[x] = log_g x; entry 0 is -1."""
        return self._ensure_tables()[1]

    @cached_property
    def trace_table(self) -> np.ndarray:
        """trace_table[j] = tr(g^j)."""
        exp = self.exp_table
        if self.k == 1:
            return exp.copy()
        digits = np.stack([(exp // self.p ** i) % self.p for i in range(self.k)], axis=1)
        return digits @ np.array(self.basis_traces, dtype=np.int64) % self.p

    def dlog(self, x: int) -> int:
        if x == 0 or not 0 < x < self.q:
            raise FieldError("discrete log of 0 (or of a non-element) is undefined")
        return int(self.dlog_table[x])

    def exp(self, j: int) -> int:
        return int(self.exp_table[j % (self.q - 1)])

    def is_square(self, x: int) -> bool:
        return x != 0 and self.dlog(x) % 2 == 0


def _least_irreducible(p: int, k: int) -> list[int]:
    if k == 1:
        return [0, 1]
    for e in range(p ** k):
        f = pm.decode(e, p, k) + [1]
        if pm.is_irreducible(f, p):
            return f
    raise AssertionError("unreachable: irreducibles exist in every degree")


def ff_make(p: int, k: int = 1, modulus: Sequence[int] | None = None) -> FieldCtx:
    """Field context for odd p with canonical (least-encoding) modulus and generator."""
    if not isinstance(p, int) or p % 2 == 0:
        raise FieldError(f"p={p!r} must be an odd prime")
    return FieldCtx(p, k, modulus)


def ff_trace(ctx: FieldCtx, x: int) -> int:
    return ctx.trace(x)


def ff_dlog(ctx: FieldCtx, x: int) -> int:
    return ctx.dlog(x)
