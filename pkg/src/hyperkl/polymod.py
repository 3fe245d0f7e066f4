"""Dense univariate polynomials over a prime field F_p.

Polynomials are plain lists of ints, constant term first, with no trailing
zeros (the zero polynomial is ``[]``).  Everything here is deliberately
small and dependency free; it backs both the extension-field arithmetic and
the factorisation of cyclotomic polynomials modulo a prime.
"""
from __future__ import annotations

import random
from functools import lru_cache
from typing import List, Sequence

Poly = List[int]


def trim(f: Sequence[int], p: int) -> Poly:
    out = [c % p for c in f]
    while out and out[-1] == 0:
        out.pop()
    return out


def deg(f: Poly) -> int:
    return len(f) - 1


def add(f: Poly, g: Poly, p: int) -> Poly:
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = (out[i] + c) % p
    return trim(out, p)


def sub(f: Poly, g: Poly, p: int) -> Poly:
    return add(f, [-c for c in g], p)


def scale(f: Poly, c: int, p: int) -> Poly:
    return trim([c * a for a in f], p)


def mul(f: Poly, g: Poly, p: int) -> Poly:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim(out, p)


def divmod_(f: Poly, g: Poly, p: int) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    dg = len(g) - 1
    inv_lead = pow(g[-1], -1, p)
    if len(r) <= dg:
        return [], trim(r, p)
    qt = [0] * (len(r) - dg)
    for i in range(len(r) - 1, dg - 1, -1):
        c = r[i] % p
        if c == 0:
            continue
        c = c * inv_lead % p
        qt[i - dg] = c
        for j in range(dg + 1):
            r[i - dg + j] -= c * g[j]
    return trim(qt, p), trim(r[:dg], p)


def mod(f: Poly, g: Poly, p: int) -> Poly:
    return divmod_(f, g, p)[1]


def mulmod(f: Poly, g: Poly, m: Poly, p: int) -> Poly:
    return mod(mul(f, g, p), m, p)


def monic(f: Poly, p: int) -> Poly:
    if not f:
        return []
    inv = pow(f[-1], -1, p)
    return [c * inv % p for c in f]


def gcd(f: Poly, g: Poly, p: int) -> Poly:
    f, g = trim(f, p), trim(g, p)
    while g:
        f, g = g, mod(f, g, p)
    return monic(f, p)


def powmod(f: Poly, e: int, m: Poly, p: int) -> Poly:
    result: Poly = [1]
    base = mod(f, m, p)
    while e:
        if e & 1:
            result = mulmod(result, base, m, p)
        base = mulmod(base, base, m, p)
        e >>= 1
    return mod(result, m, p)


def derivative(f: Poly, p: int) -> Poly:
    return trim([i * c for i, c in enumerate(f)][1:], p)


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def is_irreducible(f: Poly, p: int) -> bool:
    """Rabin's irreducibility test."""
    f = trim(f, p)
    k = deg(f)
    if k < 1:
        return False
    if k == 1:
        return True
    f = monic(f, p)
    x = [0, 1]
    if powmod(x, p ** k, f, p) != mod(x, f, p):
        return False
    for r in prime_factors(k):
        h = sub(powmod(x, p ** (k // r), f, p), x, p)
        if deg(gcd(h, f, p)) != 0:
            return False
    return True


def distinct_degree(f: Poly, p: int) -> list[tuple[Poly, int]]:
    """Split a squarefree monic ``f`` into products of equal-degree factors."""
    f = monic(trim(f, p), p)
    out = []
    x = [0, 1]
    h = x
    d = 0
    while deg(f) >= 2 * (d + 1):
        d += 1
        h = powmod(h, p, f, p)
        g = gcd(sub(h, x, p), f, p)
        if deg(g) > 0:
            out.append((g, d))
            f = divmod_(f, g, p)[0]
            h = mod(h, f, p)
    if deg(f) > 0:
        out.append((f, deg(f)))
    return out


def _split_once(f: Poly, d: int, p: int, rng: random.Random) -> Poly:
    n = deg(f)
    while True:
        a = trim([rng.randrange(p) for _ in range(n)], p)
        if deg(a) < 1:
            continue
        if p == 2:
            # absolute trace of a from F_{2^d}
            t, s = a, a
            for _ in range(d - 1):
                s = mulmod(s, s, f, p)
                t = add(t, s, p)
            g = gcd(t, f, p)
        else:
            g = gcd(sub(powmod(a, (p ** d - 1) // 2, f, p), [1], p), f, p)
        if 0 < deg(g) < n:
            return g


def equal_degree(f: Poly, d: int, p: int, seed: int = 0) -> list[Poly]:
    """Cantor-Zassenhaus splitting of a product of distinct degree-``d`` irreducibles."""
    rng = random.Random(seed)
    todo = [monic(trim(f, p), p)]
    done = []
    while todo:
        g = todo.pop()
        if deg(g) == d:
            done.append(g)
        elif deg(g) > d:
            h = _split_once(g, d, p, rng)
            todo.append(h)
            todo.append(divmod_(g, h, p)[0])
    return done


def factor_squarefree(f: Poly, p: int, seed: int = 0) -> list[Poly]:
    """Monic irreducible factors of a squarefree polynomial, sorted by (degree, coefficients)."""
    out = []
    for g, d in distinct_degree(f, p):
        out.extend(equal_degree(g, d, p, seed))
    return sorted(out, key=lambda g: (len(g), g))


@lru_cache(maxsize=None)
def _cyclotomic(m: int) -> tuple[int, ...]:
    # x^m - 1 = prod_{d | m} Phi_d
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num = _int_exact_div(num, list(_cyclotomic(d)))
    return tuple(num)


def cyclotomic_poly(m: int) -> list[int]:
    """Integer coefficients of the m-th cyclotomic polynomial (constant first)."""
    return list(_cyclotomic(m))


def _int_exact_div(f: list[int], g: list[int]) -> list[int]:
    r = list(f)
    dg = len(g) - 1
    qt = [0] * (len(f) - dg)
    for i in range(len(r) - 1, dg - 1, -1):
        c = r[i] // g[-1]
        qt[i - dg] = c
        for j in range(dg + 1):
            r[i - dg + j] -= c * g[j]
    assert not any(r), "inexact division"
    return qt


def encode(f: Sequence[int], p: int) -> int:
    return sum(c * p ** i for i, c in enumerate(f))


def decode(x: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        x, c = divmod(x, p)
        out.append(c)
    return out
