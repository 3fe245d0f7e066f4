"""Matrices over finite fields and the group-theoretic checks around Kloosterman monodromy.

Covers the unipotent Jordan block u and the signed cyclic shift m, closure of
matrix groups (vectorised BFS, plus Schreier-Sims on the action on vectors
when BFS is hopeless), invariant bilinear forms, the explicit matrix model of
inertia at infinity, and the power property of subfield normalisers.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence, Union

import numpy as np

from .cyclotomic import CycloInt, CycloRing, ReductionCtx
from .field import FieldCtx, FieldError

FieldLike = Union[FieldCtx, int]


class MatGroupError(ValueError):
    pass


def as_field(F: FieldLike) -> FieldCtx:
    return F if isinstance(F, FieldCtx) else FieldCtx(int(F))


@dataclass(frozen=True)
class MatFin:
    """n x n matrix over a finite field; entries are field encodings, row-major."""

    field: FieldCtx
    rows: tuple

    @classmethod
    def from_rows(cls, F: FieldLike, rows: Iterable[Iterable[int]]) -> "MatFin":
        F = as_field(F)
        if F.k == 1:
            rr = tuple(tuple(int(x) % F.p for x in r) for r in rows)
        else:
            rr = tuple(tuple(int(x) for x in r) for r in rows)
        if any(len(r) != len(rr) for r in rr):
            raise MatGroupError("matrix must be square")
        return cls(F, rr)

    @classmethod
    def identity(cls, F: FieldLike, n: int) -> "MatFin":
        return cls.from_rows(F, [[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def n(self) -> int:
        return len(self.rows)

    def __repr__(self) -> str:
        return f"MatFin(F_{self.field.q}, {[list(r) for r in self.rows]})"

    def _same(self, other: "MatFin") -> None:
        if other.field != self.field or other.n != self.n:
            raise MatGroupError("matrices over different fields or of different sizes")

    def __matmul__(self, other: "MatFin") -> "MatFin":
        self._same(other)
        F, n = self.field, self.n
        cols = list(zip(*other.rows))
        if F.k == 1:
            p = F.p
            rows = tuple(tuple(sum(a * b for a, b in zip(r, c)) % p for c in cols) for r in self.rows)
        else:
            rows = []
            for r in self.rows:
                out = []
                for c in cols:
                    acc = 0
                    for a, b in zip(r, c):
                        if a and b:
                            acc = F.add(acc, F.mul(a, b))
                    out.append(acc)
                rows.append(tuple(out))
            rows = tuple(rows)
        return MatFin(F, rows)

    __mul__ = __matmul__

    def __add__(self, other: "MatFin") -> "MatFin":
        self._same(other)
        F = self.field
        return MatFin(F, tuple(tuple(F.add(a, b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "MatFin") -> "MatFin":
        self._same(other)
        F = self.field
        return MatFin(F, tuple(tuple(F.sub(a, b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def scale(self, c: int) -> "MatFin":
        F = self.field
        return MatFin(F, tuple(tuple(F.mul(c, a) for a in r) for r in self.rows))

    def __pow__(self, e: int) -> "MatFin":
        base = self if e >= 0 else self.inv()
        e = abs(e)
        out = MatFin.identity(self.field, self.n)
        while e:
            if e & 1:
                out = out @ base
            base = base @ base
            e >>= 1
        return out

    def transpose(self) -> "MatFin":
        return MatFin(self.field, tuple(zip(*self.rows)))

    T = property(transpose)

    def is_identity(self) -> bool:
        return all(a == int(i == j) for i, r in enumerate(self.rows) for j, a in enumerate(r))

    def _echelon(self) -> tuple[list[list[int]], int, int]:
        """Row-reduce a copy; returns (matrix, rank, determinant of the square input)."""
        F = self.field
        A = [list(r) for r in self.rows]
        n, ncols = len(A), len(A[0]) if A else 0
        det, rank = 1, 0
        for col in range(ncols):
            piv = next((i for i in range(rank, n) if A[i][col]), None)
            if piv is None:
                det = 0
                continue
            if piv != rank:
                A[rank], A[piv] = A[piv], A[rank]
                det = F.neg(det)
            det = F.mul(det, A[rank][col])
            inv = F.inv(A[rank][col])
            A[rank] = [F.mul(inv, x) for x in A[rank]]
            for i in range(n):
                if i != rank and A[i][col]:
                    c = A[i][col]
                    A[i] = [F.sub(x, F.mul(c, y)) for x, y in zip(A[i], A[rank])]
            rank += 1
        return A, rank, det if rank == n else 0

    def det(self) -> int:
        return self._echelon()[2]

    def rank(self) -> int:
        return self._echelon()[1]

    def inv(self) -> "MatFin":
        F, n = self.field, self.n
        aug = MatFin(F, tuple(tuple(r) + tuple(int(i == j) for j in range(n)) for i, r in enumerate(self.rows)))
        A, rank, _ = aug._echelon()
        if any(A[i][i] != 1 for i in range(n)) or rank < n:
            raise MatGroupError("matrix is singular")
        return MatFin(F, tuple(tuple(r[n:]) for r in A))

    def order(self, limit: int = 10 ** 6) -> int:
        x = self
        for k in range(1, limit + 1):
            if x.is_identity():
                return k
            x = x @ self
        raise MatGroupError(f"order exceeds {limit}")

    def entries_in_subfield(self, d: int) -> bool:
        F = self.field
        return all(F.in_subfield(a, d) for r in self.rows for a in r)

    def to_numpy(self) -> np.ndarray:
        if self.field.k != 1:
            raise MatGroupError("numpy form only for prime fields")
        return np.array(self.rows, dtype=np.int64)

    def to_json(self) -> dict:
        F = self.field
        return {"field": {"p": F.p, "k": F.k, "modulus": list(F.modulus)},
                "rows": [list(r) for r in self.rows]}


def jordan_ranks(M: MatFin) -> list[int]:
    """rank((M - I)^j) for j = 0 .. n."""
    N = M - MatFin.identity(M.field, M.n)
    out, P = [], MatFin.identity(M.field, M.n)
    for _ in range(M.n + 1):
        out.append(P.rank())
        P = P @ N
    return out


def has_single_jordan_block(M: MatFin) -> bool:
    """Unipotent with one Jordan block iff rank((M - I)^j) = n - j for all j."""
    return jordan_ranks(M) == [M.n - j for j in range(M.n + 1)]


# -- the elements u and m ---------------------------------------------------------

def elem_u(n: int, F: FieldLike) -> MatFin:
    """Upper unitriangular Jordan block: ones on the diagonal and superdiagonal."""
    if n < 2:
        raise MatGroupError("n must be >= 2")
    return MatFin.from_rows(F, [[int(j == i or j == i + 1) for j in range(n)] for i in range(n)])


def elem_m(n: int, F: FieldLike) -> MatFin:
    """Cyclic shift e_j -> e_{j+1} with e_n -> (-1)^(n+1) e_1."""
    if n < 2:
        raise MatGroupError("n must be >= 2")
    F = as_field(F)
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = 1
    rows[0][n - 1] = F.elem((-1) ** (n + 1))
    return MatFin.from_rows(F, rows)


def unipotent_order(n: int, ell: int) -> int:
    """ell^ceil(log_ell n): order of a single n x n Jordan block in characteristic ell."""
    e, r = 0, 1
    while r < n:
        r *= ell
        e += 1
    return r


def unipotent_order_direct(n: int, ell: int) -> int:
    """Order of elem_u(n) over F_ell by repeated multiplication."""
    u = elem_u(n, ell).to_numpy()
    x = u.copy()
    eye = np.eye(n, dtype=np.int64)
    k = 1
    while not np.array_equal(x, eye):
        x = x @ u % ell
        k += 1
    return k


# -- closure --------------------------------------------------------------------

@dataclass
class ClosureResult:
    order: int | None
    exceeded: bool
    visited: int
    cap: int

    def __bool__(self) -> bool:
        return not self.exceeded


def group_closure(gens: Sequence[MatFin], cap: int = 10 ** 7) -> ClosureResult:
    """Breadth-first closure of the group generated by ``gens`` (right multiplication).

    Stops once more than ``cap`` elements have been seen.
    """
    gens = list(gens)
    if not gens:
        raise MatGroupError("need at least one generator")
    F, n = gens[0].field, gens[0].n
    for g in gens:
        g._same(gens[0])
        if g.det() == 0:
            raise MatGroupError("generators must be invertible")
    if F.k == 1 and F.p ** (n * n) < 2 ** 62:
        return _closure_packed(gens, cap)
    return _closure_generic(gens, cap)


def _closure_packed(gens: Sequence[MatFin], cap: int) -> ClosureResult:
    ell, n = gens[0].field.p, gens[0].n
    G = [g.to_numpy() for g in gens]
    weights = ell ** np.arange(n * n, dtype=np.int64)

    def encode(A: np.ndarray) -> np.ndarray:
        return A.reshape(len(A), -1) @ weights

    frontier = np.eye(n, dtype=np.int64)[None]
    seen = encode(frontier)
    while len(frontier):
        cand = np.concatenate([frontier @ g % ell for g in G])
        codes, idx = np.unique(encode(cand), return_index=True)
        pos = np.searchsorted(seen, codes)
        pos[pos == len(seen)] = 0
        fresh = seen[pos] != codes
        frontier = cand[idx[fresh]]
        seen = np.union1d(seen, codes[fresh])
        if len(seen) > cap:
            return ClosureResult(None, True, len(seen), cap)
    return ClosureResult(len(seen), False, len(seen), cap)


def _closure_generic(gens: Sequence[MatFin], cap: int) -> ClosureResult:
    start = MatFin.identity(gens[0].field, gens[0].n)
    seen = {start.rows}
    frontier = [start]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x @ g
                if y.rows not in seen:
                    seen.add(y.rows)
                    nxt.append(y)
                    if len(seen) > cap:
                        return ClosureResult(None, True, len(seen), cap)
        frontier = nxt
    return ClosureResult(len(seen), False, len(seen), cap)


def group_elements(gens: Sequence[MatFin], cap: int = 10 ** 6) -> list[MatFin]:
    """Explicit element list of <gens> (generic BFS; meant for small groups)."""
    F, n = gens[0].field, gens[0].n
    start = MatFin.identity(F, n)
    seen = {start.rows: start}
    frontier = [start]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x @ g
                if y.rows not in seen:
                    seen[y.rows] = y
                    nxt.append(y)
        if len(seen) > cap:
            raise MatGroupError(f"group has more than {cap} elements")
        frontier = nxt
    return list(seen.values())


def vector_permutations(gens: Sequence[MatFin]) -> list[list[int]]:
    """Each generator as a permutation of the nonzero vectors of F_ell^n (faithful action)."""
    F, n = gens[0].field, gens[0].n
    if F.k != 1:
        raise MatGroupError("vector action implemented for prime fields only")
    ell = F.p
    vecs = np.array(list(itertools.product(range(ell), repeat=n))[1:], dtype=np.int64)
    weights = ell ** np.arange(n - 1, -1, -1, dtype=np.int64)
    out = []
    for g in gens:
        img = vecs @ g.to_numpy().T % ell
        out.append((img @ weights - 1).tolist())
    return out


def group_order_schreier_sims(gens: Sequence[MatFin]) -> int:
    """Exact |<gens>| through Schreier-Sims on the action on nonzero vectors."""
    from sympy.combinatorics import Permutation, PermutationGroup

    perms = [Permutation(p) for p in vector_permutations(gens)]
    return int(PermutationGroup(perms).order())


# -- linear algebra over a field ---------------------------------------------------

def nullspace(F: FieldCtx, rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of {x : A x = 0} over F, from reduced row echelon form."""
    A = [list(r) for r in rows if any(r)]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][col]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = F.inv(A[r][col])
        A[r] = [F.mul(inv, x) for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][col]:
                c = A[i][col]
                A[i] = [F.sub(x, F.mul(c, y)) for x, y in zip(A[i], A[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [0] * ncols
        v[fcol] = 1
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(A[i][fcol])
        basis.append(v)
    return basis


@dataclass
class BilinearReport:
    field: FieldCtx
    n: int
    basis: list[MatFin]
    symmetric: list[MatFin]
    alternating: list[MatFin]
    nondegenerate_alternating: bool
    witness: MatFin | None = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def summary(self) -> dict:
        return {"dim": self.dim, "dim_symmetric": len(self.symmetric),
                "dim_alternating": len(self.alternating),
                "nondegenerate_alternating": self.nondegenerate_alternating}


def invariant_bilinear(gens: Sequence[MatFin], *, seed: int = 0, samples: int = 256) -> BilinearReport:
    """All A with g^T A g = A for every generator, split into symmetric/alternating parts."""
    gens = list(gens)
    F, n = gens[0].field, gens[0].n
    N = n * n
    rows = []
    for g in gens:
        G = g.rows
        for i in range(n):
            for j in range(n):
                row = [0] * N
                for k in range(n):
                    if G[k][i]:
                        for l in range(n):
                            if G[l][j]:
                                row[k * n + l] = F.add(row[k * n + l], F.mul(G[k][i], G[l][j]))
                row[i * n + j] = F.sub(row[i * n + j], 1)
                rows.append(row)

    def as_mats(vs):
        return [MatFin(F, tuple(tuple(v[i * n:(i + 1) * n]) for i in range(n))) for v in vs]

    sym_rows, alt_rows = [], []
    for i in range(n):
        for j in range(n):
            r = [0] * N
            if i < j:
                r[i * n + j], r[j * n + i] = 1, F.neg(1)
                sym_rows.append(r)
                a = [0] * N
                a[i * n + j], a[j * n + i] = 1, 1
                alt_rows.append(a)
            elif i == j:
                r[i * n + i] = 1
                alt_rows.append(r)
    basis = as_mats(nullspace(F, rows, N))
    sym = as_mats(nullspace(F, rows + sym_rows, N))
    alt = as_mats(nullspace(F, rows + alt_rows, N))

    witness = None
    if alt:
        rng = random.Random(seed)
        d = len(alt)
        if F.q ** d <= 4096:
            combos: Iterable = itertools.product(range(F.q), repeat=d)
        else:
            combos = ([rng.randrange(F.q) for _ in range(d)] for _ in range(samples))
        zero = MatFin(F, tuple((0,) * n for _ in range(n)))
        for cs in combos:
            A = zero
            for c, B in zip(cs, alt):
                if c:
                    A = A + B.scale(c)
            if A.det() != 0:
                witness = A
                break
    return BilinearReport(F, n, basis, sym, alt, witness is not None, witness)


# -- inertia at infinity --------------------------------------------------------------

@dataclass(frozen=True)
class InertiaElement:
    """sigma(a0, i0): Z -> zeta_2n^i0 Z, W -> zeta_2n^(2 i0) (W + a0)."""

    a0: int
    i0: int


def _zeta_n(ctx: FieldCtx, n: int) -> int:
    # equals zeta_2n^2 for the canonical zeta_2n = g^((q-1)/2n)
    return ctx.root_of_unity(n)


def _check_inertia(ctx: FieldCtx, n: int, sigma: InertiaElement) -> None:
    if n < 2:
        raise MatGroupError("n must be >= 2")
    if (ctx.q - 1) % (2 * n):
        if (ctx.q - 1) % n or sigma.i0 % (2 * n):
            raise MatGroupError(f"F_{ctx.q} lacks a primitive {2 * n}-th root of unity")


def inertia_compose(sigma: InertiaElement, tau: InertiaElement, ctx: FieldCtx, n: int) -> InertiaElement:
    """(a, i) * (b, j) = (a + zeta_2n^(-2i) b, i + j)."""
    _check_inertia(ctx, n, sigma)
    _check_inertia(ctx, n, tau)
    z = ctx.pow(_zeta_n(ctx, n), -sigma.i0)
    return InertiaElement(ctx.add(sigma.a0, ctx.mul(z, tau.a0)), (sigma.i0 + tau.i0) % (2 * n))


def inertia_group(ctx: FieldCtx, n: int) -> list[InertiaElement]:
    return [InertiaElement(a, i) for a in range(ctx.q) for i in range(2 * n)]


def inertia_entries(ctx: FieldCtx, n: int, sigma: InertiaElement) -> list[list[tuple[int, int] | None]]:
    """Entry (i, j) as (sign, t) meaning sign * zeta_p^t, or None for zero; indices 1..n."""
    _check_inertia(ctx, n, sigma)
    zn = _zeta_n(ctx, n)
    i0 = sigma.i0 % (2 * n)
    out = []
    for i in range(1, n + 1):
        row = []
        t = ctx.trace(ctx.mul(ctx.elem(n), ctx.mul(sigma.a0, ctx.pow(zn, i))))
        for j in range(1, n + 1):
            if (i - j - i0) % n == 0:
                sign = -1 if ((n + 1) * ((j - i + i0) // n)) % 2 else 1
                row.append((sign, t))
            else:
                row.append(None)
        out.append(row)
    return out


class CycloMatrix:
    """Square matrix with entries in Z[zeta_m]."""

    def __init__(self, ring: CycloRing, rows: Sequence[Sequence[CycloInt]]):
        self.ring = ring
        self.rows = [list(r) for r in rows]
        self.n = len(self.rows)

    def __matmul__(self, other: "CycloMatrix") -> "CycloMatrix":
        n = self.n
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = self.ring.zero
                for k in range(n):
                    a, b = self.rows[i][k], other.rows[k][j]
                    if not a.is_zero() and not b.is_zero():
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return CycloMatrix(self.ring, out)

    def __eq__(self, other) -> bool:
        return isinstance(other, CycloMatrix) and self.rows == other.rows

    def det(self) -> CycloInt:
        acc = self.ring.zero
        for perm in itertools.permutations(range(self.n)):
            term = self.ring.const(_perm_sign(perm))
            for i, j in enumerate(perm):
                e = self.rows[i][j]
                if e.is_zero():
                    break
                term = term * e
            else:
                acc = acc + term
        return acc

    def __repr__(self) -> str:
        return f"CycloMatrix(Z[zeta_{self.ring.m}], {self.rows})"

    def trace(self) -> CycloInt:
        acc = self.ring.zero
        for i in range(self.n):
            acc = acc + self.rows[i][i]
        return acc

    def to_json(self) -> list:
        return [[[str(c) for c in e.coeffs] for e in r] for r in self.rows]


def _perm_sign(perm: Sequence[int]) -> int:
    s, seen = 1, set()
    for i in range(len(perm)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def inertia_matrix(ctx: FieldCtx, n: int, sigma: InertiaElement,
                   target: CycloRing | ReductionCtx | None = None):
    """Explicit image of sigma(a0, i0) under the inertia-at-infinity representation.

    ``target`` selects the coefficients: a CycloRing (default Z[zeta_p], exact)
    or a ReductionCtx (matrix over F_lambda).
    """
    entries = inertia_entries(ctx, n, sigma)
    if target is None:
        target = CycloRing(ctx.p)
    if isinstance(target, CycloRing):
        if target.p != ctx.p:
            raise MatGroupError("ring characteristic mismatch")
        zero = target.zero
        rows = [[zero if e is None else target.zeta_p(e[1]) * e[0] for e in r] for r in entries]
        return CycloMatrix(target, rows)
    if isinstance(target, ReductionCtx):
        if target.ring.p != ctx.p:
            raise MatGroupError("reduction context characteristic mismatch")
        F = target.field
        zp = F.pow(target.root, target.m // ctx.p)
        rows = []
        for r in entries:
            row = []
            for e in r:
                if e is None:
                    row.append(0)
                else:
                    v = F.pow(zp, e[1])
                    row.append(v if e[0] == 1 else F.neg(v))
            rows.append(row)
        return MatFin(F, tuple(tuple(r) for r in rows))
    raise MatGroupError(f"unsupported target {target!r}")


@dataclass
class HomomorphismReport:
    pairs: int
    failures: int
    det_failures: int

    @property
    def ok(self) -> bool:
        return self.failures == 0 and self.det_failures == 0


def inertia_homomorphism_sweep(ctx: FieldCtx, n: int, target=None) -> HomomorphismReport:
    """rho(sigma tau) = rho(sigma) rho(tau) and det rho(sigma) = 1 over the whole group."""
    group = inertia_group(ctx, n)
    mats = {s: inertia_matrix(ctx, n, s, target) for s in group}
    one = None
    det_fail = 0
    for M in mats.values():
        d = M.det()
        if isinstance(M, CycloMatrix):
            if d != M.ring.one:
                det_fail += 1
        elif d != 1:
            det_fail += 1
    fails = 0
    for s in group:
        for t in group:
            if mats[s] @ mats[t] != mats[inertia_compose(s, t, ctx, n)]:
                fails += 1
    del one
    return HomomorphismReport(len(group) ** 2, fails, det_fail)


def wild_pairing_report(ctx: FieldCtx, n: int, rc: ReductionCtx) -> BilinearReport:
    """Invariant bilinear forms of the diagonal (wild) matrices {rho(a, 0) : a in F_q}."""
    gens = [inertia_matrix(ctx, n, InertiaElement(a, 0), rc) for a in range(ctx.q)]
    return invariant_bilinear(gens)


# -- subfield normalisers -----------------------------------------------------------

def subfield_basis(L: FieldCtx, d: int) -> list[int]:
    """F_ell-basis 1, w, ..., w^(d-1) of the subfield F_{ell^d} of L."""
    if L.k % d:
        raise MatGroupError(f"F_{L.p}^{d} is not a subfield of F_{L.q}")
    w = L.pow(L.generator, (L.q - 1) // (L.p ** d - 1))
    return [L.pow(w, i) for i in range(d)]


def symplectic_form(F: FieldCtx, n: int) -> MatFin:
    if n % 2:
        raise MatGroupError("symplectic groups need even n")
    h = n // 2
    rows = [[0] * n for _ in range(n)]
    for i in range(h):
        rows[i][h + i] = 1
        rows[h + i][i] = F.neg(1)
    return MatFin.from_rows(F, rows)


def _transvection(F: FieldCtx, J: MatFin, v: Sequence[int], c: int) -> MatFin:
    # x -> x + c (v v^T J) x preserves J since v^T J v = 0
    n = len(v)
    Jv = [[J.rows[k][l] for l in range(n)] for k in range(n)]
    vTJ = [0] * n
    for l in range(n):
        acc = 0
        for k in range(n):
            if v[k] and Jv[k][l]:
                acc = F.add(acc, F.mul(v[k], Jv[k][l]))
        vTJ[l] = acc
    rows = [[F.add(int(i == j), F.mul(c, F.mul(v[i], vTJ[j]))) for j in range(n)] for i in range(n)]
    return MatFin(F, tuple(tuple(r) for r in rows))


def classical_generators(kind: str, n: int, L: FieldCtx, d: int | None = None) -> list[MatFin]:
    """Generators of SL_n or Sp_n over the subfield F_{ell^d} of L (d = None: all of L)."""
    d = L.k if d is None else d
    basis = subfield_basis(L, d)
    gens = []
    if kind == "SL":
        for i in range(n):
            for j in range(n):
                if i != j:
                    for c in basis:
                        rows = [[int(a == b) for b in range(n)] for a in range(n)]
                        rows[i][j] = c
                        gens.append(MatFin(L, tuple(tuple(r) for r in rows)))
    elif kind == "Sp":
        J = symplectic_form(L, n)
        vecs = [[int(k == i) for k in range(n)] for i in range(n)]
        vecs += [[int(k in (i, j)) for k in range(n)] for i in range(n) for j in range(i + 1, n)]
        for v in vecs:
            for c in basis:
                gens.append(_transvection(L, J, v, c))
    else:
        raise MatGroupError(f"unknown group {kind!r}")
    return gens


@dataclass
class NormalizerResult:
    ok: bool
    mode: str
    examined: int
    normalizing: int
    failures: list = dc_field(default_factory=list)

    @property
    def vacuous(self) -> bool:
        return self.normalizing == 0

    def __bool__(self) -> bool:
        return self.ok


def _random_element(kind: str, n: int, L: FieldCtx, rng: random.Random) -> MatFin:
    if kind == "SL":
        while True:
            M = MatFin(L, tuple(tuple(rng.randrange(L.q) for _ in range(n)) for _ in range(n)))
            dt = M.det()
            if dt:
                rows = [list(r) for r in M.rows]
                inv = L.inv(dt)
                rows[0] = [L.mul(inv, x) for x in rows[0]]
                return MatFin(L, tuple(tuple(r) for r in rows))
    J = symplectic_form(L, n)
    M = MatFin.identity(L, n)
    for _ in range(4 * n):
        v = [rng.randrange(L.q) for _ in range(n)]
        M = M @ _transvection(L, J, v, rng.randrange(1, L.q))
    return M


def _sampled_candidates(kind: str, n: int, L: FieldCtx, small_gens: Sequence[MatFin],
                        rng: random.Random, samples: int):
    # uniform draws almost never normalise G(k); alternate them with scalar * G(k) elements
    e = n if kind == "SL" else 2
    scalars = [c for c in range(1, L.q) if L.pow(c, e) == 1]
    for s in range(samples):
        if s % 2:
            yield _random_element(kind, n, L, rng)
        else:
            h = MatFin.identity(L, n)
            for _ in range(4 * n):
                h = h @ rng.choice(small_gens)
            yield h.scale(rng.choice(scalars))


def normalizer_power_check(kind: str, n: int, L: FieldCtx, d: int, mode: str = "exhaustive", *,
                           samples: int = 10 ** 4, seed: int = 0, limit: int = 10 ** 6) -> NormalizerResult:
    """Every g in G(L) normalising G(k), k = F_{ell^d}, satisfies g^n in G(k)."""
    from .classify import group_order

    if L.k % d:
        raise MatGroupError(f"degree {d} does not divide [L : F_ell] = {L.k}")
    small_gens = classical_generators(kind, n, L, d)
    # G(k) = matrices of G(L) with entries in k, so membership is an entry test
    inside = lambda M: M.entries_in_subfield(d)  # noqa: E731

    def normalizes(g: MatFin) -> bool:
        gi = g.inv()
        return all(inside(g @ h @ gi) for h in small_gens)

    failures = []
    examined = normalizing = 0
    if mode == "exhaustive":
        size = group_order(kind, n, L.q)
        if size > limit:
            raise MatGroupError(f"|{kind}_{n}(F_{L.q})| = {size} exceeds the exhaustive limit {limit}")
        elems = group_elements(classical_generators(kind, n, L), cap=limit)
        if len(elems) != size:
            raise AssertionError("generators did not produce the whole group")
        candidates: Iterable[MatFin] = elems
    elif mode == "sampled":
        rng = random.Random(seed)
        candidates = _sampled_candidates(kind, n, L, small_gens, rng, samples)
    else:
        raise MatGroupError(f"unknown mode {mode!r}")
    for g in candidates:
        examined += 1
        if not normalizes(g):
            continue
        normalizing += 1
        if not inside(g ** n):
            failures.append(g)
    return NormalizerResult(not failures, mode, examined, normalizing, failures)


__all__ = [
    "MatFin", "MatGroupError", "elem_u", "elem_m", "unipotent_order", "unipotent_order_direct",
    "jordan_ranks", "has_single_jordan_block", "group_closure", "ClosureResult", "group_elements",
    "group_order_schreier_sims", "invariant_bilinear", "BilinearReport", "InertiaElement",
    "inertia_compose", "inertia_matrix", "inertia_group", "inertia_homomorphism_sweep", "CycloMatrix",
    "wild_pairing_report", "normalizer_power_check", "NormalizerResult", "classical_generators",
    "symplectic_form", "nullspace", "FieldError",
]
