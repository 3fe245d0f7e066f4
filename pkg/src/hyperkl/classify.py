"""Classification data for simple groups of Lie type in characteristic ell.

Group orders of the classical groups, minimal projective dimensions m(S),
outer automorphism group orders |Out(S)|, the finite candidate list allowed by
l <= m(S) <= n^(gcd(f, a)/a), and the numeric exclusion tests for the
geometric Aschbacher classes C2..C5.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

FAMILIES = ("A", "2A", "B", "C", "D", "2D", "3D4", "G2", "F4", "E6", "2E6", "E7", "E8")

# smallest admissible rank per family; exceptional families have a fixed rank
MIN_RANK = {"A": 1, "2A": 2, "B": 2, "C": 3, "D": 4, "2D": 4}
FIXED_RANK = {"3D4": 4, "G2": 2, "F4": 4, "E6": 6, "2E6": 6, "E7": 7, "E8": 8}


class ClassifyError(ValueError):
    pass


@dataclass(frozen=True)
class GroupDescriptor:
    """Simple group of Lie type with rank l over F_r, r = ell^a.

    Residues of r are derived from ``ell`` when given; otherwise ``r_mod3`` /
    ``r_mod4`` can be supplied directly for the families that need them.
    """

    family: str
    l: int
    a: int = 1
    ell: int | None = None
    r_mod3: int | None = None
    r_mod4: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ClassifyError(f"unknown family {self.family!r}")
        if self.a < 1:
            raise ClassifyError("field exponent a must be >= 1")
        if self.family in FIXED_RANK:
            if self.l != FIXED_RANK[self.family]:
                raise ClassifyError(f"{self.family} has rank {FIXED_RANK[self.family]}, got {self.l}")
        elif self.l < MIN_RANK[self.family]:
            raise ClassifyError(f"{self.family}_l needs l >= {MIN_RANK[self.family]}, got {self.l}")

    @property
    def name(self) -> str:
        if self.family in FIXED_RANK:
            return self.family
        return f"{self.family}_{self.l}"

    def r_mod(self, k: int) -> int:
        if self.ell is not None:
            return pow(self.ell, self.a, k)
        given = {3: self.r_mod3, 4: self.r_mod4}.get(k)
        if given is None:
            raise ClassifyError(f"{self.name}: r mod {k} is needed but neither ell nor the residue was given")
        return given % k

    def record(self) -> dict:
        return {"family": self.family, "l": self.l, "a": self.a, "m_S": m_lower(self), "out_order": out_order(self)}


def group_order(family: str, n: int, q: int) -> int:
    """|SL_n(q)|, |Sp_n(q)| or |SU_n(q)|."""
    if n < 1 or q < 2:
        raise ClassifyError("need n >= 1 and q >= 2")
    if family == "SL":
        out = q ** (n * (n - 1) // 2)
        for i in range(2, n + 1):
            out *= q ** i - 1
        return out
    if family == "Sp":
        if n % 2:
            raise ClassifyError("Sp_n needs even n")
        m = n // 2
        out = q ** (m * m)
        for i in range(1, m + 1):
            out *= q ** (2 * i) - 1
        return out
    if family == "SU":
        out = q ** (n * (n - 1) // 2)
        for i in range(2, n + 1):
            out *= q ** i - (-1) ** i
        return out
    raise ClassifyError(f"unknown classical family {family!r}")


def m_lower(d: GroupDescriptor) -> int:
    """Minimal dimension of a faithful irreducible projective representation in defining characteristic."""
    f, l = d.family, d.l
    if f in ("A", "2A"):
        return l + 1
    if f == "B":
        return 2 * l + 1
    if f in ("C", "D", "2D"):
        return 2 * l
    return {"3D4": 8, "G2": 7, "F4": 26, "E6": 27, "2E6": 27, "E7": 56, "E8": 248}[f]


def out_order(d: GroupDescriptor) -> int:
    f, l, a = d.family, d.l, d.a
    if f == "A":
        if l == 1 or l % 2 == 0:
            return 2 * a
        return 2 * a * math.gcd(l + 1, (d.r_mod(l + 1) - 1) % (l + 1))
    if f == "2A":
        if l % 2 == 0:
            return 2 * a
        return 2 * a * math.gcd(l + 1, (d.r_mod(l + 1) + 1) % (l + 1))
    if f in ("B", "C"):
        return 2 * a
    if f == "D":
        if l == 4:
            return 12 * a
        if l % 2 == 0:
            return 8 * a
        return 8 * a if d.r_mod(4) == 1 else 4 * a
    if f == "2D":
        if d.r_mod(4) == 1:
            return 4 * a
        return 8 * a if l % 2 else 4 * a
    if f == "E6":
        return 6 * a if d.r_mod(3) == 1 else 2 * a
    if f == "2E6":
        return 2 * a if d.r_mod(3) == 1 else 6 * a
    if f == "E7":
        return 2 * a
    return a  # 3D4, E8, F4, G2


def out_multiplier(d: GroupDescriptor) -> int:
    """N with |Out(S)| = N a."""
    return out_order(d) // d.a


def max_field_exponent(n: int, f: int) -> int:
    """Largest a with 2^a <= n^f: m(S) >= 2 forces a below this."""
    a = 0
    while 2 ** (a + 1) <= n ** f:
        a += 1
    return a


def _within_bound(m: int, n: int, f: int, a: int) -> bool:
    # m <= n^(g/a)  <=>  m^a <= n^g
    g = math.gcd(f, a)
    return m ** a <= n ** g


def candidate_survey(n: int, ell: int, f: int = 1) -> list[GroupDescriptor]:
    """All (family, l, a) with l <= m(S) <= n^(gcd(f,a)/a), sorted by (family, l, a)."""
    if n < 2 or f < 1:
        raise ClassifyError("need n >= 2 and f >= 1")
    out = []
    for a in range(1, max_field_exponent(n, f) + 1):
        for fam in FAMILIES:
            if fam in FIXED_RANK:
                ranks = [FIXED_RANK[fam]]
            else:
                ranks = range(MIN_RANK[fam], n + 1)
            for l in ranks:
                d = GroupDescriptor(fam, l, a, ell)
                m = m_lower(d)
                if l <= m and _within_bound(m, n, f, a):
                    out.append(d)
    order = {fam: i for i, fam in enumerate(FAMILIES)}
    return sorted(out, key=lambda d: (order[d.family], d.l, d.a))


def _prime_power(n: int) -> tuple[int, int] | None:
    for r in range(2, n + 1):
        if n % r == 0:
            m = 0
            while n % r == 0:
                n //= r
                m += 1
            return (r, m) if n == 1 else None
    return None


def geometric_exclusions(n: int, ell: int) -> dict:
    """Which geometric classes are ruled out for (n, ell) by the numeric arguments."""
    if n < 2:
        raise ClassifyError("n must be >= 2")
    c23 = ell > n and (n * (n - 1)) % ell != 0
    c23_reason = f"ell={ell} {'>' if ell > n else '<='} n={n}; ell {'does not divide' if n * (n - 1) % ell else 'divides'} n(n-1)={n * (n - 1)}"
    c4_bound = 2 ** n * math.factorial(n)
    report = {
        "n": n,
        "ell": ell,
        "C2": {"excluded": c23, "witness": c23_reason},
        "C3": {"excluded": c23, "witness": c23_reason, "applies_to": "Sp"},
        "C4": {"excluded": ell > c4_bound, "bound": c4_bound,
               "witness": f"ell={ell} vs 2^n n! = {c4_bound} (bound only)"},
    }
    pp = _prime_power(n)
    if pp is None:
        report["C5"] = {"applicable": False, "excluded": True, "witness": f"n={n} is not a prime power"}
    else:
        r, m = pp
        bound = r ** (m * (2 * m + 1))
        report["C5"] = {"applicable": True, "r": r, "m": m, "bound": bound, "excluded": ell > bound,
                        "witness": f"ell={ell} vs r^(m(2m+1)) = {r}^{m * (2 * m + 1)} = {bound}"}
    return report


def descriptor_from_record(rec: dict) -> GroupDescriptor:
    keys = ("family", "l", "a", "ell", "r_mod3", "r_mod4")
    return GroupDescriptor(**{k: rec[k] for k in keys if k in rec})


__all__ = [
    "GroupDescriptor", "ClassifyError", "FAMILIES", "group_order", "m_lower", "out_order",
    "out_multiplier", "candidate_survey", "geometric_exclusions", "max_field_exponent",
    "descriptor_from_record",
]
