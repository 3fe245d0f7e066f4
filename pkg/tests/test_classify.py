import json
from importlib import resources

import pytest

from hyperkl.classify import (
    FAMILIES,
    ClassifyError,
    GroupDescriptor,
    candidate_survey,
    geometric_exclusions,
    group_order,
    m_lower,
    out_multiplier,
    out_order,
)
from hyperkl.matgroup import elem_m, elem_u, group_closure


@pytest.mark.parametrize("fam, n, q, want", [
    ("SL", 3, 3, 5616), ("Sp", 4, 3, 51840), ("SL", 2, 2, 6), ("SL", 2, 9, 720),
    ("SU", 2, 3, 24), ("SU", 3, 2, 216), ("Sp", 2, 5, 120),
])
def test_group_order(fam, n, q, want):
    assert group_order(fam, n, q) == want


def test_group_order_errors():
    with pytest.raises(ClassifyError):
        group_order("Sp", 3, 5)
    with pytest.raises(ClassifyError):
        group_order("GU", 3, 5)


@pytest.mark.parametrize("n, ell", [(2, 3), (2, 5), (3, 3)])
def test_order_matches_bfs(n, ell):
    assert group_closure([elem_u(n, ell), elem_m(n, ell)]).order == group_order("SL", n, ell)


def test_m_lower_examples():
    assert m_lower(GroupDescriptor("G2", 2)) == 7
    assert m_lower(GroupDescriptor("E8", 8)) == 248
    assert m_lower(GroupDescriptor("A", 1)) == 2


def test_out_order_examples():
    assert out_order(GroupDescriptor("A", 1, a=3)) == 6
    assert out_order(GroupDescriptor("D", 4, a=2, ell=7)) == 24
    assert out_order(GroupDescriptor("A", 3, a=1, ell=5)) == 8
    assert out_order(GroupDescriptor("3D4", 4, a=5)) == 5


def test_out_order_needs_residues():
    with pytest.raises(ClassifyError):
        out_order(GroupDescriptor("E6", 6))
    assert out_order(GroupDescriptor("E6", 6, r_mod3=1)) == 6
    assert out_order(GroupDescriptor("2D", 5, r_mod4=3)) == 8


def test_descriptor_validation():
    with pytest.raises(ClassifyError):
        GroupDescriptor("B", 1)
    with pytest.raises(ClassifyError):
        GroupDescriptor("G2", 3)
    with pytest.raises(ClassifyError):
        GroupDescriptor("H", 2)


def test_golden_table():
    rows = json.loads(resources.files("hyperkl").joinpath("data/classification_golden.json").read_text())["rows"]
    assert len(rows) == 20
    for r in rows:
        d = GroupDescriptor(r["family"], r["l"], r["a"], r["ell"])
        assert (m_lower(d), out_order(d)) == (r["m_S"], r["out_order"])


def _exceptional_out(d):
    # rows whose multiplier is not 1, 2, 6, 8 or 12
    return (d.family in ("A", "2A") and d.l >= 3 and d.l % 2) or \
        (d.family == "D" and d.l % 2 and d.l >= 5) or d.family == "2D"


@pytest.mark.parametrize("ell", [5, 7, 11, 13, 10 ** 6 + 3])
def test_out_normal_form(ell):
    for d in candidate_survey(30, ell, 2):
        if not _exceptional_out(d):
            assert out_multiplier(d) in (1, 2, 6, 8, 12)
        assert out_order(d) % d.a == 0


def test_survey_examples():
    s7 = candidate_survey(7, 10 ** 6 + 3, 1)
    assert any(d.family == "G2" and d.a == 1 for d in s7)
    assert {d.family for d in candidate_survey(2, 7, 1)} == {"A"}
    s5 = candidate_survey(5, 7, 1)
    names = {(d.family, d.l) for d in s5}
    assert {("A", l) for l in range(1, 5)} <= names
    assert ("B", 2) in names and ("G2", 2) not in names


@pytest.mark.parametrize("f", [1, 2, 3])
def test_survey_monotone_and_rank_bound(f):
    prev = set()
    for n in range(2, 40):
        cur = {(d.family, d.l, d.a) for d in candidate_survey(n, 7, f)}
        assert prev <= cur
        prev = cur
        for d in candidate_survey(n, 7, f):
            assert d.l <= m_lower(d)
            assert m_lower(d) ** d.a <= n ** __import__("math").gcd(f, d.a)


def test_survey_order_is_deterministic():
    s = candidate_survey(9, 5, 2)
    key = [(FAMILIES.index(d.family), d.l, d.a) for d in s]
    assert key == sorted(key)


def test_geometric_exclusions():
    r = geometric_exclusions(5, 7)
    assert r["C2"]["excluded"] and r["C3"]["excluded"]
    assert geometric_exclusions(5, 5)["C2"]["excluded"] is False
    assert geometric_exclusions(6, 5)["C2"]["excluded"] is False  # 5 | 30
    c5 = geometric_exclusions(9, 5)["C5"]
    assert c5["bound"] == 59049 and not c5["excluded"]
    assert geometric_exclusions(9, 59051)["C5"]["excluded"]
    assert geometric_exclusions(6, 7)["C5"]["applicable"] is False
    assert geometric_exclusions(3, 53)["C4"] == {"excluded": True, "bound": 48, "witness": "ell=53 vs 2^n n! = 48 (bound only)"}
