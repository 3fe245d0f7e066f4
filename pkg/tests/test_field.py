import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hyperkl.field import FieldCtx, FieldError, ff_dlog, ff_make, ff_trace

FIELDS = [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2), (7, 3), (2, 4)]
F343 = FieldCtx(7, 3)


@pytest.fixture(scope="module", params=FIELDS, ids=lambda pk: f"F{pk[0]}^{pk[1]}")
def F(request):
    return FieldCtx(*request.param)


def test_canonical_choices():
    F9 = ff_make(3, 2)
    assert F9.modulus == (1, 0, 1)
    assert F9.generator == 4  # t + 1
    assert ff_make(7).generator == 3
    assert ff_dlog(ff_make(7), 2) == 2


def test_trace_examples():
    F9 = ff_make(3, 2)
    assert ff_trace(F9, 1) == 2
    assert ff_trace(F9, F9.t) == 0


def test_invalid_parameters():
    with pytest.raises(FieldError):
        ff_make(9)
    with pytest.raises(FieldError):
        ff_make(2)
    with pytest.raises(FieldError):
        FieldCtx(3, 2, modulus=[2, 0, 1])  # x^2 + 2 = (x-1)(x+1)
    with pytest.raises(FieldError):
        ff_make(7).dlog(0)


def test_tables_consistent(F):
    exp, dlog = F.exp_table, F.dlog_table
    assert sorted(exp.tolist()) == list(range(1, F.q))
    assert dlog[0] == -1
    for j in range(F.q - 1):
        assert F.pow(F.generator, j) == exp[j]
        assert dlog[exp[j]] == j


def test_trace_table_agrees_with_frobenius(F):
    for j in range(F.q - 1):
        x = F.exp(j)
        assert F.trace_table[j] == F.trace(x) == F.trace_linear(x)


def test_trace_is_onto_and_balanced(F):
    counts = np.bincount(F.trace_table, minlength=F.p)
    counts[0] += 1  # tr(0) = 0
    assert (counts == F.q // F.p).all()


@settings(max_examples=60)
@given(st.integers(0, 342), st.integers(0, 342), st.integers(0, 342))
def test_field_axioms_f343(x, y, z):
    F = F343
    assert F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z))
    assert F.mul(F.mul(x, y), z) == F.mul(x, F.mul(y, z))
    if x:
        assert F.mul(x, F.inv(x)) == 1
    assert F.frob(F.add(x, y)) == F.add(F.frob(x), F.frob(y))


def test_install_tables_rejects_garbage():
    F = ff_make(11)
    good = F.exp_table.copy()
    G = ff_make(11)
    G.install_tables(good)
    bad = good.copy()
    bad[3], bad[4] = bad[4], bad[3]
    with pytest.raises(FieldError):
        ff_make(11).install_tables(bad)


def test_large_prime_tables_fast():
    F = ff_make(100003)
    assert F.exp_table.shape == (100002,)
    assert F.exp(F.dlog(12345)) == 12345
