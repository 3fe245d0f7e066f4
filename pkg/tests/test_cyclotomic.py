import cmath

import pytest
from hypothesis import given, settings, strategies as st

from hyperkl.cyclotomic import (
    CycloError,
    CycloRing,
    chi2_minus_one,
    gauss_sum,
    make_reduction,
    split_prime,
)
from hyperkl.field import ff_make

R5 = CycloRing(5)
R3 = CycloRing(3)
R20 = CycloRing(20)


def test_basic_identities():
    assert R5.zeta(3) * R5.zeta(4) == R5.zeta(2)
    assert sum((R5.zeta(i) for i in range(5)), R5.zero) == R5.zero
    assert sum((R5.zeta(i) for i in range(1, 5)), R5.zero) == R5.const(-1)
    assert (R3.one + R3.zeta(1)) * (R3.one + R3.zeta(2)) == R3.one


def test_embeddings_golden_ratio():
    x = R5.zeta(1) + R5.zeta(4)
    assert x.embed(1) == pytest.approx(0.6180339887, abs=1e-9)
    assert x.embed(2) == pytest.approx(-1.6180339887, abs=1e-9)
    assert R3.zeta(1).embed(1) == pytest.approx(cmath.exp(2j * cmath.pi / 3))


def test_bad_conductor():
    for m in (9, 15, 8, 2):
        with pytest.raises(CycloError):
            CycloRing(m)


vec5 = st.lists(st.integers(-20, 20), min_size=5, max_size=5)
vec20 = st.lists(st.integers(-9, 9), min_size=20, max_size=20)


@settings(max_examples=80)
@given(vec5, vec5, vec5)
def test_ring_axioms_p(a, b, c):
    x, y, z = (R5.from_exponents(v) for v in (a, b, c))
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert (x * y).embed(2) == pytest.approx(x.embed(2) * y.embed(2), abs=1e-6)


@settings(max_examples=40)
@given(vec20, vec20)
def test_ring_axioms_4p(a, b):
    x, y = R20.from_exponents(a), R20.from_exponents(b)
    for u in (1, 3, 7):
        assert (x * y).embed(u) == pytest.approx(x.embed(u) * y.embed(u), abs=1e-6)
        assert (x + y).galois(u) == x.galois(u) + y.galois(u)


@pytest.mark.parametrize("p, k", [(3, 1), (5, 1), (7, 1), (13, 1), (3, 2), (5, 2), (7, 2), (3, 3)])
def test_gauss_sum_square(p, k):
    ctx = ff_make(p, k)
    G = gauss_sum(CycloRing(p), ctx)
    assert G * G == CycloRing(p).const(chi2_minus_one(ctx) * ctx.q)


def test_gauss_sum_values():
    assert gauss_sum(R3, ff_make(3)).coeffs == (1, 2)
    assert gauss_sum(R5, ff_make(5)).coeffs == (-1, 0, -2, -2)


@pytest.mark.parametrize("m, ell, fg", [(5, 11, (1, 4)), (5, 3, (4, 1)), (13, 5, (4, 3)), (20, 3, (4, 2))])
def test_split_prime(m, ell, fg):
    assert split_prime(m, ell) == fg


def test_split_prime_ramified():
    with pytest.raises(CycloError):
        split_prime(5, 5)


@pytest.mark.parametrize("m, ell, root", [(5, 11, 3), (3, 7, 2)])
def test_reduction_root_choice(m, ell, root):
    rc = make_reduction(CycloRing(m), ell)
    assert rc.f == 1
    assert rc.field.pow(rc.root, 1) == root


def test_reduction_gauss_sum():
    rc = make_reduction(R5, 11)
    s = rc.reduce(gauss_sum(R5, ff_make(5)))
    assert s == 4 and s * s % 11 == 5


@pytest.mark.parametrize("m, ell", [(5, 3), (13, 5), (20, 3), (28, 5), (13, 53)])
def test_reduction_is_homomorphism(m, ell):
    ring = CycloRing(m)
    rc = make_reduction(ring, ell)
    F = rc.field
    for i in range(m):
        for j in range(0, m, 3):
            assert rc.reduce(ring.zeta(i) * ring.zeta(j)) == F.mul(rc.reduce(ring.zeta(i)), rc.reduce(ring.zeta(j)))
    assert rc.reduce(ring.zeta(1)) == rc.root


def test_zeta4_squares_to_minus_one():
    rc = make_reduction(R20, 3)
    z = rc.zeta4()
    assert rc.field.mul(z, z) == rc.field.neg(1)
    with pytest.raises(CycloError):
        make_reduction(R5, 11).zeta4()
