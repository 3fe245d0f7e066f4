import itertools

import pytest
from hypothesis import given, settings, strategies as st

from hyperkl.classify import group_order
from hyperkl.cyclotomic import CycloRing, make_reduction
from hyperkl.field import FieldCtx, ff_make
from hyperkl.kloosterman import kl_raw_all, kl_reduce_all, reduction_for, trace_field
from hyperkl.matgroup import (
    InertiaElement,
    MatFin,
    MatGroupError,
    classical_generators,
    elem_m,
    elem_u,
    group_closure,
    group_order_schreier_sims,
    has_single_jordan_block,
    inertia_compose,
    inertia_group,
    inertia_homomorphism_sweep,
    inertia_matrix,
    invariant_bilinear,
    jordan_ranks,
    normalizer_power_check,
    symplectic_form,
    unipotent_order,
    unipotent_order_direct,
    wild_pairing_report,
)


def test_elem_m_n2():
    assert elem_m(2, 5).rows == ((0, 4), (1, 0))


@pytest.mark.parametrize("n", range(2, 8))
def test_elem_m_power(n):
    m = elem_m(n, 7)
    assert m ** n == MatFin.identity(7, n).scale((-1) ** (n + 1) % 7)
    assert m.order() == (n if n % 2 else 2 * n)
    assert m.det() == 1


def test_elem_u_fixes_e1():
    u = elem_u(3, 5)
    e1 = MatFin.from_rows(5, [[1, 0, 0], [0, 0, 0], [0, 0, 0]]).transpose()
    assert (u @ e1) == e1


def test_small_n_rejected():
    with pytest.raises(MatGroupError):
        elem_u(1, 5)
    with pytest.raises(MatGroupError):
        elem_m(1, 5)


@pytest.mark.parametrize("n, ell, want", [(5, 7, 7), (3, 2, 4), (4, 3, 9), (2, 2, 2), (9, 3, 9), (10, 3, 27)])
def test_unipotent_order(n, ell, want):
    assert unipotent_order(n, ell) == want == unipotent_order_direct(n, ell)


@pytest.mark.parametrize("n, ell", [(2, 3), (4, 5), (6, 7), (5, 2)])
def test_single_jordan_block(n, ell):
    assert jordan_ranks(elem_u(n, ell)) == [n - j for j in range(n + 1)]
    assert has_single_jordan_block(elem_u(n, ell))
    assert not has_single_jordan_block(MatFin.identity(ell, n))


mats3 = st.lists(st.integers(0, 6), min_size=9, max_size=9).map(
    lambda v: MatFin.from_rows(7, [v[0:3], v[3:6], v[6:9]]))


@settings(max_examples=60)
@given(mats3, mats3, mats3)
def test_matrix_algebra(a, b, c):
    assert (a @ b) @ c == a @ (b @ c)
    assert (a @ b).det() == a.det() * b.det() % 7
    if a.det():
        assert (a @ a.inv()).is_identity()
        assert a.rank() == 3


def test_matrix_over_extension_field():
    F = FieldCtx(3, 2)
    A = MatFin.from_rows(F, [[F.t, 1], [1, F.t]])
    assert (A @ A.inv()).is_identity()
    assert A.det() == F.sub(F.mul(F.t, F.t), 1) != 0
    singular = MatFin.from_rows(F, [[F.t, 1], [2, F.t]])  # t^2 = -1 = 2
    assert singular.det() == 0
    with pytest.raises(MatGroupError):
        singular.inv()


@pytest.mark.parametrize("n, ell", [(2, 3), (2, 5), (3, 3)])
def test_closure_is_sl(n, ell):
    res = group_closure([elem_u(n, ell), elem_m(n, ell)])
    assert res.order == group_order("SL", n, ell)


def test_closure_identity_and_cap():
    assert group_closure([MatFin.identity(5, 3)]).order == 1
    res = group_closure([elem_u(3, 5), elem_m(3, 5)], cap=1000)
    assert res.exceeded and res.order is None and not res


def test_closure_generic_path_matches():
    # F_9 matrices go through the generic BFS
    F = FieldCtx(3, 2)
    assert group_closure(classical_generators("SL", 2, F)).order == 720


@pytest.mark.parametrize("n, ell", [(3, 3), (2, 7)])
def test_schreier_sims_matches_bfs(n, ell):
    gens = [elem_u(n, ell), elem_m(n, ell)]
    assert group_order_schreier_sims(gens) == group_closure(gens).order


def test_sp4_generators():
    gens = classical_generators("Sp", 4, FieldCtx(3))
    J = symplectic_form(FieldCtx(3), 4)
    assert all(g.T @ J @ g == J for g in gens)
    assert group_closure(gens).order == group_order("Sp", 4, 3) == 51840


def test_invariant_forms_identity():
    assert invariant_bilinear([MatFin.identity(5, 3)]).dim == 9


def test_invariant_forms_permutations():
    mats = []
    for perm in itertools.permutations(range(3)):
        mats.append(MatFin.from_rows(5, [[int(perm[i] == j) for j in range(3)] for i in range(3)]))
    rep = invariant_bilinear(mats)
    I = MatFin.identity(5, 3)
    # the identity form lies in the span of the symmetric solutions
    assert rep.dim == 2 and len(rep.symmetric) == 2
    coeffs = itertools.product(range(5), repeat=2)
    zero = I.scale(0)
    span = [rep.symmetric[0].scale(a) + rep.symmetric[1].scale(b) for a, b in coeffs]
    assert I in span and zero in span


def test_invariant_forms_sl2():
    rep = invariant_bilinear([elem_u(2, 5), elem_m(2, 5)])
    assert rep.dim == 1 and rep.nondegenerate_alternating
    B = rep.basis[0]
    target = MatFin.from_rows(5, [[0, 1], [-1, 0]])
    assert any(B.scale(c) == target for c in range(1, 5))


F13 = ff_make(13)


def test_inertia_matrix_examples():
    M = inertia_matrix(F13, 2, InertiaElement(0, 1))
    R = M.ring
    assert M.rows == [[R.zero, R.const(-1)], [R.one, R.zero]]
    for n in (2, 3, 4):
        I = inertia_matrix(F13, n, InertiaElement(0, 0))
        assert all(I.rows[i][j] == (R.one if i == j else R.zero) for i in range(n) for j in range(n))


def test_inertia_wild_trace():
    z3 = F13.root_of_unity(3)
    for a in (1, 5):
        M = inertia_matrix(F13, 3, InertiaElement(a, 0))
        want = F13.mul(3, a)
        terms = [M.ring.zeta_p(F13.trace(F13.mul(want, F13.pow(z3, i)))) for i in (1, 2, 3)]
        assert M.trace() == terms[0] + terms[1] + terms[2]


def test_inertia_compose_examples():
    s = InertiaElement(7, 3)
    assert inertia_compose(s, InertiaElement(0, 0), F13, 2) == s
    assert inertia_compose(InertiaElement(0, 1), InertiaElement(0, 1), F13, 2) == InertiaElement(0, 2)
    # zeta_4 = 8 here; 8^-2 = -1 = 5^-2, so 1 + zeta_4^-2 = 0
    assert F13.root_of_unity(4) == 8
    assert inertia_compose(InertiaElement(1, 1), InertiaElement(1, 0), F13, 2) == InertiaElement(0, 1)


def test_inertia_group_associative():
    G = inertia_group(ff_make(7), 3)
    assert len(G) == 42
    for x, y, z in itertools.islice(itertools.product(G, repeat=3), 0, 42 ** 3, 97):
        assert inertia_compose(inertia_compose(x, y, ff_make(7), 3), z, ff_make(7), 3) == \
            inertia_compose(x, inertia_compose(y, z, ff_make(7), 3), ff_make(7), 3)


def test_inertia_needs_roots_of_unity():
    with pytest.raises(MatGroupError):
        inertia_matrix(ff_make(11), 3, InertiaElement(1, 0))
    with pytest.raises(MatGroupError):
        inertia_matrix(F13, 4, InertiaElement(0, 1))
    inertia_matrix(F13, 4, InertiaElement(3, 0))  # wild part only needs n | q - 1


@pytest.mark.parametrize("n", [2, 3])
def test_inertia_homomorphism_exact(n):
    rep = inertia_homomorphism_sweep(F13, n)
    assert rep.ok and rep.pairs == (26 * n) ** 2


def test_inertia_homomorphism_reduced():
    rc = make_reduction(CycloRing(13), 53)
    rep = inertia_homomorphism_sweep(F13, 2, rc)
    assert rep.ok
    assert inertia_matrix(F13, 2, InertiaElement(0, 1), rc) == elem_m(2, rc.field)


@pytest.mark.parametrize("n, nonzero", [(2, True), (3, False), (4, True), (6, True)])
def test_wild_pairing(n, nonzero):
    rc = make_reduction(CycloRing(13), 53)
    rep = wild_pairing_report(F13, n, rc)
    assert (rep.dim > 0) == nonzero
    assert bool(rep.alternating) == nonzero
    assert rep.nondegenerate_alternating == nonzero


@pytest.mark.parametrize("n", [2, 3])
def test_trace_field_of_inertia_matches_kloosterman(n):
    rc = make_reduction(CycloRing(13), 5)
    F = rc.field
    traces = []
    for a in range(1, 13):
        M = inertia_matrix(F13, n, InertiaElement(a, 0), rc)
        acc = 0
        for i in range(n):
            acc = F.add(acc, M.rows[i][i])
        traces.append(acc)
    rck = reduction_for(F13, n, 5)
    kl = kl_reduce_all(kl_raw_all(F13, n), rck)
    assert trace_field(traces, rc) == trace_field(kl, rck)


def test_normalizer_exhaustive():
    res = normalizer_power_check("SL", 2, FieldCtx(3, 2), 1)
    assert res and res.examined == 720 and res.normalizing > 0


def test_normalizer_sampled():
    res = normalizer_power_check("SL", 3, FieldCtx(2, 3), 1, "sampled", samples=100, seed=0)
    assert res.ok and not res.vacuous
    res_sp = normalizer_power_check("Sp", 4, FieldCtx(3, 2), 1, "sampled", samples=40, seed=1)
    assert res_sp.ok


def test_normalizer_errors():
    with pytest.raises(MatGroupError):
        normalizer_power_check("SL", 3, FieldCtx(2, 3), 1, "exhaustive")
    with pytest.raises(MatGroupError):
        normalizer_power_check("SL", 2, FieldCtx(3, 2), 3)


def test_matrix_json():
    doc = elem_m(2, FieldCtx(3, 2)).to_json()
    assert doc["field"] == {"p": 3, "k": 2, "modulus": [1, 0, 1]}
    assert doc["rows"] == [[0, 2], [1, 0]]
