import json

import pytest

from gerstenhaber.bracket import (
    BracketError, Cocycle, bracket_cochain, bracket_table, build_setup, certify_lifting,
    cohomology_basis, cup, gerstenhaber_bracket, lifting_rhs, solve_homotopy_lifting,
)
from gerstenhaber.complexes import hom_differential, solve_null_homotopy
from gerstenhaber.exactla import Matrix
from gerstenhaber.hopf import group_algebra_zp, taft, tensor_hopf
from gerstenhaber.resolutions import generic_diagonal, taft_diagonal, taft_resolution
from gerstenhaber.scalars import cyclotomic, prime_field


@pytest.fixture(scope="module")
def T3():
    R = taft_resolution(3, 8, cyclotomic(3))
    return R, taft_diagonal(R), generic_diagonal(R, seed=7)


def test_cohomology_basis(T3):
    R, D, _ = T3
    B = cohomology_basis(R.P, maxdeg=7)
    assert B.dims == [1, 0, 1, 0, 1, 0, 1, 0]
    z = B.classes[2][0]
    assert not B.is_zero_class(z)
    assert B.coordinates(z) == {0: R.P.field.one}


def test_not_a_cocycle_rejected(T3):
    R, _, _ = T3
    F = R.P.field
    with pytest.raises(BracketError):
        Cocycle(2, Matrix(F, 1, 3, [{1: F.one}]), R.P)


def test_cup_powers(T3):
    R, D, Dg = T3
    B = cohomology_basis(R.P, maxdeg=7)
    z = B.classes[2][0]
    for diag in (D, Dg):
        p = z
        for i in range(2, 4):
            p = cup(p, z, diag)
            assert p.degree == 2 * i
            assert not B.is_zero_class(p)


def test_cup_graded_commutative_on_classes():
    H = group_algebra_zp(3, prime_field(3))
    R, D = build_setup(H, 4, diagonal="symmetrized")
    B = cohomology_basis(R.P, maxdeg=4)
    a, b = B.classes[1][0], B.classes[2][0]
    ab, ba = cup(a, b, D), cup(b, a, D)
    assert ab.comp == ba.comp.scale(R.P.field.one)   # (-1)^(1*2) = 1
    # in characteristic 3 the square of a degree-1 class vanishes
    assert B.is_zero_class(cup(a, a, D))


def test_liftings(T3):
    R, D, Dg = T3
    z = cohomology_basis(R.P, maxdeg=6).classes[2][0]
    L0 = solve_homotopy_lifting(z, D)
    assert L0.psi_f.is_zero() and L0.certificates["side_condition"]
    assert lifting_rhs(z, D).is_zero()
    L1 = solve_homotopy_lifting(z, D, seed=3)
    assert not L1.psi_f.is_zero()
    assert L1.certificates["equation"] and L1.side_witness is not None
    L2 = solve_homotopy_lifting(z, Dg)
    assert (hom_differential(L2.psi_f) - lifting_rhs(z, Dg).restrict(L2.top)).is_zero()


def test_nonzero_lifting_is_a_boundary(T3):
    R, D, _ = T3
    z = cohomology_basis(R.P, maxdeg=6).classes[2][0]
    L = solve_homotopy_lifting(z, D, top=6, seed=5)
    assert not L.psi_f.is_zero()
    assert (hom_differential(L.psi_f) - lifting_rhs(z, D).restrict(L.top)).is_zero()
    K = solve_null_homotopy(L.psi_f)
    assert K is not None
    assert (hom_differential(K) - L.psi_f).restrict(L.top - 1).is_zero()


def test_corrupted_lifting_rejected(T3):
    R, D, _ = T3
    z = cohomology_basis(R.P, maxdeg=6).classes[2][0]
    L = solve_homotopy_lifting(z, D, seed=3)
    F = R.P.field
    bad = L.psi_f.restrict(L.top)
    bad.comps[3] = bad[3] + Matrix(F, bad[3].rows, bad[3].cols, [{0: F.one}] + [{}] * (bad[3].rows - 1))
    L.psi_f = bad
    with pytest.raises(BracketError):
        certify_lifting(L, D)


def test_self_bracket_is_twice_f_psi(T3):
    R, D, _ = T3
    z = cohomology_basis(R.P, maxdeg=6).classes[2][0]
    F = R.P.field
    for seed in (None, 4):
        L = solve_homotopy_lifting(z, D, seed=seed)
        c = bracket_cochain(L, L)
        assert c == (z.comp @ L.psi_f[3]).scale(F.from_int(2))
    L0 = solve_homotopy_lifting(z, D)
    assert bracket_cochain(L0, L0).is_zero()


def test_bracket_antisymmetry():
    H = group_algebra_zp(3, prime_field(3))
    R, D = build_setup(H, 4, diagonal="generic", seed=2)
    B = cohomology_basis(R.P, maxdeg=4)
    cls = B.all_classes(1, 3)
    Ls = [solve_homotopy_lifting(c, D, top=4, seed=11 + k) for k, c in enumerate(cls)]
    F = R.P.field
    for i, f in enumerate(cls):
        for j, g in enumerate(cls):
            if f.degree + g.degree - 1 > 4:
                continue
            a = bracket_cochain(Ls[i], Ls[j])
            b = bracket_cochain(Ls[j], Ls[i])
            s = -1 if ((f.degree - 1) * (g.degree - 1)) % 2 == 0 else 1
            assert a == b.scale(F.from_int(s))


@pytest.mark.parametrize("n", [2, 3])
def test_taft_brackets_vanish(n):
    H = taft(n, cyclotomic(n))
    for kwargs in ({}, {"diagonal": "generic", "seed": 1}, {"lifting": "generic", "seed": 5}):
        rep = bracket_table(H, 6, **kwargs)
        assert rep.results and rep.all_zero and rep.all_cocycles
    rep = bracket_table(H, 6)
    assert all(r.cochain.is_zero() for r in rep.results.values())


def test_group_zp_brackets_vanish():
    H = group_algebra_zp(3, prime_field(3))
    rep = bracket_table(H, 4, diagonal="symmetrized")
    assert rep.dims == [1, 1, 1, 1, 1]
    assert len(rep.results) == 10 and rep.all_zero


def test_tensor_brackets_vanish():
    F = cyclotomic(6)
    H = tensor_hopf(taft(2, F), taft(3, F))
    rep = bracket_table(H, 4)
    assert rep.dims == [1, 0, 2, 0, 3]
    assert rep.all_zero


def test_bracket_rejects_degree_zero(T3):
    R, D, _ = T3
    B = cohomology_basis(R.P, maxdeg=4)
    u = B.classes[0][0]
    z = B.classes[2][0]
    L = solve_homotopy_lifting(z, D)
    with pytest.raises(BracketError):
        gerstenhaber_bracket(u, z, L, L)
    with pytest.raises(BracketError):
        solve_homotopy_lifting(u, D)


def test_report_serialization():
    H = taft(2, cyclotomic(2))
    rep = bracket_table(H, 4)
    doc = json.loads(rep.dumps())
    assert doc["dims"] == [1, 0, 1, 0, 1]
    assert all(b["class"] == "zero" for b in doc["brackets"])
    lines = rep.to_csv().splitlines()
    assert lines[0].startswith("i,j,") and len(lines) == 1 + len(rep.results)
    assert rep.dumps() == bracket_table(H, 4).dumps()
