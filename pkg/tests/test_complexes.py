import random

import pytest

from gerstenhaber.complexes import (
    CochainComplex, ComplexError, GradedMap, augmentation_map, cochain_map, contract_left,
    contract_right, homology_dims, hom_differential, identity_map, lift_chain_map,
    random_graded_map, sigma_map, solve_null_homotopy, tensor_complex,
)
from gerstenhaber.exactla import Matrix
from gerstenhaber.resolutions import taft_resolution
from gerstenhaber.scalars import cyclotomic


@pytest.fixture(scope="module")
def T3():
    R = taft_resolution(3, 6, cyclotomic(3))
    PP = tensor_complex(R.P, R.P, hopf=R.hopf)
    return R, PP


def test_homology_of_resolution(T3):
    R, PP = T3
    rep = homology_dims(R.P)
    assert rep.is_resolution
    assert rep.dims == [1, 0, 0, 0, 0, 0]
    assert PP.check()
    assert PP.dims() == [9 * (m + 1) for m in range(7)]
    assert homology_dims(PP).is_resolution


def test_truncated_complex_detects_broken_differential():
    R = taft_resolution(2, 3, cyclotomic(2))
    P = R.P
    bad = list(P.diffs)
    bad[2] = Matrix.identity(P.field, 2)
    from gerstenhaber.complexes import TruncatedComplex
    with pytest.raises(ComplexError):
        TruncatedComplex(P.modules, bad, P.unit, P.aug).check()


@pytest.mark.parametrize("deg", [0, 1, 2, 3])
def test_hom_differential_squares_to_zero(T3, deg):
    R, PP = T3
    phi = random_graded_map(R.P, PP, deg, 5, random.Random(deg))
    dd = hom_differential(hom_differential(phi))
    assert dd.is_zero()


@pytest.mark.parametrize("a,b", [(0, 1), (1, 1), (2, 1), (1, 2)])
def test_leibniz_rule(T3, a, b):
    R, PP = T3
    P = R.P
    rng = random.Random(10 * a + b)
    psi = random_graded_map(P, P, b, 6, rng)
    phi = random_graded_map(P, P, a, 6, rng)
    F = P.field
    comp = psi.then(phi)  # phi o psi
    lhs = hom_differential(comp)
    r1 = psi.then(hom_differential(phi))
    r2 = hom_differential(psi).then(phi)
    if a % 2:
        r2 = r2.scale(F.neg(F.one))
    top = min(lhs.top, r1.top, r2.top)
    assert (lhs.restrict(top) - (r1.restrict(top) + r2.restrict(top))).is_zero()


def test_contractions_of_cocycles_are_closed(T3):
    R, PP = T3
    P = R.P
    for m in (1, 2, 3):
        f = cochain_map(P, m, P.aug)
        assert hom_differential(f).is_zero(upto=5)
        assert hom_differential(contract_left(f, PP)).is_zero()
        assert hom_differential(contract_right(f, PP)).is_zero()
    # the Koszul sign on 1 (x) f matters: dropping it breaks closedness for odd m
    f = cochain_map(P, 1, P.aug)
    right = contract_right(f, PP)
    comps = {}
    for l, M in right.comps.items():
        comps[l] = -M if (l - 1) % 2 else M
    unsigned = GradedMap(PP, P, 1, comps, right.top)
    assert not hom_differential(unsigned).is_zero()


def test_sigma_is_involutive_chain_map(T3):
    R, PP = T3
    s = sigma_map(PP)
    assert hom_differential(s).is_zero()
    assert (s.then(s) - identity_map(PP).restrict(s.top)).is_zero()


def test_lift_and_null_homotopy(T3):
    R, PP = T3
    P = R.P
    F = P.field
    lift = lift_chain_map(P, P, Matrix.identity(F, 1))
    assert hom_differential(lift).is_zero()
    rng = random.Random(3)
    K = random_graded_map(P, P, 1, 5, rng)
    H = solve_null_homotopy(hom_differential(K), top=5)
    assert H is not None
    assert (hom_differential(H) - hom_differential(K).restrict(H.top)).is_zero()
    # the identity is not null-homotopic
    assert solve_null_homotopy(identity_map(P), top=4) is None
    mu = augmentation_map(P)
    assert (lift.then(mu) - mu.restrict(lift.top)).is_zero()


@pytest.mark.parametrize("n", [2, 3, 4])
def test_cochain_complex_dims(n):
    R = taft_resolution(n, 9, cyclotomic(n))
    C = CochainComplex(R.P, R.P.unit, 8)
    assert C.dims() == [1 if i % 2 == 0 else 0 for i in range(9)]
    for l in (2, 4):
        rep = C.representatives(l)[0]
        assert C.is_cocycle(rep, l)
        assert C.coboundary_witness(rep, l) is None
        two = R.P.field.from_int(2)
        assert C.class_coordinates(rep.scale(two), l) == {0: two}
