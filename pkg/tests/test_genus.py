import itertools
import json

import pytest

from lambdagenus.genus import (
    ALLOWED_RESIDUES,
    BR_X2,
    ONE,
    RECTOR_TABLE,
    XI_X,
    ForbiddenResidue,
    GenusPoint,
    KModel,
    KOModel,
    bs3,
    canonicalize,
    change_generator,
    odd_primes,
    orientation_flip,
    psi2_KO,
    psi_p_K,
    rector_pair,
    representative_shift,
)
from lambdagenus.poly import MultiPoly

FORBIDDEN = [r for r in range(24) if r not in ALLOWED_RESIDUES]


def kpoly(p, coeffs):
    return MultiPoly({(i,): c for i, c in coeffs.items()}, 1, p * p)


def test_psi2_examples():
    M = KOModel(1)
    assert psi2_KO(M, XI_X) == M.element(0, 4, 2)
    assert psi2_KO(M, BR_X2) == M.element(0, 0, 16)
    assert psi2_KO(M, M.element()).is_zero()
    assert psi2_KO(M, ONE) == ONE


def test_psi2_rejects_elements_outside_module():
    M = KOModel(1)
    with pytest.raises(ValueError):
        psi2_KO(M, MultiPoly.var(2, 3))


@pytest.mark.parametrize("a", ALLOWED_RESIDUES)
def test_psi2_linear_and_multiplicative(a):
    M = KOModel(a)
    vecs = [M.element(*v) for v in itertools.product(range(-2, 3), repeat=3)]
    for u, v in itertools.product(vecs[::7], vecs[::5]):
        assert M.psi2(u + v) == M.psi2(u) + M.psi2(v)
    for c in range(-5, 6):
        assert M.psi2(XI_X.scale(c)) == M.mul(M.psi2(XI_X), M.element(c))
    # (ξx)^2 = 4 bR x^2 survives the truncation; the ψ² images agree
    assert M.psi2(M.mul(XI_X, XI_X)) == M.mul(M.psi2(XI_X), M.psi2(XI_X))


def test_shift_examples():
    assert representative_shift(KOModel(1), 1).a == 25
    assert representative_shift(KOModel(5), -2).a == -43
    for a in ALLOWED_RESIDUES:
        assert representative_shift(KOModel(a), 0).a == a


@pytest.mark.parametrize("a", ALLOWED_RESIDUES)
def test_shift_composes_and_preserves_residue(a):
    M = KOModel(a)
    for m in range(-5, 6):
        S = representative_shift(M, m)
        assert S.a % 24 == a % 24
        for m2 in (-3, 0, 2):
            assert representative_shift(S, m2) == representative_shift(M, m + m2)


@pytest.mark.parametrize("a", ALLOWED_RESIDUES)
def test_flip_is_involution_and_commutes(a):
    M = KOModel(a)
    assert orientation_flip(M).a == -a
    assert orientation_flip(orientation_flip(M)) == M
    for m in range(-3, 4):
        assert orientation_flip(representative_shift(M, m)) == \
            representative_shift(orientation_flip(M), -m)


def test_flip_examples():
    assert orientation_flip(KOModel(7)).a % 24 == 17
    assert orientation_flip(KOModel(1)).a % 24 == 23


def test_general_generator_change():
    for a, eps, m in itertools.product((1, 7), (1, -1), range(-3, 4)):
        assert change_generator(KOModel(a), eps, m).a == eps * a + 24 * m


def test_rector_table():
    assert rector_pair(1) == (1, 1)
    assert rector_pair(7) == (-1, 1)
    assert rector_pair(13) == (-1, -1)
    assert rector_pair(5) == (1, -1)
    for a in ALLOWED_RESIDUES:
        assert rector_pair(a) == rector_pair(-a) == rector_pair(a + 240)


@pytest.mark.parametrize("r", FORBIDDEN)
def test_forbidden_residues(r):
    with pytest.raises(ForbiddenResidue) as err:
        rector_pair(r)
    assert "±1, ±5, ±7 or ±11" in str(err.value)
    with pytest.raises(ForbiddenResidue):
        KOModel(r)


def test_psi_p_examples():
    # ψ³(t) = t³ + 6t²; t³ has filtration 12 > 9, so only 6t² survives
    assert psi_p_K(KModel(3, 1), 1) == kpoly(3, {2: 6})
    assert psi_p_K(KModel(5, -1), 1) == kpoly(5, {3: -10})
    for p in (3, 5, 7, 11):
        for s in (1, -1):
            assert psi_p_K(KModel(p, s), 0) == kpoly(p, {0: 1})


def test_psi_p_range():
    M = KModel(5, 1)
    with pytest.raises(ValueError):
        psi_p_K(M, M.top + 1)
    with pytest.raises(ValueError):
        KModel(9, 1)
    with pytest.raises(ValueError):
        KModel(4, 1)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_psi_p_multiplicative(p):
    for s in (1, -1):
        M = KModel(p, s)
        t = M.t()
        for k in range(M.top + 1):
            power = M.normalize(MultiPoly.const(1, 1))
            for _ in range(k):
                power = M.mul(power, t)
            assert M.apply_psi(power) == psi_p_K(M, k)
        for i, j in itertools.product(range(M.top + 1), repeat=2):
            if i + j <= M.top:
                assert M.mul(psi_p_K(M, i), psi_p_K(M, j)) == psi_p_K(M, i + j)


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_psi_p_is_frobenius_mod_p(p):
    for s in (1, -1):
        M = KModel(p, s)
        t_p = M.normalize(MultiPoly.var(0, 1) ** p)
        assert psi_p_K(M, 1).lift().reduce_mod(p) == t_p.lift().reduce_mod(p)


def test_noise_terms_are_quotiented():
    p = 5
    th = 2 * p + 3
    k_w = -(-th // 4)
    noisy = KModel(p, 1, w=MultiPoly({(k_w,): 3}, 1), x0=MultiPoly({(1,): 7, (2,): 1}, 1))
    assert noisy.psi_t() == KModel(p, 1).psi_t()
    with pytest.raises(ValueError):
        KModel(p, 1, w=MultiPoly({(1,): 1}, 1))
    with pytest.raises(ValueError):
        KModel(p, 1, x0=MultiPoly.const(1, 1))


def test_canonicalize_examples():
    signs = {p: 1 for p in odd_primes(97)}
    assert canonicalize(23, signs).a_class == 1
    assert canonicalize(19, signs).a_class == 5
    pt = canonicalize(1, signs)
    assert pt == bs3()
    assert all(pt.rector(p) == 1 for p in [2, 3] + odd_primes(97))


def test_canonicalize_errors():
    signs = {p: 1 for p in odd_primes(13)}
    with pytest.raises(ValueError, match="missing sign for prime 11"):
        canonicalize(1, {5: 1, 7: 1, 13: 1}, 13)
    with pytest.raises(ForbiddenResidue):
        canonicalize(3, signs, 13)
    with pytest.raises(ValueError):
        canonicalize(1, {**signs, 17: 1}, 13)


def test_genus_point_derived_fields():
    for a, (x2, x3) in RECTOR_TABLE.items():
        pt = canonicalize(a, {p: 1 for p in odd_primes(11)}, 11)
        assert (pt.x2, pt.x3) == (x2, x3) == rector_pair(a)


def test_genus_point_json_round_trip():
    pt = bs3(23).with_sign(11, -1).with_sign(19, -1)
    pt = GenusPoint(7, pt.signs, 23)
    assert GenusPoint.from_json(pt.dumps()) == pt
    assert GenusPoint.from_json(json.loads(pt.dumps())) == pt
    legacy = {"a_class": 17, "signs": {str(p): 1 for p in odd_primes(23)}}
    assert GenusPoint.from_json(legacy).a_class == 7


@pytest.mark.parametrize("bad", [
    '{"a_class": 6, "signs": {"5": 1}}',
    '{"a_class": 1}',
    '{"a_class": "one", "signs": {"5": 1}}',
    '{"a_class": 1, "signs": {"5": 2}}',
    '[1, 2]',
])
def test_genus_point_json_rejects(bad):
    with pytest.raises(ValueError):
        GenusPoint.from_json(bad)


def test_forbidden_json_diagnostic():
    with pytest.raises(ValueError, match="±1, ±5, ±7 or ±11"):
        GenusPoint.from_json('{"a_class": 9, "signs": {"5": 1}}')
