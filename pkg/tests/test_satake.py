import random

import pytest

from workbench.affine_weyl import AffineWeylGroup
from workbench.hecke import HeckeAlgebra
from workbench.rings import PrimeField
from workbench.root_datum import build_datum, dominant_cocharacters
from workbench.satake import NotBiInvariantError, NotCentralError, Satake


def satake(name, p=3):
    return Satake(HeckeAlgebra(AffineWeylGroup(build_datum(name)), PrimeField(p)))


S = satake("SL2")
H = S.hecke


def ones(*lams):
    return S.spherical({lam: 1 for lam in lams})


def test_to_iwahori_examples():
    assert S.to_iwahori(S.basis((0,))) == H.one_K()
    assert len(S.to_iwahori(ones((0,), (1,)))) == 6
    assert S.to_iwahori(S.spherical({})) == H.zero()


def test_from_iwahori_examples():
    assert S.from_iwahori(H.one_K()) == S.basis((0,))
    with pytest.raises(NotBiInvariantError):
        S.from_iwahori(H.t("s0"))


def test_from_iwahori_roundtrip():
    rng = random.Random(4)
    lams = dominant_cocharacters(S.datum, 8)
    for _ in range(20):
        a = S.spherical({lam: rng.randrange(3) for lam in rng.sample(lams, 3)})
        assert S.from_iwahori(S.to_iwahori(a)) == a


def test_c_map_examples():
    assert S.c_map(H.one()) == S.basis((0,))
    assert S.c_map(H.z_mu((1,))) == ones((0,), (1,))
    expected = H.t("e") + H.t("s0") + H.t("s1") + H.t("s0 s1") + H.t("s1 s0") + H.t("s1 s0 s1")
    assert H.mul(H.z_mu((1,)), H.one_K()) == expected
    G2 = satake("GL2")
    assert G2.c_map(G2.hecke.z_mu((1, 0))) == G2.basis((1, 0))


def test_c_map_rejects_noncentral():
    with pytest.raises(NotCentralError):
        S.c_map(H.t("s0"))


def test_c_inverse_examples():
    assert S.c_inverse(S.basis((0,))) == H.one()
    assert S.c_inverse(ones((0,), (1,))) == H.z_mu((1,))
    alone = S.c_inverse(S.basis((1,)))
    assert alone == H.z_mu((1,)) - H.one()
    assert H.is_central(alone)


@pytest.mark.parametrize("name", ["SL2", "GL2", "PGL3", "Sp4"])
def test_c_map_and_inverse_are_inverse(name):
    Sg = satake(name)
    rng = random.Random(8)
    lams = dominant_cocharacters(Sg.datum, 4)
    for _ in range(10):
        a = Sg.spherical({lam: rng.randrange(1, 3) for lam in rng.sample(lams, min(3, len(lams)))})
        assert Sg.c_map(Sg.c_inverse(a)) == a
    for mu in lams:
        z = Sg.hecke.z_mu(mu)
        assert Sg.c_inverse(Sg.c_map(z)) == z


def test_satake_inverse_examples():
    assert S.satake_inverse(S.x((0,))) == S.basis((0,))
    assert S.satake_inverse(S.x((2,))) == ones((0,), (1,), (2,))
    G2 = satake("GL2")
    assert G2.satake_inverse(G2.x((1, 0))) == G2.basis((1, 0))


def test_satake_forward_examples():
    assert S.satake_forward(S.basis((0,))) == S.x((0,))
    assert S.satake_forward(S.basis((1,))) == S.x((1,)) - S.x((0,))
    rng = random.Random(6)
    for _ in range(20):
        m = S.monomial({(k,): rng.randrange(3) for k in range(5)})
        assert S.satake_forward(S.satake_inverse(m)) == m


@pytest.mark.parametrize("name", ["SL3", "PGL3", "Sp4", "G2"])
def test_basis_change_is_unitriangular(name):
    Sg = satake(name)
    keys, rows = Sg.basis_change_matrix(dominant_cocharacters(Sg.datum, 10))
    for i, row in enumerate(rows):
        assert row[i] == 1
        assert all(x == 0 for x in row[i + 1:])


def test_bernstein_examples():
    assert S.bernstein_map(S.x((0,))) == H.one()
    assert S.bernstein_map(S.x((1,))) == H.z_mu((1,))
    # [1,0] is dominant in the fundamental-coweight coordinates of PGL3
    P = satake("PGL3")
    b = P.bernstein_map(P.x((1, 0)))
    assert b == P.hecke.z_mu((1, 0))
    assert b.support() == P.group.admissible_set((1, 0))


@pytest.mark.parametrize("name", ["SL2", "GL2", "G2"])
def test_bernstein_outputs_central(name):
    Sg = satake(name, 5)
    for mu in dominant_cocharacters(Sg.datum, 6):
        assert Sg.hecke.is_central(Sg.bernstein_map(Sg.x(mu)))


def test_spherical_mul_examples():
    a = ones((0,), (1,))
    assert S.spherical_mul(S.basis((0,)), a) == a
    assert S.spherical_mul(a, a) == ones((0,), (1,), (2,))


def test_spherical_mul_commutative():
    rng = random.Random(12)
    Sg = satake("PGL2")
    lams = dominant_cocharacters(Sg.datum, 4)
    for _ in range(10):
        a = Sg.spherical({lam: rng.randrange(3) for lam in rng.sample(lams, 2)})
        b = Sg.spherical({lam: rng.randrange(3) for lam in rng.sample(lams, 2)})
        assert Sg.spherical_mul(a, b) == Sg.spherical_mul(b, a)


def test_nondominant_support_rejected():
    with pytest.raises(ValueError):
        S.basis((-1,))


def test_json_shape():
    data = ones((0,), (1,)).to_json()
    assert data["terms"] == [{"lam": [0], "c": "1"}, {"lam": [1], "c": "1"}]
