import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from workbench.affine_weyl import AffineWeylGroup, ExtAffineElement
from workbench.root_datum import PRESETS, build_datum, dominant_cocharacters, height, weyl_orbit


def group(name):
    return AffineWeylGroup(build_datum(name))


SL2 = group("SL2")
GL2 = group("GL2")


def random_word(G, rng, n):
    x = G.identity
    for _ in range(n):
        x = G.multiply(x, rng.choice(G.simple_reflections))
    return x


def test_multiplication_examples():
    t1 = SL2.translation((1,))
    assert SL2.multiply(SL2.identity, t1) == t1
    assert SL2.multiply(t1, t1) == SL2.translation((2,))
    s1 = SL2.simple_reflections[1]
    assert SL2.product([s1, t1, s1]) == SL2.translation((-1,))


@pytest.mark.parametrize("name", list(PRESETS))
def test_inverse_and_associativity(name):
    G = group(name)
    rng = random.Random(7)
    for _ in range(50):
        x, y, z = (random_word(G, rng, 6) for _ in range(3))
        assert G.multiply(x, G.inverse(x)) == G.identity
        assert G.multiply(G.multiply(x, y), z) == G.multiply(x, G.multiply(y, z))


def test_length_examples():
    assert SL2.length(SL2.identity) == 0
    assert SL2.length(SL2.translation((1,))) == 2
    assert GL2.length(GL2.translation((1, 0))) == 1


@pytest.mark.parametrize("name", list(PRESETS))
def test_simple_reflections_have_length_one(name):
    G = group(name)
    for s in G.simple_reflections:
        assert G.length(s) == 1
        assert G.multiply(s, s) == G.identity


@pytest.mark.parametrize("name", list(PRESETS))
def test_t_w0_length_additivity(name):
    G = group(name)
    d = G.datum
    doms = dominant_cocharacters(d, 100, 3)
    doms = [m for m in doms if max(map(abs, m)) <= 3]
    for mu, lam in itertools.product(doms, repeat=2):
        total = tuple(a + b for a, b in zip(mu, lam))
        assert G.length(G.translation(mu)) == height(d, mu)
        assert G.length(G.translation(mu)) + G.length(G.t_w0(lam)) == G.length(G.t_w0(total))


@pytest.mark.parametrize("name", list(PRESETS))
def test_subadditivity(name):
    G = group(name)
    rng = random.Random(3)
    for _ in range(100):
        x, y = random_word(G, rng, 5), random_word(G, rng, 5)
        assert G.length(G.multiply(x, y)) <= G.length(x) + G.length(y)


def test_reduced_word_examples():
    assert SL2.reduced_word(SL2.identity) == (SL2.identity, ())
    omega, word = SL2.reduced_word(SL2.translation((1,)))
    assert omega == SL2.identity
    assert sorted(word) == [0, 1]
    assert SL2.recompose(omega, word) == SL2.translation((1,))
    omega, word = GL2.reduced_word(GL2.translation((1, 0)))
    assert GL2.length(omega) == 0 and omega != GL2.identity
    assert len(word) == 1


@pytest.mark.parametrize("name", list(PRESETS))
def test_reduced_word_roundtrip(name):
    G = group(name)
    rng = random.Random(11)
    omegas = G.omega_generators or [G.identity]
    for _ in range(60):
        x = G.multiply(rng.choice(omegas), random_word(G, rng, 8))
        omega, word = G.reduced_word(x)
        assert G.recompose(omega, word) == x
        assert len(word) == G.length(x)
        assert G.length(omega) == 0


def test_omega_decompose_examples():
    s0, s1 = SL2.simple_reflections
    w = SL2.product([s0, s1, s0])
    assert SL2.omega_decompose(w) == (SL2.identity, w)
    t1 = SL2.translation((1,))
    assert SL2.omega_decompose(t1) == (SL2.identity, t1)
    omega, rest = GL2.omega_decompose(GL2.translation((1, 0)))
    assert omega != GL2.identity
    assert GL2.length(rest) == 1


@pytest.mark.parametrize("name", list(PRESETS))
def test_omega_permutes_affine_simples(name):
    G = group(name)
    simples = set(G.simple_reflections)
    for omega in G.omega_generators:
        inv = G.inverse(omega)
        conj = {G.product([omega, s, inv]) for s in simples}
        assert conj == simples


def test_bruhat_examples():
    s0, s1 = SL2.simple_reflections
    s0s1 = SL2.multiply(s0, s1)
    s1s0 = SL2.multiply(s1, s0)
    assert SL2.bruhat_leq(s0s1, s0s1)
    assert SL2.bruhat_leq(s0, s0s1)
    assert not SL2.bruhat_leq(s1s0, s0s1)
    pi = GL2.pi
    assert not GL2.bruhat_leq(GL2.identity, pi)
    assert not GL2.bruhat_leq(pi, GL2.identity)


@pytest.mark.parametrize("name,max_length", [("SL2", 6), ("SL3", 4)])
def test_bruhat_matches_subwords(name, max_length):
    G = group(name)
    elements = G.enumerate_by_length(max_length)
    for y in elements:
        below = G.lower_interval_subwords(y)
        assert G.lower_interval(y) == below
        for x in elements:
            assert G.bruhat_leq(x, y) == (x in below)


def test_admissible_set_examples():
    for name in PRESETS:
        G = group(name)
        zero = (0,) * G.datum.rank
        assert G.admissible_set(zero) == {G.identity}
    s0, s1 = SL2.simple_reflections
    expected = {SL2.identity, s0, s1, SL2.multiply(s0, s1), SL2.multiply(s1, s0)}
    assert SL2.admissible_set((1,)) == expected
    adm = GL2.admissible_set((1, 0))
    assert len(adm) == 3
    assert GL2.translation((1, 0)) in adm and GL2.translation((0, 1)) in adm


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_sl2_admissible_sizes(m):
    assert len(SL2.admissible_set((m,))) == 4 * m + 1


def test_sl2_admissible_size_brute_force():
    for m in (1, 2, 3, 4):
        assert SL2.admissible_set((m,)) == SL2.admissible_set((m,), subwords=True)


def test_admissible_rejects_nondominant():
    with pytest.raises(ValueError):
        SL2.admissible_set((-1,))


@pytest.mark.parametrize("name", ["SL3", "PGL3", "Sp4", "G2", "GL3"])
def test_admissible_closed_with_translation_maxima(name):
    G = group(name)
    d = G.datum
    for mu in dominant_cocharacters(d, 6, 1)[:4]:
        adm = G.admissible_set(mu)
        top = height(d, mu)
        assert all(G.lower_interval(w) <= adm for w in adm)
        assert {w for w in adm if G.length(w) == top} == {G.translation(l) for l in weyl_orbit(d, mu)}
        assert all(G.length(w) <= top for w in adm)


def test_a_mu_report_examples():
    assert SL2.a_mu_report((0,)) == [(SL2.identity, 0)]
    assert sorted(n for _, n in SL2.a_mu_report((1,))) == [0, 1, 1, 2, 2]
    assert sorted(n for _, n in GL2.a_mu_report((1, 0))) == [0, 1, 1]


@pytest.mark.parametrize("name", list(PRESETS))
def test_text_and_json_roundtrip(name):
    G = group(name)
    rng = random.Random(5)
    omegas = G.omega_generators or [G.identity]
    for _ in range(40):
        x = G.multiply(rng.choice(omegas), random_word(G, rng, 6))
        assert G.parse(G.format(x)) == x
        assert ExtAffineElement.from_json(x.to_json()) == x


def test_parse_grammar():
    assert SL2.parse("e") == SL2.identity
    assert SL2.parse("t[1]") == SL2.translation((1,))
    assert SL2.parse("t[1] t[1]") == SL2.translation((2,))
    assert GL2.parse("pi^1") == GL2.pi
    assert GL2.parse("pi^-1") == GL2.inverse(GL2.pi)
    with pytest.raises(ValueError):
        SL2.parse("s7")
    with pytest.raises(ValueError):
        SL2.parse("banana")


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(0, 2), max_size=10), st.integers(-3, 3))
def test_gl3_words_roundtrip(letters, k):
    G = group("GL3")
    x = G.product([G.omega_power(k)] + [G.simple_reflections[i] for i in letters])
    assert G.omega_exponent(G.reduced_word(x)[0]) == k
    assert G.parse(G.format(x)) == x
