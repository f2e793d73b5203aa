"""Randomised exact identities (hypothesis, derandomized for reproducibility)."""

from hypothesis import given, settings, strategies as st

from bsdh import bmod, cartan, coh, weyl
from bsdh.bmod import Character, line

N = 3
RS = cartan.build(N)
PROFILE = settings(max_examples=60, deadline=None, derandomize=True)

weights = st.lists(st.integers(-3, 2), min_size=N, max_size=N).map(lambda c: RS.weight(fundamental=c))
letters = st.integers(1, N)


@st.composite
def reduced_words(draw, max_length=5):
    word = []
    w = weyl.identity(N)
    for _ in range(draw(st.integers(1, max_length))):
        ascents = [i for i in range(1, N + 1) if weyl.length(w * weyl.generator(N, i)) == len(word) + 1]
        i = draw(st.sampled_from(ascents))
        word.append(i)
        w = w * weyl.generator(N, i)
    return tuple(word)


modules = st.one_of(weights.map(line), st.sampled_from([bmod.k1(N), bmod.gprime(N)]))


@PROFILE
@given(reduced_words(), modules)
def test_euler_identity(word, V):
    wc = coh.word_cohomology(word, V, len(word))
    total = Character()
    for j in range(len(word) + 1):
        ch = wc.degree(j).character()
        assert ch is not None
        total = total + ch if j % 2 == 0 else total - ch
    assert total == coh.demazure_word(word, V.character())


@PROFILE
@given(reduced_words(6), weights, st.data())
def test_word_independence(word, lam, data):
    other = data.draw(st.sampled_from(weyl.reduced_words(weyl.from_word(word, N))))
    assert coh.h0_word(word, line(lam)).character() == coh.h0_word(other, line(lam)).character()


@PROFILE
@given(letters, st.lists(st.integers(-5, 2), min_size=N, max_size=N))
def test_duality_rank_one(i, coeffs):
    lam = RS.weight(fundamental=coeffs)
    got = coh.h1_step(i, line(lam)).character()
    if cartan.pairing(lam, i) <= -2:
        assert got == coh.h0_step(i, line(cartan.dot_reflect(lam, i))).character()
    else:
        assert not got


@PROFILE
@given(letters, weights)
def test_pairing_minus_one(i, lam):
    lam = cartan.sub(lam, cartan.scale(cartan.pairing(lam, i) + 1, RS.omega(i)))
    assert coh.h0_step(i, line(lam)).is_zero()
    assert coh.h1_step(i, line(lam)).is_zero()


GUARD = sorted(mu for mu in RS.short_roots()
               if not cartan.is_positive_root(mu) and cartan.neg(mu) not in RS.simple_roots)


@PROFILE
@given(reduced_words(6), st.lists(st.sampled_from(GUARD), min_size=1, max_size=3))
def test_support_guard(word, mus):
    V = line(mus[0])
    for mu in mus[1:]:
        V = bmod.direct_sum(V, line(mu))
    assert set(coh.h0_word(word, V).character().support()) <= set(GUARD)


@PROFILE
@given(reduced_words(4), st.sampled_from([bmod.gprime(N), bmod.k1(N), bmod.k2(N)]), weights)
def test_euler_on_twisted_modules(word, V, lam):
    V = bmod.tensor_char(V, lam)
    wc = coh.word_cohomology(word, V, len(word))
    total = Character()
    for j in range(len(word) + 1):
        ch = wc.degree(j).character()
        if ch is None:
            return
        total = total + ch if j % 2 == 0 else total - ch
    assert total == coh.demazure_word(word, V.character())
