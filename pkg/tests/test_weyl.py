import random

import pytest

from bsdh import cartan, weyl
from conftest import simple


def test_longest_acts_by_minus_one(C3):
    w0 = weyl.longest(3)
    for i in range(1, 4):
        assert weyl.act(w0, C3.omega(i)) == cartan.neg(C3.omega(i))


def test_act_word_example():
    w = weyl.from_word((2, 3, 1, 2), 3)
    assert weyl.act(w, simple(0, 1, 0)) == simple(-1, -2, -1)


def test_act_identity(C3):
    lam = C3.weight(fundamental=[2, -1, 3])
    assert weyl.act(weyl.identity(3), lam) == lam


def test_reducedness_and_length():
    assert weyl.is_reduced(weyl.shape_to_word((2, 1), 3), 3)
    assert not weyl.is_reduced((1, 1), 3)
    assert weyl.length(weyl.longest(4)) == 16
    assert weyl.length(weyl.longest(3)) == 9


def test_inversion_sets(C3):
    w2 = weyl.from_word((3, 1, 2), 3)
    assert set(weyl.inversion_set(w2.inverse())) == {simple(0, 0, 1), simple(1, 1, 1), simple(1, 0, 0)}
    assert not weyl.inversion_set(weyl.identity(3))
    assert set(weyl.inversion_set(weyl.longest(3))) == set(C3.positive_roots)


def test_bruhat():
    assert weyl.bruhat_leq(weyl.from_word((3, 2), 3), weyl.from_word((2, 3, 1, 2), 3))
    assert not weyl.bruhat_leq(weyl.from_word((1,), 3), weyl.from_word((2,), 3))
    rng = random.Random(3)
    w0 = weyl.longest(3)
    for _ in range(50):
        word = tuple(rng.randint(1, 3) for _ in range(rng.randint(0, 8)))
        assert weyl.bruhat_leq(weyl.from_word(word, 3), w0)


def test_commutation_classes():
    assert weyl.comm_class_eq((3, 1, 2), (1, 3, 2), 3)
    assert not weyl.comm_class_eq((1, 2, 1), (2, 1, 2), 3)
    assert weyl.comm_class_eq(weyl.coxeter_power_word((3, 1), 2, 3), (3, 1, 2, 3, 1, 2), 3)
    with pytest.raises(ValueError, match="not reduced"):
        weyl.comm_class_eq((1, 1), (2, 2), 3)


def test_comm_class_eq_agrees_with_enumeration():
    rng = random.Random(11)
    for _ in range(40):
        w = weyl.from_word(tuple(rng.randint(1, 4) for _ in range(7)), 4)
        words = weyl.reduced_words(w)
        if len(words) > 60:
            continue
        base = words[0]
        cls = weyl.commutation_class(base)
        for other in words:
            assert weyl.comm_class_eq(base, other, 4) == (other in cls)


def test_fully_commutative():
    assert weyl.is_fully_commutative(weyl.from_word((1,), 3))
    assert not weyl.is_fully_commutative(weyl.from_word((1, 2, 1), 3))
    assert weyl.is_fully_commutative(weyl.from_word((1, 3), 3))


def test_shapes_and_coxeter_words():
    assert weyl.coxeter_shapes(3) == [(1,), (2, 1), (3, 1), (3, 2, 1)]
    assert weyl.shape_to_word((3, 2, 1), 3) == (3, 2, 1)
    assert weyl.shape_to_word((1,), 4) == (1, 2, 3, 4)
    for n in (3, 4, 5):
        assert len(weyl.coxeter_shapes(n)) == 2 ** (n - 1)
    with pytest.raises(ValueError):
        weyl.validate_shape((2, 3, 1), 3)


def test_coxeter_powers():
    assert weyl.coxeter_power_word((3, 1), 2, 3) == (3, 1, 2, 3, 1, 2)
    assert weyl.coxeter_power_word((1,), 3, 3) == (1, 2, 3) * 3
    for shape in weyl.coxeter_shapes(3):
        c = weyl.from_word(weyl.shape_to_word(shape, 3), 3)
        for i in range(1, 4):
            word = weyl.coxeter_power_word(shape, i, 3)
            assert weyl.is_reduced(word, 3) and len(word) == 3 * i
            assert weyl.from_word(word, 3) == weyl._power(c, i)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_coxeter_power_is_longest(n):
    for shape in weyl.coxeter_shapes(n):
        assert weyl.from_word(weyl.theorem_word(shape, n), n) == weyl.longest(n)


def test_h_exponent():
    for shape in weyl.coxeter_shapes(3):
        for i in range(1, 4):
            assert weyl.h_exponent(i, shape, 3) == 3
    # every index is self-dual, so the exponents for i and i* add up to the Coxeter number 2n
    for n in (4, 5):
        for shape in weyl.coxeter_shapes(n):
            assert all(2 * weyl.h_exponent(i, shape, n) == 2 * n for i in range(1, n + 1))


def test_named_words_example():
    nw = weyl.named_words((3, 2, 1), 2, 3)
    assert nw.w_r == (3, 2, 3)
    assert nw.tau_r == (3, 2)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_named_word_bookkeeping(n):
    for shape in weyl.coxeter_shapes(n):
        k = len(shape)
        c = weyl.from_word(weyl.shape_to_word(shape, n), n)
        for r in range(1, k + 1):
            nw = weyl.named_words(shape, r, n)
            assert weyl.length(weyl.from_word(nw.w_r, n)) == weyl.length(weyl.from_word(nw.tau_r, n)) + 1
        nw = weyl.named_words(shape, k, n)
        lhs = c * weyl.from_word(nw.tau_r, n)
        rhs = weyl.from_word(nw.prefixes[-1] + weyl.interval(shape[-1], n - 1), n)
        assert lhs == rhs
        theorem = weyl.theorem_word(shape, n)
        for word in (nw.w_r, nw.tau_r, nw.u1_prime):
            assert theorem[:len(word)] == word
