import pytest

from bsdh import cartan


def test_positive_root_count():
    for n in (2, 3, 4, 5):
        assert len(cartan.build(n).positive_roots) == n * n


def test_root_lengths(C3):
    long_ = [b for b in C3.roots if max(map(abs, b)) == 2]
    assert sorted(long_) == sorted(t for i in range(3) for t in
                                   [tuple(2 * (k == i) for k in range(3)), tuple(-2 * (k == i) for k in range(3))])
    assert len(C3.short_roots()) == len(C3.roots) - 6
    assert all(sorted(map(abs, b)) == [0, 1, 1] for b in C3.short_roots())


def test_highest_short_root_is_omega2(C3):
    assert C3.highest_short_root == C3.omega(2) == (1, 1, 0)
    assert C3.highest_root == (2, 0, 0)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_fundamental_weight_duality(n):
    rs = cartan.build(n)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            assert cartan.pairing(rs.omega(i), j) == (1 if i == j else 0)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_pairing_examples(n):
    rs = cartan.build(n)
    assert cartan.pairing(rs.alpha(n), n - 1) == -2
    assert cartan.pairing(rs.alpha(n - 1), n - 2) == -1
    assert cartan.pairing(rs.alpha(n - 1), n) == -1
    assert cartan.pairing(rs.omega(1), 1) == 1


@pytest.mark.parametrize("n", [3, 4])
def test_reflections(n):
    rs = cartan.build(n)
    an, an1 = rs.alpha(n), rs.alpha(n - 1)
    assert cartan.dot_reflect(an, n - 1) == cartan.add(an1, an)
    for i in range(1, n + 1):
        neg = cartan.neg(rs.alpha(i))
        # s_i . (-alpha_i) = -alpha_i - (-2 + 1) alpha_i = 0, and the dot action is an involution
        assert cartan.dot_reflect(neg, i) == rs.zero
        assert cartan.dot_reflect(rs.zero, i) == neg
        fixed = cartan.sub(rs.zero, rs.omega(i))
        assert cartan.dot_reflect(fixed, i) == fixed
        assert cartan.reflect(rs.alpha(i), i) == neg
        for lam in rs.roots:
            assert cartan.reflect(cartan.reflect(lam, i), i) == lam
            assert rs.is_root(cartan.reflect(lam, i))


def test_reflect_alpha2_by_s3(C3):
    assert cartan.reflect(C3.alpha(2), 3) == cartan.add(C3.alpha(2), C3.alpha(3))


def test_simple_coordinates_roundtrip(C3):
    for b in C3.roots:
        assert cartan.from_simple(cartan.to_simple(b)) == b
    assert cartan.to_simple(C3.highest_root) == (2, 2, 1)
    assert cartan.format_weight(cartan.neg(cartan.from_simple([1, 2, 1]))) == "-a1-2a2-a3"
    assert cartan.format_weight(C3.zero) == "0"


@pytest.mark.parametrize("n", [2, 3])
def test_realization_dimension_and_symplectic(n):
    real = cartan.realization(n)
    assert real.dimension == n * (2 * n + 1)
    assert all(cartan.is_symplectic(m) for m in real.matrices)


def test_cartan_acts_by_roots(C3):
    real = cartan.realization(3)
    for k in range(1, 4):
        h = real.cartan([1 if j == k - 1 else 0 for j in range(3)])
        for beta in C3.roots:
            got = cartan.bracket(h, real.e(beta))
            assert got == beta[k - 1] * real.e(beta)


def test_coroot_alpha_n(C3):
    real = cartan.realization(3)
    h = real.h_alpha(3)
    for i in range(1, 4):
        expected = 2 if i == 3 else (-1 if i == 2 else 0)
        assert cartan.bracket(h, real.e(C3.alpha(i))) == expected * real.e(C3.alpha(i))
    w = real.coweight_n()
    for i in range(1, 4):
        expected = 1 if i == 3 else 0
        assert cartan.bracket(w, real.e(C3.alpha(i))) == expected * real.e(C3.alpha(i))


def test_bracket_examples(C3):
    real = cartan.realization(3)
    an = C3.alpha(3)
    top = cartan.bracket(real.e(an), real.e(cartan.neg(an)))
    assert cartan.bracket(top, real.e(an)) == 2 * real.e(an)
    assert cartan.bracket(real.e(C3.alpha(1)), real.e(cartan.neg(an))).is_zero()
    w = real.coweight_n()
    assert cartan.bracket(w, real.e(cartan.neg(an))) == -1 * real.e(cartan.neg(an))


def test_bracket_closes_on_root_sums(C3):
    real = cartan.realization(3)
    for a in C3.roots:
        for b in C3.roots:
            res = cartan.bracket(real.e(a), real.e(b))
            s = cartan.add(a, b)
            if C3.is_root(s):
                assert not res.is_zero() and set(res.support()) == {("root", s)}
            elif s != C3.zero:
                assert res.is_zero()


def test_build_rejects_bad_rank():
    with pytest.raises(ValueError):
        cartan.build(1)
