"""The Weyl group of type C_n realised as signed permutations.

A word ``(i_1, ..., i_r)`` stands for the product ``s_{i_1} ... s_{i_r}``; on
weights it acts as ``s_{i_1}(s_{i_2}(... s_{i_r}(lam)))``, so the rightmost
letter is applied first.
"""

from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from . import cartan

__all__ = [
    "WeylElement", "identity", "generator", "from_word", "act", "length",
    "is_reduced", "inversion_set", "bruhat_leq", "lower_interval", "reduced_words",
    "comm_class_eq", "is_fully_commutative", "coxeter_shapes", "validate_shape",
    "shape_to_word", "interval", "coxeter_power_word", "theorem_word",
    "h_exponent", "named_words", "NamedWords", "longest",
]


@dataclass(frozen=True)
class WeylElement:
    """``perm[i-1] = +-k`` means ``e_i`` is sent to ``+-e_k``."""

    perm: tuple

    @property
    def n(self):
        return len(self.perm)

    def __mul__(self, other):
        out = []
        for p in other.perm:
            q = self.perm[abs(p) - 1]
            out.append(q if p > 0 else -q)
        return WeylElement(tuple(out))

    def inverse(self):
        out = [0] * self.n
        for i, p in enumerate(self.perm, start=1):
            out[abs(p) - 1] = i if p > 0 else -i
        return WeylElement(tuple(out))

    def __call__(self, lam):
        return act(self, lam)


def identity(n):
    return WeylElement(tuple(range(1, n + 1)))


def generator(n, i):
    if not 1 <= i <= n:
        raise ValueError(f"letter {i} out of range for rank {n}")
    p = list(range(1, n + 1))
    if i < n:
        p[i - 1], p[i] = p[i], p[i - 1]
    else:
        p[n - 1] = -n
    return WeylElement(tuple(p))


def from_word(word, n):
    w = identity(n)
    for i in word:
        w = w * generator(n, i)
    return w


def longest(n):
    return WeylElement(tuple(-k for k in range(1, n + 1)))


def act(w, lam):
    out = [0] * len(lam)
    for x, p in zip(lam, w.perm):
        out[abs(p) - 1] += x if p > 0 else -x
    return tuple(out)


def inversion_set(w):
    rs = cartan.build(w.n)
    return frozenset(b for b in rs.positive_roots if not cartan.is_positive_root(act(w, b)))


def length(w):
    return len(inversion_set(w))


def is_reduced(word, n):
    return length(from_word(word, n)) == len(word)


def _right_descents(w):
    n = w.n
    return [i for i in range(1, n + 1)
            if not cartan.is_positive_root(act(w, cartan.simple_root(n, i)))]


@lru_cache(maxsize=4096)
def lower_interval(w):
    """All ``u <= w`` in Bruhat order, via products of subwords of one reduced word."""
    word = reduced_word(w)
    seen = {identity(w.n)}
    for i in word:
        s = generator(w.n, i)
        seen |= {x * s for x in seen}
    return frozenset(seen)


def bruhat_leq(u, w):
    return u in lower_interval(w)


def reduced_word(w):
    """A canonical reduced word: strip the largest right descent repeatedly."""
    word = []
    while True:
        desc = _right_descents(w)
        if not desc:
            break
        i = desc[-1]
        word.append(i)
        w = w * generator(w.n, i)
    return tuple(reversed(word))


@lru_cache(maxsize=1024)
def reduced_words(w):
    """Every reduced word of ``w`` (exponential; meant for short elements)."""
    desc = _right_descents(w)
    if not desc:
        return ((),)
    out = []
    for i in desc:
        for word in reduced_words(w * generator(w.n, i)):
            out.append(word + (i,))
    return tuple(sorted(out))


def _commutes(i, j):
    return abs(i - j) > 1


def _commutation_neighbours(word):
    for k in range(len(word) - 1):
        a, b = word[k], word[k + 1]
        if _commutes(a, b):
            yield word[:k] + (b, a) + word[k + 2:]


def commutation_class(word):
    word = tuple(word)
    seen = {word}
    queue = deque([word])
    while queue:
        cur = queue.popleft()
        for nxt in _commutation_neighbours(cur):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def comm_class_eq(w1, w2, n):
    w1, w2 = tuple(w1), tuple(w2)
    for w in (w1, w2):
        if not is_reduced(w, n):
            raise ValueError("not reduced")
    if from_word(w1, n) != from_word(w2, n):
        raise ValueError("not same element")
    if sorted(w1) != sorted(w2):
        return False
    # Two words are related by commutations exactly when, for every pair of
    # non-commuting letters, the subsequences on those two letters agree.
    letters = sorted(set(w1))
    for i in letters:
        for j in letters:
            if i <= j and not _commutes(i, j):
                keep = (i, j)
                if [x for x in w1 if x in keep] != [x for x in w2 if x in keep]:
                    return False
    return True


def is_fully_commutative(w):
    words = reduced_words(w)
    return len(commutation_class(words[0])) == len(words)


# ---------------------------------------------------------------------------
# Coxeter elements.  A shape is a strictly decreasing tuple n >= a_1 > ... > a_k = 1.


def validate_shape(shape, n):
    shape = tuple(shape)
    ok = (len(shape) >= 1 and shape[-1] == 1 and shape[0] <= n
          and all(a > b for a, b in zip(shape, shape[1:])))
    if not ok:
        raise ValueError(f"malformed shape {shape} for rank {n}")
    return shape


def coxeter_shapes(n):
    if n < 2:
        raise ValueError("rank unsupported")
    out = []
    for mask in range(2 ** (n - 1)):
        tops = [a for a in range(2, n + 1) if mask >> (a - 2) & 1]
        out.append(tuple(sorted(tops, reverse=True)) + (1,))
    return sorted(out)


def interval(i, j):
    """The word ``[i, j] = s_i s_{i+1} ... s_j`` (empty when ``i > j``)."""
    return tuple(range(i, j + 1))


def shape_to_word(shape, n):
    shape = validate_shape(shape, n)
    word = ()
    prev = n + 1
    for a in shape:
        word += interval(a, prev - 1)
        prev = a
    return word


def coxeter_power_word(shape, i, n):
    """Normal-form reduced word for ``c^i``, assembled from interval blocks."""
    a = validate_shape(shape, n)
    k = len(a)
    if not 1 <= i <= n:
        raise ValueError(f"power {i} out of range 1..{n}")
    A = (n + 1,) + a  # A[l] = a_l with a_0 = n + 1

    def blk(lo, hi):
        return interval(lo, hi)

    word = ()
    if i <= k - 1:
        for l in range(1, i + 1):
            word += blk(A[l], n)
        for l in range(i + 1, k + 1):
            word += blk(A[l], A[l - i] - 1)
        for l in range(1, i):
            word += blk(A[k], A[k - i + l] - 1)
    else:
        for l in range(1, k):
            word += blk(A[l], n)
        word += blk(A[k], n) * (i + 1 - k)
        for l in range(1, k):
            word += blk(A[k], A[l] - 1)
    return word


def theorem_word(shape, n):
    """Reduced word of the longest element built from the shape (``c^n``)."""
    return coxeter_power_word(shape, n, n)


def h_exponent(i, shape, n):
    c = from_word(shape_to_word(shape, n), n)
    w0 = longest(n)
    if _power(c, n) != w0:
        raise AssertionError("c^n differs from the longest element")
    target = cartan.neg(cartan.build(n).omega(i))
    lam = cartan.build(n).omega(i)
    for h in range(1, 2 * n + 1):
        lam = act(c, lam)
        if lam == target:
            return h
    raise AssertionError("no exponent found")


def _power(w, m):
    out = identity(w.n)
    for _ in range(m):
        out = out * w
    return out


@dataclass(frozen=True)
class NamedWords:
    shape: tuple
    r: int
    w_r: tuple
    tau_r: tuple
    u1: tuple
    u1_prime: tuple
    prefixes: tuple  # the words w_1, ..., w_k


def named_words(shape, r, n):
    a = validate_shape(shape, n)
    k = len(a)
    if not 1 <= r <= k:
        raise ValueError(f"r = {r} out of range 1..{k}")
    blocks = [interval(a_j, n) for a_j in a]
    w = lambda m: sum(blocks[:m], ())
    w_r = w(r)
    tau_r = w(r - 1) + interval(a[r - 1], n - 1)
    u1 = w(k) + interval(a[k - 1], n)
    u1p = w(k) + interval(a[k - 1], n - 1)
    if length(from_word(w_r, n)) != length(from_word(tau_r, n)) + 1:
        raise AssertionError("length bookkeeping for w_r and tau_r disagrees")
    return NamedWords(a, r, w_r, tau_r, u1, u1p, tuple(w(m) for m in range(1, k + 1)))
