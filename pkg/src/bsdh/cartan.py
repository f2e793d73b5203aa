"""Root datum of type C_n and a concrete matrix model of sp(2n).

Weights are integer tuples in the epsilon basis.  Simple roots are
``e_i - e_{i+1}`` for ``i < n`` and ``2 e_n``; fundamental weights are
``e_1 + ... + e_i``.  Indices of simple roots are 1-based throughout the
package, matching the usual labelling of the Dynkin diagram.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product

__all__ = [
    "RootSystem", "build", "add", "sub", "neg", "scale", "pairing", "reflect",
    "dot_reflect", "to_simple", "from_simple", "height", "is_positive_root",
    "ChevalleyRealization", "Element", "realization", "bracket", "format_weight",
]


def add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def neg(a):
    return tuple(-x for x in a)


def scale(k, a):
    return tuple(k * x for x in a)


def pairing(lam, i):
    """``<lam, alpha_i^vee>`` for the simple coroot with 1-based index ``i``."""
    n = len(lam)
    if not 1 <= i <= n:
        raise ValueError(f"simple root index {i} out of range for rank {n}")
    if i < n:
        return lam[i - 1] - lam[i]
    return lam[n - 1]


def reflect(lam, i):
    """Simple reflection ``s_i`` applied to ``lam``."""
    n = len(lam)
    out = list(lam)
    if i < n:
        out[i - 1], out[i] = out[i], out[i - 1]
    elif i == n:
        out[n - 1] = -out[n - 1]
    else:
        raise ValueError(f"simple root index {i} out of range for rank {n}")
    return tuple(out)


def dot_reflect(lam, i):
    """``s_i . lam = s_i(lam + rho) - rho``, i.e. ``s_i(lam) - alpha_i``."""
    n = len(lam)
    return sub(reflect(lam, i), simple_root(n, i))


def simple_root(n, i):
    v = [0] * n
    if i < n:
        v[i - 1], v[i] = 1, -1
    else:
        v[n - 1] = 2
    return tuple(v)


def to_simple(lam):
    """Coordinates of ``lam`` in the basis of simple roots (may be half-integers)."""
    n = len(lam)
    partial = []
    s = 0
    for x in lam:
        s += x
        partial.append(Fraction(s))
    partial[n - 1] = partial[n - 1] / 2
    return tuple(partial)


def from_simple(coeffs):
    """Weight ``sum c_i alpha_i`` from simple-root coefficients."""
    n = len(coeffs)
    out = [0] * n
    for i, c in enumerate(coeffs, start=1):
        if c:
            out = [x + c * y for x, y in zip(out, simple_root(n, i))]
    return tuple(out)


def height(lam):
    return sum(to_simple(lam))


def is_positive_root(beta):
    """Sign of a root: the first nonzero epsilon coordinate is positive."""
    for x in beta:
        if x:
            return x > 0
    return False


def format_weight(lam):
    """Human-readable simple-root expansion, e.g. ``-a1-2a2-a3``."""
    coeffs = to_simple(lam)
    if all(c == 0 for c in coeffs):
        return "0"
    parts = []
    for i, c in enumerate(coeffs, start=1):
        if c == 0:
            continue
        mag = abs(c)
        body = (f"a{i}" if mag == 1 else f"{mag}a{i}")
        parts.append(("-" if c < 0 else "+") + body)
    text = "".join(parts)
    return text[1:] if text.startswith("+") else text


@dataclass(frozen=True)
class RootSystem:
    n: int
    simple_roots: tuple
    positive_roots: tuple
    fundamental_weights: tuple
    rho: tuple
    coroots: dict = field(compare=False, repr=False)

    @property
    def roots(self):
        return self.positive_roots + tuple(neg(b) for b in self.positive_roots)

    @property
    def negative_roots(self):
        return tuple(neg(b) for b in self.positive_roots)

    @property
    def highest_short_root(self):
        v = [0] * self.n
        v[0] = v[1] = 1
        return tuple(v)

    @property
    def highest_root(self):
        v = [0] * self.n
        v[0] = 2
        return tuple(v)

    def alpha(self, i):
        return self.simple_roots[i - 1]

    def omega(self, i):
        return self.fundamental_weights[i - 1]

    @property
    def zero(self):
        return (0,) * self.n

    def is_root(self, beta):
        return beta in self._root_set

    @cached_property
    def _root_set(self):
        return frozenset(self.roots)

    def short_roots(self):
        return tuple(b for b in self.roots if sorted(map(abs, b))[-1] == 1)

    def weight(self, simple=None, fundamental=None):
        """Build a weight from simple-root and/or fundamental-weight coefficients."""
        lam = self.zero
        if simple:
            lam = add(lam, from_simple(tuple(simple)))
        if fundamental:
            for i, c in enumerate(fundamental, start=1):
                lam = add(lam, scale(c, self.omega(i)))
        return lam


@lru_cache(maxsize=None)
def build(n):
    if not isinstance(n, int) or n < 2:
        raise ValueError("rank unsupported")
    simple = tuple(simple_root(n, i) for i in range(1, n + 1))
    pos = []
    for i in range(n):
        for j in range(i + 1, n):
            for sign in (-1, 1):
                v = [0] * n
                v[i], v[j] = 1, sign
                pos.append(tuple(v))
        v = [0] * n
        v[i] = 2
        pos.append(tuple(v))
    pos.sort(key=lambda b: (height(b), tuple(-x for x in b)))
    fund = tuple(tuple(1 if k < i else 0 for k in range(n)) for i in range(1, n + 1))
    rho = tuple(n - k for k in range(n))
    coroots = {}
    for b in pos + [neg(b) for b in pos]:
        sq = sum(x * x for x in b)
        coroots[b] = tuple(Fraction(2 * x, sq) for x in b)
    return RootSystem(n, simple, tuple(pos), fund, rho, coroots)


# ---------------------------------------------------------------------------
# Matrix model.  sp(2n) = {X : X^T J + J X = 0} with J = [[0, I], [-I, 0]];
# the Cartan subalgebra is diag(h, -h).


def _root_matrix(n, beta):
    """Matrix of ``e_beta`` and its distinguished (row, col) entry."""
    m = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
    idx = [k for k, x in enumerate(beta) if x]
    positive = is_positive_root(beta)
    b = beta if positive else neg(beta)
    if len(idx) == 1:
        i = idx[0]
        entries = [((i, n + i), 1)]
    else:
        i, j = idx
        if b[j] < 0:
            entries = [((i, j), 1), ((n + j, n + i), -1)]
        else:
            entries = [((i, n + j), 1), ((j, n + i), 1)]
    if not positive:
        entries = [((c, r), v) for (r, c), v in entries]
    for (r, c), v in entries:
        m[r][c] = Fraction(v)
    return m, entries[0][0]


@dataclass(frozen=True, eq=False)
class ChevalleyRealization:
    """Explicit matrices for a basis of sp(2n): root vectors, then ``H_k = diag(e_k, -e_k)``."""

    n: int
    basis_labels: tuple
    matrices: tuple = field(repr=False)
    pivots: tuple = field(repr=False)

    @property
    def dimension(self):
        return len(self.basis_labels)

    def index(self, label):
        return self.basis_labels.index(label)

    def element(self, coords):
        return Element(self, tuple(Fraction(c) for c in coords))

    def e(self, beta):
        coords = [0] * self.dimension
        coords[self.index(("root", tuple(beta)))] = 1
        return self.element(coords)

    def cartan(self, h):
        """Cartan element acting on the epsilon basis by the vector ``h``."""
        coords = [0] * self.dimension
        for k, x in enumerate(h):
            coords[self.index(("h", k + 1))] = x
        return self.element(coords)

    def h_alpha(self, i):
        """Coroot ``h_{alpha_i}``."""
        n = self.n
        v = [0] * n
        if i < n:
            v[i - 1], v[i] = 1, -1
        else:
            v[n - 1] = 1
        return self.cartan(v)

    def coweight_n(self):
        """The coweight dual to ``alpha_n``: ``(1/2, ..., 1/2)``."""
        return self.cartan([Fraction(1, 2)] * self.n)

    def decompose(self, mat):
        """Coordinates of a matrix in the basis; raises if it is not in sp(2n)."""
        coords = []
        for label, piv, base in zip(self.basis_labels, self.pivots, self.matrices):
            r, c = piv
            coords.append(mat[r][c] / base[r][c])
        rebuilt = _combine(self.matrices, coords, 2 * self.n)
        if rebuilt != [list(row) for row in mat]:
            raise ValueError("matrix is not in the realized algebra")
        return tuple(coords)

    def weight_of(self, label):
        if label[0] == "root":
            return label[1]
        return (0,) * self.n


def _combine(mats, coords, size):
    out = [[Fraction(0)] * size for _ in range(size)]
    for m, c in zip(mats, coords):
        if c == 0:
            continue
        for r in range(size):
            row = m[r]
            for k in range(size):
                if row[k]:
                    out[r][k] += c * row[k]
    return out


@dataclass(frozen=True)
class Element:
    realization: ChevalleyRealization
    coords: tuple

    def matrix(self):
        real = self.realization
        return _combine(real.matrices, self.coords, 2 * real.n)

    def __add__(self, other):
        _same(self, other)
        return Element(self.realization, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __rmul__(self, k):
        return Element(self.realization, tuple(k * a for a in self.coords))

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def support(self):
        return {lab: c for lab, c in zip(self.realization.basis_labels, self.coords) if c}


def _same(x, y):
    if x.realization is not y.realization:
        raise ValueError("mismatched realization")


@lru_cache(maxsize=None)
def realization(n):
    rs = build(n)
    labels, mats, pivots = [], [], []
    for beta in rs.roots:
        m, piv = _root_matrix(n, beta)
        labels.append(("root", beta))
        mats.append(m)
        pivots.append(piv)
    for k in range(n):
        m = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
        m[k][k] = Fraction(1)
        m[n + k][n + k] = Fraction(-1)
        labels.append(("h", k + 1))
        mats.append(m)
        pivots.append((k, k))
    return ChevalleyRealization(n, tuple(labels), tuple(mats), tuple(pivots))


def bracket(x, y):
    """Lie bracket ``[x, y]`` computed as a matrix commutator."""
    _same(x, y)
    a, b = x.matrix(), y.matrix()
    size = len(a)
    comm = [[sum(a[r][k] * b[k][c] - b[r][k] * a[k][c] for k in range(size))
             for c in range(size)] for r in range(size)]
    return Element(x.realization, x.realization.decompose(comm))


def symplectic_form(n):
    j = [[0] * (2 * n) for _ in range(2 * n)]
    for k in range(n):
        j[k][n + k] = 1
        j[n + k][k] = -1
    return j


def is_symplectic(mat):
    """``X^T J + J X = 0``."""
    size = len(mat)
    j = symplectic_form(size // 2)
    for r, c in product(range(size), repeat=2):
        lhs = sum(mat[k][r] * j[k][c] for k in range(size))
        rhs = sum(j[r][k] * mat[k][c] for k in range(size))
        if lhs + rhs != 0:
            return False
    return True
