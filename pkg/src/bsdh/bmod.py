"""Finite-dimensional modules for the Borel subgroup spanned by negative roots.

A module is stored weight space by weight space.  For each simple index ``j``
and each weight ``mu`` the block ``F[(j, mu)]`` is the matrix of ``e_{-alpha_j}``
from ``V_mu`` to ``V_{mu - alpha_j}`` (rows index the target basis).  Every
operator lowers weights, so the weights of a cyclic module sit below its
generator.
"""

from collections import defaultdict
from fractions import Fraction
from math import comb

from . import cartan, linalg

__all__ = [
    "Character", "BModule", "line", "zero", "k1", "adjoint", "gprime", "k2",
    "dual", "tensor_char", "direct_sum", "generated_submodule", "submodule",
    "balpha_decompose", "b_stable_lines", "components", "ext1_dim", "hom_dim", "is_cyclic", "weight_sort_key",
]


def weight_sort_key(mu):
    return (-cartan.height(mu), tuple(-x for x in mu))


class Character:
    """Finitely supported integer-valued function on weights (signed allowed)."""

    __slots__ = ("_d",)

    def __init__(self, data=None):
        d = {}
        if data:
            items = data.items() if hasattr(data, "items") else data
            for mu, m in items:
                if m:
                    d[tuple(mu)] = d.get(tuple(mu), 0) + m
        self._d = {mu: m for mu, m in d.items() if m}

    @classmethod
    def of_weights(cls, weights):
        out = defaultdict(int)
        for mu in weights:
            out[tuple(mu)] += 1
        return cls(out)

    def __getitem__(self, mu):
        return self._d.get(tuple(mu), 0)

    def __iter__(self):
        return iter(self.support())

    def __len__(self):
        return len(self._d)

    def __bool__(self):
        return bool(self._d)

    def items(self):
        return [(mu, self._d[mu]) for mu in self.support()]

    def support(self):
        return sorted(self._d, key=weight_sort_key)

    def dim(self):
        return sum(self._d.values())

    def is_effective(self):
        return all(m > 0 for m in self._d.values())

    def __add__(self, other):
        out = dict(self._d)
        for mu, m in other._d.items():
            out[mu] = out.get(mu, 0) + m
        return Character(out)

    def __neg__(self):
        return Character({mu: -m for mu, m in self._d.items()})

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if isinstance(other, Character):
            return self._d == other._d
        if isinstance(other, dict):
            return self == Character(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._d.items()))

    def shift(self, lam):
        return Character({cartan.add(mu, lam): m for mu, m in self._d.items()})

    def negate_weights(self):
        return Character({cartan.neg(mu): m for mu, m in self._d.items()})

    def times(self, other):
        out = defaultdict(int)
        for mu, m in self._d.items():
            for nu, k in other._d.items():
                out[cartan.add(mu, nu)] += m * k
        return Character(out)

    def restrict(self, weights):
        weights = set(weights)
        return Character({mu: m for mu, m in self._d.items() if mu in weights})

    def as_dict(self):
        return dict(self._d)

    def to_json(self):
        return [[cartan.format_weight(mu), m] for mu, m in self.items()]

    def __repr__(self):
        body = ", ".join(f"{cartan.format_weight(mu)}: {m}" for mu, m in self.items())
        return "Character({" + body + "})"


class BModule:
    """Weight-graded module with lowering operators; treat as immutable."""

    __slots__ = ("n", "weights", "dims", "blocks", "_key", "_offsets")

    def __init__(self, n, dims, blocks, check=True):
        self.n = n
        dims = {tuple(mu): d for mu, d in dims.items() if d > 0}
        self.weights = tuple(sorted(dims, key=weight_sort_key))
        self.dims = dims
        clean = {}
        for (j, mu), mat in blocks.items():
            mu = tuple(mu)
            if mu not in dims:
                continue
            tgt = cartan.sub(mu, cartan.simple_root(n, j))
            if tgt not in dims or linalg.is_zero(mat):
                continue
            if len(mat) != dims[tgt] or any(len(row) != dims[mu] for row in mat):
                raise ValueError(f"block ({j}, {mu}) has the wrong shape")
            clean[(j, mu)] = [[Fraction(x) for x in row] for row in mat]
        self.blocks = clean
        self._key = None
        self._offsets = None
        if check:
            self.check()

    # -- basic data -------------------------------------------------------
    @property
    def dim(self):
        return sum(self.dims.values())

    def is_zero(self):
        return not self.dims

    def character(self):
        return Character(self.dims)

    def block(self, j, mu):
        """Matrix of ``e_{-alpha_j}`` on ``V_mu`` (zero matrix if not stored)."""
        mu = tuple(mu)
        tgt = cartan.sub(mu, cartan.simple_root(self.n, j))
        if (j, mu) in self.blocks:
            return self.blocks[(j, mu)]
        return linalg.zeros(self.dims.get(tgt, 0), self.dims.get(mu, 0))

    def offsets(self):
        if self._offsets is None:
            off, k = {}, 0
            for mu in self.weights:
                off[mu] = k
                k += self.dims[mu]
            self._offsets = off
        return self._offsets

    def basis_weights(self):
        """Weight of each global basis vector, in canonical order."""
        return [mu for mu in self.weights for _ in range(self.dims[mu])]

    def lowering(self, j):
        """Dense matrix of ``e_{-alpha_j}`` in the global basis."""
        d = self.dim
        off = self.offsets()
        m = linalg.zeros(d, d)
        for (jj, mu), blk in self.blocks.items():
            if jj != j:
                continue
            tgt = cartan.sub(mu, cartan.simple_root(self.n, j))
            for r, row in enumerate(blk):
                for c, x in enumerate(row):
                    m[off[tgt] + r][off[mu] + c] = x
        return m

    def key(self):
        """Canonical hashable serialization (used for memoization)."""
        if self._key is None:
            self._key = (
                self.n,
                tuple((mu, self.dims[mu]) for mu in self.weights),
                tuple(sorted((j, mu, tuple(map(tuple, m))) for (j, mu), m in self.blocks.items())),
            )
        return self._key

    def __eq__(self, other):
        return isinstance(other, BModule) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"BModule(n={self.n}, dim={self.dim}, character={self.character()!r})"

    def to_json(self):
        return {
            "n": self.n,
            "weights": [[list(mu), self.dims[mu]] for mu in self.weights],
            "ops": [
                {"j": j, "src": list(mu), "matrix": [[str(x) for x in row] for row in m]}
                for (j, mu), m in sorted(self.blocks.items())
            ],
        }

    @classmethod
    def from_json(cls, data):
        dims = {tuple(mu): d for mu, d in data["weights"]}
        blocks = {(op["j"], tuple(op["src"])): [[Fraction(x) for x in row] for row in op["matrix"]]
                  for op in data["ops"]}
        return cls(data["n"], dims, blocks)

    # -- structure checks -------------------------------------------------
    def apply_path(self, path, mu):
        """Matrix of ``F_{path[0]} ... F_{path[-1]}`` (rightmost first) on ``V_mu``."""
        mat = linalg.identity(self.dims.get(mu, 0))
        cur = mu
        for j in reversed(path):
            blk = self.block(j, cur)
            mat = linalg.matmul(blk, mat, inner=len(mat)) if blk else []
            cur = cartan.sub(cur, cartan.simple_root(self.n, j))
            if cur not in self.dims:
                return None
        return mat

    def check(self):
        """Serre relations for the lowering operators (nilpotency is automatic from grading)."""
        n = self.n
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i == j:
                    continue
                a = -cartan.pairing(cartan.simple_root(n, j), i)
                for mu in self.weights:
                    tgt = cartan.sub(mu, cartan.add(cartan.simple_root(n, j),
                                                    cartan.scale(a + 1, cartan.simple_root(n, i))))
                    if tgt not in self.dims:
                        continue
                    acc = linalg.zeros(self.dims[tgt], self.dims[mu])
                    for k in range(a + 2):
                        path = (i,) * (a + 1 - k) + (j,) + (i,) * k
                        term = self.apply_path(path, mu)
                        if term is None:
                            continue
                        coef = (-1) ** k * comb(a + 1, k)
                        acc = [[x + coef * y for x, y in zip(r1, r2)] for r1, r2 in zip(acc, term)]
                    if not linalg.is_zero(acc):
                        raise ValueError(f"Serre relation fails for ({i}, {j}) at weight {mu}")


# ---------------------------------------------------------------------------
# constructors


def zero(n):
    return BModule(n, {}, {})


def line(lam):
    lam = tuple(lam)
    return BModule(len(lam), {lam: 1}, {})


def k1(n):
    """Two-dimensional module with weights ``0`` and ``-alpha_n``; ``F_n`` links them."""
    rs = cartan.build(n)
    low = cartan.neg(rs.alpha(n))
    return BModule(n, {rs.zero: 1, low: 1}, {(n, rs.zero): [[1]]})


def adjoint(n):
    """The adjoint representation of sp(2n) restricted to the Borel subalgebra."""
    real = cartan.realization(n)
    rs = cartan.build(n)
    labels = list(real.basis_labels)
    by_weight = defaultdict(list)
    for lab in labels:
        by_weight[real.weight_of(lab)].append(lab)
    dims = {mu: len(v) for mu, v in by_weight.items()}
    blocks = {}
    for j in range(1, n + 1):
        f = real.e(cartan.neg(rs.alpha(j)))
        for mu, labs in by_weight.items():
            tgt = cartan.sub(mu, rs.alpha(j))
            if tgt not in by_weight:
                continue
            mat = linalg.zeros(len(by_weight[tgt]), len(labs))
            for c, lab in enumerate(labs):
                img = cartan.bracket(f, real.element(
                    [int(l == lab) for l in labels])).support()
                for r, tlab in enumerate(by_weight[tgt]):
                    mat[r][c] = img.get(tlab, Fraction(0))
            blocks[(j, mu)] = mat
    return BModule(n, dims, blocks)


def _vector_in(V, mu, local):
    """Global coordinate vector for a vector of ``V_mu`` given in local coordinates."""
    vec = [Fraction(0)] * V.dim
    off = V.offsets()[mu]
    for k, x in enumerate(local):
        vec[off + k] = Fraction(x)
    return vec


def coweight_vector(n):
    """The coweight ``h(alpha_n)`` as a vector of the adjoint module."""
    V = adjoint(n)
    real = cartan.realization(n)
    zero_labels = [lab for lab in real.basis_labels if lab[0] == "h"]
    local = [Fraction(1, 2)] * len(zero_labels)
    return V, _vector_in(V, cartan.build(n).zero, local)


def gprime(n):
    """Submodule of the adjoint module generated by ``h(alpha_n)``."""
    V, v = coweight_vector(n)
    return generated_submodule(V, [v])


def k2(n):
    """Span of the root spaces ``g_beta`` with ``beta`` strictly below ``-alpha_n``."""
    V = adjoint(n)
    rs = cartan.build(n)
    an = rs.alpha(n)
    vecs = []
    for beta in rs.negative_roots:
        if beta == cartan.neg(an):
            continue
        diff = cartan.to_simple(cartan.sub(cartan.neg(an), beta))
        if all(c >= 0 for c in diff):
            vecs.append(_vector_in(V, beta, [1]))
    return submodule(V, _split_by_weight(V, vecs))


# ---------------------------------------------------------------------------
# operations


def dual(V):
    n = V.n
    dims = {cartan.neg(mu): d for mu, d in V.dims.items()}
    blocks = {}
    for (j, mu), m in V.blocks.items():
        # F_j on V maps mu -> mu - a_j; on the dual it maps -(mu - a_j) -> -mu.
        src = cartan.neg(cartan.sub(mu, cartan.simple_root(n, j)))
        blocks[(j, src)] = [[-m[r][c] for r in range(len(m))] for c in range(len(m[0]))]
    return BModule(n, dims, blocks, check=False)


def tensor_char(V, lam):
    lam = tuple(lam)
    dims = {cartan.add(mu, lam): d for mu, d in V.dims.items()}
    blocks = {(j, cartan.add(mu, lam)): m for (j, mu), m in V.blocks.items()}
    return BModule(V.n, dims, blocks, check=False)


def direct_sum(V, W):
    if V.n != W.n:
        raise ValueError("rank mismatch")
    n = V.n
    dims = defaultdict(int)
    for X in (V, W):
        for mu, d in X.dims.items():
            dims[mu] += d
    blocks = {}
    for j in range(1, n + 1):
        for mu in dims:
            tgt = cartan.sub(mu, cartan.simple_root(n, j))
            if tgt not in dims:
                continue
            mat = linalg.zeros(dims[tgt], dims[mu])
            r0 = c0 = 0
            for X in (V, W):
                blk = X.block(j, mu) if mu in X.dims else []
                for r, row in enumerate(blk):
                    for c, x in enumerate(row):
                        mat[r0 + r][c0 + c] = x
                r0 += X.dims.get(tgt, 0)
                c0 += X.dims.get(mu, 0)
            blocks[(j, mu)] = mat
    return BModule(n, dict(dims), blocks, check=False)


def _split_by_weight(V, vectors):
    """Weight components of global vectors, grouped per weight (torus closure)."""
    out = defaultdict(list)
    off = V.offsets()
    for v in vectors:
        if len(v) != V.dim:
            raise ValueError("vector does not lie in the module")
        for mu in V.weights:
            comp = [Fraction(x) for x in v[off[mu]:off[mu] + V.dims[mu]]]
            if any(comp):
                out[mu].append(comp)
    return out


def submodule(V, spans):
    """Submodule with the given per-weight spanning sets (must already be stable)."""
    bases = {}
    for mu, vecs in spans.items():
        basis, piv = linalg.column_basis(vecs, V.dims[mu])
        if basis:
            bases[mu] = (basis, piv)
    return _restrict(V, bases)


def _restrict(V, bases, check_closed=True):
    n = V.n
    dims = {mu: len(b) for mu, (b, _) in bases.items()}
    blocks = {}
    for j in range(1, n + 1):
        for mu, (basis, _) in bases.items():
            tgt = cartan.sub(mu, cartan.simple_root(n, j))
            blk = V.block(j, mu) if mu in V.dims else []
            if not blk or linalg.is_zero(blk):
                continue
            imgs = [[sum(row[k] * b[k] for k in range(len(b))) for row in blk] for b in basis]
            if tgt not in bases:
                if check_closed and any(any(x) for x in imgs):
                    raise ValueError("subspace is not stable")
                continue
            tb, tpiv = bases[tgt]
            mat = linalg.zeros(len(tb), len(basis))
            for c, img in enumerate(imgs):
                coords = [img[p] for p in tpiv]
                if check_closed:
                    recon = [sum(coords[r] * tb[r][k] for r in range(len(tb))) for k in range(len(img))]
                    if recon != img:
                        raise ValueError("subspace is not stable")
                for r, x in enumerate(coords):
                    mat[r][c] = x
            blocks[(j, mu)] = mat
    return BModule(n, dims, blocks, check=False)


def generated_submodule(V, vectors):
    """Smallest submodule containing ``vectors`` (global coordinate vectors)."""
    spans = _split_by_weight(V, vectors)
    n = V.n
    for mu in sorted(V.weights, key=weight_sort_key):
        if mu not in spans:
            continue
        basis, _ = linalg.column_basis(spans[mu], V.dims[mu])
        spans[mu] = basis
        for j in range(1, n + 1):
            tgt = cartan.sub(mu, cartan.simple_root(n, j))
            if tgt not in V.dims:
                continue
            blk = V.block(j, mu)
            for b in basis:
                img = [sum(row[k] * b[k] for k in range(len(b))) for row in blk]
                if any(img):
                    spans[tgt].append(img)
    return submodule(V, spans)


def balpha_decompose(V, i):
    """Decomposition as a module for the rank-one Borel of ``alpha_i``.

    Returns sorted ``(d, twist)`` pairs: a summand ``V'_d (x) C_twist`` where
    ``V'_d`` is the irreducible of dimension ``d`` with highest weight
    ``(d-1) omega_i``.
    """
    n = V.n
    alpha = cartan.simple_root(n, i)
    omega = cartan.build(n).omega(i)

    def g(mu, k):
        if mu not in V.dims:
            return 0
        if k == 0:
            return V.dims[mu]
        m = V.apply_path((i,) * k, mu)
        return 0 if m is None else linalg.rank(m, V.dims[mu])

    out = []
    total = 0
    for mu in V.weights:
        above = cartan.add(mu, alpha)
        t = lambda k: g(mu, k) - g(above, k + 1)
        d = 1
        while t(d - 1) > 0:
            count = t(d - 1) - t(d)
            if count < 0:
                raise ValueError("not integrable")
            for _ in range(count):
                out.append((d, cartan.sub(mu, cartan.scale(d - 1, omega))))
                total += d
            d += 1
    if total != V.dim:
        raise ValueError("not integrable")
    return sorted(out, key=lambda p: (p[0], weight_sort_key(p[1])))


def components(V):
    """Split ``V`` along the connected components of its weight graph.

    Two weights are linked when some lowering block between them is nonzero;
    each component spans a submodule and ``V`` is their direct sum.
    """
    parent = {mu: mu for mu in V.weights}

    def find(mu):
        while parent[mu] != mu:
            parent[mu] = parent[parent[mu]]
            mu = parent[mu]
        return mu

    for (j, mu) in V.blocks:
        tgt = cartan.sub(mu, cartan.simple_root(V.n, j))
        parent[find(mu)] = find(tgt)
    groups = defaultdict(list)
    for mu in V.weights:
        groups[find(mu)].append(mu)
    if len(groups) <= 1:
        return [V]
    out = []
    for ws in sorted(groups.values(), key=lambda g: weight_sort_key(g[0])):
        wset = set(ws)
        dims = {mu: V.dims[mu] for mu in ws}
        blocks = {k: m for k, m in V.blocks.items() if k[1] in wset}
        out.append(BModule(V.n, dims, blocks, check=False))
    return out


def _serre_words(n):
    """Serre relations for the lowering operators as signed letter sequences."""
    out = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            a = -cartan.pairing(cartan.simple_root(n, j), i)
            terms = [((-1) ** k * comb(a + 1, k), (i,) * (a + 1 - k) + (j,) + (i,) * k)
                     for k in range(a + 2)]
            out.append(terms)
    return out


def ext1_dim(C, A):
    """Dimension of ``Ext^1_B(C, A)``.

    An extension ``0 -> A -> E -> C -> 0`` is ``A (+) C`` as a weight space with
    lowering operators ``[[F^A_j, phi_j], [0, F^C_j]]``; the ``phi_j`` must make
    the Serre relations hold, and changing the splitting by a weight-zero map
    ``m : C -> A`` changes ``phi_j`` by ``F^A_j m - m F^C_j``.
    """
    n = A.n
    FA = {j: A.lowering(j) for j in range(1, n + 1)}
    FC = {j: C.lowering(j) for j in range(1, n + 1)}
    wa, wc = A.basis_weights(), C.basis_weights()
    var = {}
    for j in range(1, n + 1):
        alpha = cartan.simple_root(n, j)
        for b, mu in enumerate(wc):
            low = cartan.sub(mu, alpha)
            for a, nu in enumerate(wa):
                if nu == low:
                    var[(j, a, b)] = len(var)
    if not var:
        return 0
    da, dc = len(wa), len(wc)
    rows = {}
    for terms in _serre_words(n):
        for coef, word in terms:
            m = len(word)
            for t in range(m):
                L = linalg.identity(da)
                for x in word[:t]:
                    L = linalg.matmul(L, FA[x], inner=da)
                R = linalg.identity(dc)
                for x in word[t + 1:]:
                    R = linalg.matmul(R, FC[x], inner=dc)
                jt = word[t]
                for (j, a, b), col in var.items():
                    if j != jt:
                        continue
                    for r in range(da):
                        la = L[r][a]
                        if not la:
                            continue
                        for c in range(dc):
                            rb = R[b][c]
                            if rb:
                                key = (terms[0][1], r, c)
                                row = rows.setdefault(key, {})
                                row[col] = row.get(col, 0) + coef * la * rb
    mat = [[Fraction(row.get(k, 0)) for k in range(len(var))] for row in rows.values()]
    cocycles = len(var) - (linalg.rank(mat, len(var)) if mat else 0)
    images = []
    for a, nu in enumerate(wa):
        for b, mu in enumerate(wc):
            if nu != mu:
                continue
            vec = [Fraction(0)] * len(var)
            for j in range(1, n + 1):
                for (jj, x, y), col in var.items():
                    if jj != j:
                        continue
                    # (F^A_j m - m F^C_j)[x][y] with m = E_{a b}
                    val = (FA[j][x][a] if y == b else 0) - (FC[j][b][y] if x == a else 0)
                    if val:
                        vec[col] += val
            images.append(vec)
    boundaries = linalg.rank(images, len(var)) if images else 0
    return cocycles - boundaries


def hom_dim(X, Y):
    """Dimension of the space of module maps ``X -> Y``."""
    common = [mu for mu in X.weights if mu in Y.dims]
    if not common:
        return 0
    n = X.n
    var = {}
    for mu in common:
        for r in range(Y.dims[mu]):
            for c in range(X.dims[mu]):
                var[(mu, r, c)] = len(var)
    rows = []
    for mu in X.weights:
        for j in range(1, n + 1):
            tgt = cartan.sub(mu, cartan.simple_root(n, j))
            if tgt not in Y.dims:
                continue
            FX, FY = X.block(j, mu), Y.block(j, mu) if mu in Y.dims else None
            # f_tgt F^X_j - F^Y_j f_mu = 0 as a map X_mu -> Y_tgt
            for r in range(Y.dims[tgt]):
                for c in range(X.dims[mu]):
                    row = {}
                    if tgt in X.dims:
                        for k in range(X.dims[tgt]):
                            x = FX[k][c]
                            if x:
                                col = var[(tgt, r, k)]
                                row[col] = row.get(col, 0) + x
                    if mu in Y.dims:
                        for k in range(Y.dims[mu]):
                            y = FY[r][k]
                            if y:
                                col = var[(mu, k, c)]
                                row[col] = row.get(col, 0) - y
                    if row:
                        rows.append([Fraction(row.get(k, 0)) for k in range(len(var))])
    return len(var) - (linalg.rank(rows, len(var)) if rows else 0)


def b_stable_lines(V):
    """Dimension of the joint kernel of all lowering operators, per weight."""
    out = {}
    for mu in V.weights:
        rows = []
        for j in range(1, V.n + 1):
            rows.extend(V.block(j, mu))
        kdim = V.dims[mu] - (linalg.rank(rows, V.dims[mu]) if rows else 0)
        if kdim:
            out[mu] = kdim
    return Character(out)


def is_cyclic(V, mu):
    mu = tuple(mu)
    if V.dims.get(mu, 0) != 1:
        if V.dims.get(mu, 0) > 1:
            raise ValueError("ambiguous generator")
        return False
    sub = generated_submodule(V, [_vector_in(V, mu, [1])])
    return sub.dim == V.dim
