"""Tangent-bundle bookkeeping for Bott-Samelson-Demazure-Hansen varieties.

For a reduced word ``(i_1, ..., i_N)`` write ``Z_t`` for the variety of the
prefix of length ``t`` and ``w_t`` for the corresponding Weyl group element.
The tower ``Z_t -> Z_{t-1}`` gives, weight by weight, the exact sequence

    0 -> H^0(w_t, a) -> H^0(Z_t, T) -> H^0(Z_{t-1}, T) -> H^1(w_t, a)
      -> H^1(Z_t, T) -> H^1(Z_{t-1}, T) -> 0

with ``a = alpha_{i_t}``, as soon as ``H^2(w_t, a)`` vanishes.  The only
unknown in it is the rank ``rho_t`` of the connecting map, so each weight
space of the tangent cohomology is pinned down by the list of admissible
ranks.  ``tangent_bounds`` enumerates that list exactly, optionally under
upper bounds ("caps") imported from outside the computation.

``lemma_suite`` restates the support, dimension and vanishing statements
used along the way for a given Coxeter shape and checks them against the
engine; ``theorem_verdict`` combines them into a vanishing verdict for
``H^1`` of the tangent bundle of ``Z(w_0, i)``.
"""

import itertools
import time
from dataclasses import dataclass, field

from . import cartan, weyl
from .bmod import Character, k1, line
from .coh import h0_word, word_cohomology

__all__ = [
    "LedgerEntry", "RelativeLedger", "relative_ledger", "TangentBounds",
    "tangent_bounds", "parabolic_cap", "parabolic_character", "find_parabolic",
    "LemmaCheck", "VerdictReport", "lemma_suite", "theorem_verdict",
    "predicate", "commutation_invariance_check", "InconclusiveLedger",
    "TRUSTED", "STATUSES", "VERDICTS",
]

STATUSES = ("verified", "failed", "trusted-structural", "inconclusive")
VERDICTS = ("H1-vanishes", "H1-nonzero", "inconclusive")

# Facts imported from outside the computation.  Each appears in a report as a
# trusted-structural entry; the checkable hypotheses next to it are verified.
TRUSTED = {
    "les-exactness": "the tangent sequence of Z_t -> Z_{t-1} is exact",
    "peel-ses": "the two-column short exact sequences used by the word engine",
    "parabolic-h0": "H^0(Z(w_0, i), T) is a parabolic subalgebra of g",
    "surjection-to-prefix": "H^1(Z(w_0, i), T) maps onto H^1 of every prefix variety",
    "levi-tail-isomorphism": "appending letters of the Levi subgroup without alpha_n keeps H^1 and maps H^0 onto H^0",
    "parabolic-reduction": "H^0 and H^1 of Z(w_0, i) agree with those of the prefix u_1",
    "commutation-invariance": "words in one commutation class give isomorphic varieties",
}


# Checks whose failure blocks the verdict, per branch of the argument.
LOAD_BEARING = {
    "vanishing": frozenset({
        "ledger-certified", "higher-vanishing", "commutation-class", "coxeter-power-vanishing",
        "u1-h1-equals-h0", "mr-disjoint", "prefix-bookkeeping", "tangent-u1-cap",
        "tangent-u1-prime-cap", "tangent-u1-prime-two", "tangent-tau-cap", "tangent-tau-two",
        "tau1-terminal-vanishing", "tail-h1-vanishing", "u1-inverts-highest-root",
        "cap-consistency", "parabolic-collapse", "final-h1-bounds",
    }),
    "nonvanishing": frozenset({
        "ledger-certified", "higher-vanishing", "commutation-class", "first-block-witness",
        "second-block-witness", "final-h1-bounds",
    }),
}


class InconclusiveLedger(ValueError):
    pass


# ---------------------------------------------------------------------------
# Relative ledger


@dataclass
class LedgerEntry:
    """Cohomology of the relative line bundle ``L(alpha_{i_t})`` on ``Z_t``."""

    t: int
    prefix: tuple
    letter: int
    h0: object  # BModule
    h1: object  # DegreeState
    higher: dict  # degree -> (Character or None, status)
    certificate: list

    @property
    def h0_char(self):
        return self.h0.character()

    @property
    def h1_char(self):
        return self.h1.character() if self.h1.known else None

    def higher_ok(self):
        return all(status == "verified zero" for _, status in self.higher.values())

    def to_json(self):
        return {
            "t": self.t,
            "letter": self.letter,
            "h0": self.h0_char.to_json(),
            "h1": None if self.h1_char is None else self.h1_char.to_json(),
            "h1_flag": self.h1.flag,
            "higher": {str(j): status for j, (_, status) in sorted(self.higher.items())},
        }


@dataclass
class RelativeLedger:
    n: int
    word: tuple
    entries: tuple
    jmax: int = 2

    def __len__(self):
        return len(self.entries)

    def entry(self, t):
        """Entry for the prefix of length ``t`` (1-based)."""
        return self.entries[t - 1]

    def position(self, prefix):
        prefix = tuple(prefix)
        t = len(prefix)
        if t == 0 or t > len(self.word) or self.word[:t] != prefix:
            raise ValueError(f"{prefix} is not a prefix of the ledger word")
        return t

    def a(self, t, mu):
        return self.entry(t).h0_char[mu]

    def b(self, t, mu):
        return self.entry(t).h1_char[mu]

    def unknown(self):
        return [e.t for e in self.entries if not e.h1.known]

    def weights(self):
        out = set()
        for e in self.entries:
            out.update(e.h0_char.support())
            if e.h1_char is not None:
                out.update(e.h1_char.support())
        return out

    def to_json(self):
        return {"n": self.n, "word": list(self.word), "jmax": self.jmax,
                "entries": [e.to_json() for e in self.entries]}


def relative_ledger(word, n, jmax=2):
    """H^0 and H^1 (plus the vanishing status of degrees 2..jmax) of every prefix."""
    word = tuple(word)
    weyl_len = weyl.length(weyl.from_word(word, n)) if word else 0
    if weyl_len != len(word):
        raise ValueError("not reduced")
    R = cartan.build(n)
    entries = []
    for t in range(1, len(word) + 1):
        letter = word[t - 1]
        wc = word_cohomology(word[:t], line(R.alpha(letter)), jmax)
        higher = {}
        for j in range(2, jmax + 1):
            s = wc.higher[j]
            if not s.known:
                higher[j] = (None, f"inconclusive (extension-ambiguous at {s.origin})")
            else:
                ch = s.character()
                higher[j] = (ch, "verified zero" if not ch else "verified nonzero")
        entries.append(LedgerEntry(t, word[:t], letter, wc.h0, wc.h1, higher, wc.certificate))
    return RelativeLedger(n, word, tuple(entries), jmax)


# ---------------------------------------------------------------------------
# Tangent bounds

_ENUMERATION_LIMIT = 200000


def parabolic_cap(n):
    """Upper bound on dim H^0(Z(w_0, i), T)_mu when that space is a parabolic subalgebra."""
    R = cartan.build(n)

    def cap(mu):
        if mu == R.zero:
            return n
        return 1 if R.is_root(mu) else 0
    return cap


@dataclass
class TangentBounds:
    """Per-weight ranges for ``dim H^j(Z_t, T)_mu``, ``j = 0, 1``, ``t = 0..N``.

    ``h0[mu][t]`` and ``h1[mu][t]`` are ``(lo, hi)`` pairs.  Weights missing
    from the tables have zero tangent cohomology at every prefix.  The ranges
    are the exact projections of the set of admissible connecting ranks
    (``method == "enumerated"``) or, for very large instances, the cruder
    interval recursion (``method == "interval"``).
    """

    n: int
    word: tuple
    h0: dict
    h1: dict
    infeasible: tuple = ()
    caps: tuple = ()
    method: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.word)

    def h0_at(self, t, mu):
        return self.h0[mu][t] if mu in self.h0 else (0, 0)

    def h1_at(self, t, mu):
        return self.h1[mu][t] if mu in self.h1 else (0, 0)

    def exact(self, t, mu):
        lo0, hi0 = self.h0_at(t, mu)
        lo1, hi1 = self.h1_at(t, mu)
        return lo0 == hi0 and lo1 == hi1

    def weights(self):
        return sorted(self.h0, key=_key)

    def character(self, t, degree):
        """Exact character of ``H^degree(Z_t, T)``, or ``None`` if some weight is not pinned down."""
        table = self.h0 if degree == 0 else self.h1
        data = {}
        for mu, rows in table.items():
            lo, hi = rows[t]
            if lo != hi:
                return None
            if lo:
                data[mu] = lo
        return Character(data)

    def vanishes(self, t, degree):
        table = self.h0 if degree == 0 else self.h1
        return all(rows[t][1] == 0 for rows in table.values())

    def certainly_nonzero(self, t, degree):
        table = self.h0 if degree == 0 else self.h1
        return sorted((mu for mu, rows in table.items() if rows[t][0] >= 1), key=_key)

    def to_json(self, t=None):
        t = len(self.word) if t is None else t
        rows = []
        for mu in self.weights():
            rows.append({
                "weight": cartan.format_weight(mu),
                "h0": list(self.h0_at(t, mu)),
                "h1": list(self.h1_at(t, mu)),
                "exact": self.exact(t, mu),
            })
        return {"n": self.n, "word": list(self.word), "t": t, "caps": list(self.caps),
                "infeasible": [cartan.format_weight(m) for m in self.infeasible], "weights": rows}


def _key(mu):
    return (-cartan.height(mu), tuple(-x for x in mu))


def tangent_bounds(ledger, caps=None):
    """Fold the tangent sequence over the ledger, one weight at a time.

    ``caps`` maps a prefix length ``t`` to ``(label, f)`` where ``f(mu)`` is
    an upper bound for ``dim H^0(Z_t, T)_mu``.  A weight for which no choice
    of connecting ranks respects the caps is reported in ``infeasible``.
    """
    missing = ledger.unknown()
    if missing:
        raise InconclusiveLedger(f"inconclusive ledger: H^1 unknown at prefixes {missing}")
    caps = dict(caps or {})
    N = len(ledger)
    h0, h1, method, infeasible = {}, {}, {}, []
    for mu in sorted(ledger.weights(), key=_key):
        a = [0] + [ledger.a(t, mu) for t in range(1, N + 1)]
        b = [0] + [ledger.b(t, mu) for t in range(1, N + 1)]
        capv = {t: f(mu) for t, (_, f) in caps.items()}
        res = _enumerate(a, b, capv)
        if res is None:
            res = _intervals(a, b, capv)
            method[mu] = "interval"
        else:
            method[mu] = "enumerated"
        if res is False:
            infeasible.append(mu)
            res = _intervals(a, b, {})
        h0[mu], h1[mu] = res
    return TangentBounds(ledger.n, ledger.word, h0, h1, tuple(infeasible),
                         tuple(label for _, (label, _) in sorted(caps.items())), method)


def _enumerate(a, b, caps):
    """Exact ranges over all admissible connecting ranks; ``False`` if none is admissible."""
    N = len(a) - 1
    A = list(itertools.accumulate(a))
    B = list(itertools.accumulate(b))
    events = [t for t in range(1, N + 1) if b[t]]
    size = 1
    for t in events:
        size *= b[t] + 1
    if size > _ENUMERATION_LIMIT:
        return None
    sols = []

    def dfs(k, R, chosen):
        if k == len(events):
            sols.append(tuple(chosen))
            return
        t = events[k]
        before = A[t - 1] - R
        for rho in range(min(b[t], before) + 1):
            chosen.append(rho)
            dfs(k + 1, R + rho, chosen)
            chosen.pop()

    dfs(0, 0, [])
    lo_R = [None] * (N + 1)
    hi_R = [None] * (N + 1)
    admissible = False
    for sol in sols:
        R = [0] * (N + 1)
        acc, k = 0, 0
        for t in range(1, N + 1):
            if k < len(events) and events[k] == t:
                acc += sol[k]
                k += 1
            R[t] = acc
        if any(A[t] - R[t] > cap for t, cap in caps.items()):
            continue
        admissible = True
        for t in range(N + 1):
            lo_R[t] = R[t] if lo_R[t] is None else min(lo_R[t], R[t])
            hi_R[t] = R[t] if hi_R[t] is None else max(hi_R[t], R[t])
    if not admissible:
        return False
    h0 = tuple((A[t] - hi_R[t], A[t] - lo_R[t]) for t in range(N + 1))
    h1 = tuple((B[t] - hi_R[t], B[t] - lo_R[t]) for t in range(N + 1))
    return h0, h1


def _intervals(a, b, caps):
    """Step-by-step interval recursion; caps only clip the upper ends."""
    p, q = (0, 0), (0, 0)
    h0, h1 = [p], [q]
    for t in range(1, len(a)):
        rho_hi = min(b[t], p[1])
        p_new = (a[t] + p[0] - min(b[t], p[0]), a[t] + p[1])
        q_new = (q[0] + b[t] - rho_hi, q[1] + b[t])
        if t in caps:
            p_new = (min(p_new[0], caps[t]), min(p_new[1], caps[t]))
        p, q = p_new, q_new
        h0.append(p)
        h1.append(q)
    return tuple(h0), tuple(h1)


# ---------------------------------------------------------------------------
# Parabolic subalgebras


def parabolic_character(n, subset):
    """Character of ``b + sum of g_beta`` over positive roots ``beta`` in the span of ``subset``."""
    R = cartan.build(n)
    data = {R.zero: n}
    for beta in R.negative_roots:
        data[beta] = 1
    subset = set(subset)
    for beta in R.positive_roots:
        coeffs = cartan.to_simple(beta)
        if all(c == 0 or (j + 1) in subset for j, c in enumerate(coeffs)):
            data[beta] = 1
    return Character(data)


def find_parabolic(ch, n):
    """Smallest simple-root subset ``I`` with ``ch == ch p_I``, or ``None``."""
    for size in range(n + 1):
        for subset in itertools.combinations(range(1, n + 1), size):
            if parabolic_character(n, subset) == ch:
                return subset
    return None


# ---------------------------------------------------------------------------
# Reports


@dataclass
class LemmaCheck:
    id: str
    instance: dict
    status: str
    witnesses: tuple = ()
    detail: str = ""
    load_bearing: bool = False

    def to_json(self):
        return {
            "id": self.id,
            "instance": self.instance,
            "status": self.status,
            "witnesses": [cartan.format_weight(w) for w in self.witnesses],
            "detail": self.detail,
            "load_bearing": self.load_bearing,
        }


@dataclass
class VerdictReport:
    n: int
    shape: tuple
    lemmas: list
    verdict: str
    trusted: list
    branch: str = ""
    wall_time_ms: float = None

    def failed(self):
        return [c for c in self.lemmas if c.status == "failed"]

    def inconclusive(self):
        return [c for c in self.lemmas if c.status == "inconclusive"]

    def to_json(self, timing=False):
        return {
            "n": self.n,
            "shape": list(self.shape),
            "lemmas": [c.to_json() for c in self.lemmas],
            "verdict": self.verdict,
            "branch": self.branch,
            "trusted": list(self.trusted),
            "wall_time_ms": round(self.wall_time_ms, 3) if timing and self.wall_time_ms is not None else None,
        }


def predicate(n, shape):
    """Closed-form vanishing condition on the block starts of the shape."""
    a = weyl.validate_shape(shape, n)
    a2 = a[1] if len(a) > 1 else 0
    return a[0] != n - 1 and a2 <= n - 2


# ---------------------------------------------------------------------------
# Weight families appearing in the statements


def _from_simple(n, coeffs):
    vec = [0] * n
    for j, c in coeffs.items():
        vec[j - 1] += c
    return cartan.from_simple(vec)


def _tail(n, t):
    """``-(alpha_t + ... + alpha_n)``."""
    return cartan.neg(_from_simple(n, {j: 1 for j in range(t, n + 1)}))


def _long(n, t):
    """``-(alpha_n + 2(alpha_t + ... + alpha_{n-1}))``."""
    coeffs = {j: 2 for j in range(t, n)}
    coeffs[n] = 1
    return cartan.neg(_from_simple(n, coeffs))


def _mixed(n, t1, t2):
    """``-(alpha_n + 2(alpha_{t1} + ... + alpha_{n-1}) + alpha_{t2} + ... + alpha_{t1-1})``."""
    coeffs = {j: 2 for j in range(t1, n)}
    coeffs[n] = 1
    for j in range(t2, t1):
        coeffs[j] = coeffs.get(j, 0) + 1
    return cartan.neg(_from_simple(n, coeffs))


def _act_word(word, lam, n):
    return weyl.act(weyl.from_word(word, n), lam) if word else lam


def _double_interval(n, t1, t2):
    """``(s_{t1} ... s_n)(s_{t2} ... s_{n-1})(alpha_{n-1})``."""
    R = cartan.build(n)
    return _act_word(weyl.interval(t1, n) + weyl.interval(t2, n - 1), R.alpha(n - 1), n)


def _short_nonsimple_negative(n):
    R = cartan.build(n)
    simple = {cartan.neg(R.alpha(i)) for i in range(1, n + 1)}
    return {b for b in R.negative_roots if b in set(R.short_roots())} - simple


# ---------------------------------------------------------------------------
# Lemma suite


class _Context:
    """Shared computations for one ``(n, shape)``."""

    def __init__(self, n, shape):
        self.n = n
        self.shape = weyl.validate_shape(shape, n)
        self.k = len(self.shape)
        self.R = cartan.build(n)
        self.A = (n + 1,) + self.shape  # A[r] = a_r, A[0] = n + 1
        self.named = {r: weyl.named_words(self.shape, r, n) for r in range(1, self.k + 1)}
        self.word = weyl.theorem_word(self.shape, n)
        self._ledger = None
        self._bounds = None
        self._memo = {}
        # u_1 = w_k [a_k, n] is a prefix of the theorem word only when k < n
        self.has_u1 = self.k < n

    def a(self, r):
        return self.A[r]

    def tail_ok(self, r):
        """The block ``[a_r, n]`` satisfies the hypothesis ``a_r <= n - 2`` of the H^1 statements."""
        return self.A[r] <= self.n - 2

    def w(self, r):
        return self.named[r].w_r if r >= 1 else ()

    def tau(self, r):
        return self.named[r].tau_r

    @property
    def u1(self):
        return self.named[1].u1

    @property
    def u1p(self):
        return self.named[1].u1_prime

    def u(self, j):
        return self.w(self.k) + weyl.interval(self.A[self.k], self.n) * j

    def coh(self, word, V, jmax=1):
        key = (tuple(word), V.key(), jmax)
        if key not in self._memo:
            self._memo[key] = word_cohomology(word, V, jmax)
        return self._memo[key]

    def alpha(self, i):
        return line(self.R.alpha(i))

    def h0(self, word, V):
        return self.coh(word, V).h0.character()

    def h1(self, word, V):
        """Character of H^1, or ``None`` when it could not be certified."""
        s = self.coh(word, V).h1
        return s.character() if s.known else None

    @property
    def ledger(self):
        if self._ledger is None:
            self._ledger = relative_ledger(self.word, self.n, jmax=2)
        return self._ledger

    @property
    def bounds(self):
        if self._bounds is None:
            N = len(self.word)
            self._bounds = tangent_bounds(self.ledger, {N: ("parabolic-h0", parabolic_cap(self.n))})
        return self._bounds

    def M(self, r):
        """Support of H^1(w_r, alpha_n) for r >= 1, of H^1(u_1, alpha_n) for r = 0."""
        word = self.u1 if r == 0 else self.w(r)
        ch = self.h1(word, self.alpha(self.n))
        return None if ch is None else set(ch.support())


def _sorted(ws):
    return tuple(sorted(ws, key=_key))


def _support_check(cid, instance, ch, expected, mult_one=False, load_bearing=False):
    if ch is None:
        return LemmaCheck(cid, instance, "inconclusive", (), "H^1 not certified", load_bearing)
    got = set(ch.support())
    expected = set(expected)
    if got != expected:
        diff = got ^ expected
        return LemmaCheck(cid, instance, "failed", _sorted(diff),
                          f"support differs: engine has {len(got)} weights, statement {len(expected)}",
                          load_bearing)
    if mult_one and any(m != 1 for _, m in ch.items()):
        bad = [mu for mu, m in ch.items() if m != 1]
        return LemmaCheck(cid, instance, "failed", _sorted(bad), "multiplicity above one", load_bearing)
    return LemmaCheck(cid, instance, "verified", _sorted(expected), "", load_bearing)


def _subset_check(cid, instance, got, allowed, load_bearing=False):
    if got is None:
        return LemmaCheck(cid, instance, "inconclusive", (), "H^1 not certified", load_bearing)
    extra = set(got) - set(allowed)
    if extra:
        return LemmaCheck(cid, instance, "failed", _sorted(extra), "weights outside the allowed set", load_bearing)
    return LemmaCheck(cid, instance, "verified", _sorted(got), "", load_bearing)


def _h0_interval_checks(ctx):
    n, R = ctx.n, ctx.R
    out = []
    an1 = R.alpha(n - 1)
    for j in range(1, n - 1):
        base = {_act_word(weyl.interval(t, n - 1), an1, n) for t in range(j, n)}
        word = weyl.interval(j, n - 1)
        out.append(_support_check("h0-interval-support", {"j": j, "word": list(word)},
                                  ctx.h0(word, ctx.alpha(n - 1)), base | {R.zero}))
        with_sn = base | {_act_word((n,), mu, n) for mu in base}
        word = (n,) + weyl.interval(j, n - 1)
        out.append(_support_check("h0-interval-with-sn-support", {"j": j, "word": list(word)},
                                  ctx.h0(word, ctx.alpha(n - 1)), with_sn | {R.zero}))
    for a1 in range(2, n):
        for a2 in range(1, a1):
            # with a1 = n the word is s_n followed by one interval, covered above
            word = weyl.interval(a1, n) + weyl.interval(a2, n - 1)
            expected = {_act_word(weyl.interval(t, n) + weyl.interval(j, n - 1), an1, n)
                        for j in range(a2, n) for t in range(a1, n + 1) if t > j}
            out.append(_support_check("h0-two-block-support", {"a1": a1, "a2": a2, "word": list(word)},
                                      ctx.h0(word, ctx.alpha(n - 1)), expected))
    return out


def _tau_checks(ctx):
    n, out = ctx.n, []
    for r in range(3, ctx.k + 1):
        expected = {_double_interval(n, t1, t2)
                    for t1 in range(ctx.a(r - 1), ctx.a(r - 2))
                    for t2 in range(ctx.a(r), t1)}
        out.append(_support_check("tau-h0-support", {"r": r, "word": list(ctx.tau(r))},
                                  ctx.h0(ctx.tau(r), ctx.alpha(n - 1)), expected, mult_one=True))
        out.append(_cyclic_check(ctx, r))
    expected = {_double_interval(n, t1, t2)
                for t1 in range(ctx.a(ctx.k) + 1, ctx.a(ctx.k - 1))
                for t2 in range(ctx.a(ctx.k), t1)}
    out.append(_support_check("u1-prime-h0-support", {"word": list(ctx.u1p)},
                              ctx.h0(ctx.u1p, ctx.alpha(n - 1)), expected, mult_one=True))
    return out


def _cyclic_check(ctx, r):
    """The module H^0(tau_r, alpha_{n-1}) is generated by its highest weight vector."""
    from .bmod import is_cyclic
    n = ctx.n
    M = ctx.coh(ctx.tau(r), ctx.alpha(n - 1)).h0
    top = ctx.a(r - 2) - 1
    gen = _double_interval(n, top, top - 1)
    inst = {"r": r, "word": list(ctx.tau(r)), "generator": cartan.format_weight(gen)}
    if M.character()[gen] != 1:
        return LemmaCheck("tau-h0-cyclic", inst, "failed", (gen,), "generator weight not a weight of the module")
    ok = is_cyclic(M, gen)
    return LemmaCheck("tau-h0-cyclic", inst, "verified" if ok else "failed", (gen,))


def _kernel_checks(ctx):
    """Pushforwards of the two-dimensional module spanned by h(alpha_n) and e_{-alpha_n}."""
    from .bmod import is_cyclic
    n, R, out = ctx.n, ctx.R, []
    K = k1(n)
    for r in range(1, ctx.k + 1):
        ar = ctx.a(r)
        longs = {_long(n, t) for t in range(ar, n)}
        mixed = {_mixed(n, t1, t2) for t1 in range(ar + 1, n) for t2 in range(ar, t1)}
        vp_word = weyl.interval(ar, n - 1)
        Vp = h0_word(vp_word, K)
        expected = {R.zero, cartan.neg(R.alpha(n))} | {_tail(n, t) for t in range(ar, n)} | longs | mixed
        check = _support_check("kernel-h0-support", {"r": r, "word": list(vp_word)},
                               Vp.character(), expected, mult_one=True)
        if check.status == "verified" and not is_cyclic(Vp, R.zero):
            check = LemmaCheck(check.id, check.instance, "failed", (R.zero,), "not generated by h(alpha_n)")
        out.append(check)
        v_word = (n,) + vp_word
        out.append(_support_check("kernel-h0-sn-support", {"r": r, "word": list(v_word)},
                                  h0_word(v_word, K).character(), longs | mixed, mult_one=True))
    for r in range(2, ctx.k + 1):
        ar, ap = ctx.a(r), ctx.a(r - 1)
        V = h0_word((n,) + weyl.interval(ar, n - 1), K)
        word = weyl.interval(ap, n - 1)
        expected = ({_long(n, t) for t in range(ar, ap)}
                    | {_mixed(n, t1, t2) for t1 in range(ar + 1, ap) for t2 in range(ar, t1)})
        out.append(_support_check("kernel-chain-h0-support", {"r": r, "word": list(word)},
                                  h0_word(word, V).character() if word else V.character(), expected))
        expected = ({_tail(n, t) for t in range(ap, n)}
                    | {_mixed(n, t1, t2) for t1 in range(ap + 1, n) for t2 in range(ap, t1)})
        got = ctx.h1(word, V) if word else Character()
        out.append(_support_check("kernel-chain-h1-support", {"r": r, "word": list(word)}, got, expected))
    return out


def _w_r_checks(ctx):
    n, out = ctx.n, []
    an = ctx.alpha(n)
    for r in range(2, ctx.k + 1):
        ar, ap = ctx.a(r), ctx.a(r - 1)
        expected = ({_long(n, t) for t in range(ar, ap)}
                    | {_mixed(n, t1, t2) for t1 in range(ar + 1, ap) for t2 in range(ar, t1)})
        out.append(_support_check("w_r-h0-support", {"r": r, "word": list(ctx.w(r))},
                                  ctx.h0(ctx.w(r), an), expected, mult_one=True))
    for r in range(3, ctx.k + 1):
        if not ctx.tail_ok(r):
            continue
        expected = {_double_interval(n, t1, t2)
                    for t1 in range(ctx.a(r - 1) + 1, ctx.a(r - 2))
                    for t2 in range(ctx.a(r - 1), t1)}
        out.append(_support_check("w_r-h1-support", {"r": r, "word": list(ctx.w(r))},
                                  ctx.h1(ctx.w(r), an), expected, mult_one=True))
    for r in range(2, ctx.k + 1):
        if not ctx.tail_ok(r):
            continue
        ap = ctx.a(r - 1)
        word = weyl.interval(ap, n) + weyl.interval(ctx.a(r), n)
        expected = ({_tail(n, t) for t in range(ap, n)}
                    | {_mixed(n, t1, t2) for t1 in range(ap + 1, n) for t2 in range(ap, t1)})
        out.append(_support_check("two-block-h1-support", {"r": r, "word": list(word)},
                                  ctx.h1(word, an), expected))
    for r in range(3, ctx.k + 1):
        if not ctx.tail_ok(r):
            continue
        ap, app = ctx.a(r - 1), ctx.a(r - 2)
        word = weyl.interval(app, n) + weyl.interval(ap, n) + weyl.interval(ctx.a(r), n)
        expected = {_mixed(n, t1, t2) for t1 in range(ap + 1, app) for t2 in range(ap, t1)}
        out.append(_support_check("three-block-h1-support", {"r": r, "word": list(word)},
                                  ctx.h1(word, an), expected))
    return out


def _h1_support_checks(ctx):
    """H^1 of alpha_n along w_r and of the submodules of g' stays on short non-simple negative roots."""
    from .bmod import gprime, k2
    n, out = ctx.n, []
    allowed = _short_nonsimple_negative(n)
    an = ctx.alpha(n)
    K = k1(n)
    for r in range(1, ctx.k + 1):
        ar = ctx.a(r)
        if ar > n - 2:
            continue
        w = ctx.w(r)
        inst = {"r": r, "word": list(w)}
        if r == 1:
            out.append(_support_check("alpha-n-block-h1-vanishing", inst, ctx.h1(w, an), set()))
        shorter = w[:-1]
        wc = ctx.coh(shorter, an, jmax=2)
        bad = [j for j in range(3) if not wc.degree(j).known or not wc.degree(j).is_zero()]
        out.append(LemmaCheck("alpha-n-drop-last-vanishing", {"r": r, "word": list(shorter)},
                              "failed" if bad else "verified", (), f"nonzero degrees {bad}" if bad else ""))
        lhs, rhs = ctx.h1(w, an), ctx.h1(shorter, K)
        if lhs is None or rhs is None:
            status = "inconclusive"
        else:
            status = "verified" if lhs == rhs else "failed"
        out.append(LemmaCheck("alpha-n-kernel-h1-equality", inst, status,
                              _sorted(lhs.support()) if lhs else ()))
        h1 = ctx.h1(w, an)
        out.append(_subset_check("alpha-n-h1-short-support", inst, None if h1 is None else h1.support(), allowed))
    targets = [("w", r, ctx.w(r)) for r in range(1, ctx.k + 1)]
    if ctx.has_u1:
        targets.append(("u1", 0, ctx.u1))
    for module_name, V in (("gprime", gprime(n)), ("k2", k2(n))):
        for label, r, word in targets:
            ch = ctx.h1(word, V)
            out.append(_subset_check("gprime-h1-short-support",
                                     {"module": module_name, "word": list(word)},
                                     None if ch is None else ch.support(), allowed))
    return out


def _implication_checks(ctx):
    n, out = ctx.n, []
    an, an1 = ctx.alpha(n), ctx.alpha(n - 1)
    for r in range(2, ctx.k + 1):
        if not ctx.tail_ok(r):
            continue
        M = ctx.M(r)
        tau_supp = set(ctx.h0(ctx.tau(r), an1).support())
        prev_supp = set(ctx.h0(ctx.w(r - 1), an).support())
        inst = {"r": r}
        out.append(_subset_check("h1-inside-tau-h0", inst, M, tau_supp))
        out.append(_subset_check("h1-inside-previous-h0", inst, M, prev_supp))
    lhs, rhs = (ctx.h1(ctx.u1, an), ctx.h0(ctx.u1p, an1)) if ctx.has_u1 else (None, None)
    if not ctx.has_u1:
        pass
    elif lhs is None:
        out.append(LemmaCheck("u1-h1-equals-h0", {"word": list(ctx.u1)}, "inconclusive", (), ""))
    else:
        out.append(LemmaCheck("u1-h1-equals-h0", {"word": list(ctx.u1)},
                              "verified" if lhs == rhs else "failed",
                              _sorted(lhs.support()) if lhs == rhs else _sorted(set(lhs.support()) ^ set(rhs.support())),
                              ""))
    sets = {r: ctx.M(r) for r in range(0 if ctx.has_u1 else 1, ctx.k + 1)}
    if any(s is None for s in sets.values()):
        out.append(LemmaCheck("mr-disjoint", {"k": ctx.k}, "inconclusive", (), ""))
    else:
        clash = set()
        for r, s in sets.items():
            for q, t in sets.items():
                if r < q:
                    clash |= s & t
        out.append(LemmaCheck("mr-disjoint", {"k": ctx.k}, "failed" if clash else "verified",
                              _sorted(clash), ""))
    return out


def _power_checks(ctx):
    n, out = ctx.n, []
    an = ctx.alpha(n)
    c_std = weyl.interval(1, n)
    for j in range(2, n - ctx.k + 1):
        word = ctx.u(j)
        u = ctx.w(ctx.k - 1)
        inst = {"j": j, "word": list(word)}
        ok_shape = (word == u + c_std * (j + 1) and weyl.is_reduced(word, n))
        if not ok_shape:
            out.append(LemmaCheck("coxeter-power-vanishing", inst, "failed", (),
                                  "prefix is not u followed by a power of s_1...s_n"))
            continue
        wc = ctx.coh(word, an, jmax=2)
        bad = [d for d in range(3) if not wc.degree(d).known or not wc.degree(d).is_zero()]
        out.append(LemmaCheck("coxeter-power-vanishing", inst, "failed" if bad else "verified", (),
                              f"nonzero degrees {bad}" if bad else ""))
    return out


def _tangent_checks(ctx):
    """Dimension statements about H^0 of the tangent bundle on u_1, u_1' and tau_r."""
    n, R, out = ctx.n, ctx.R, []
    L, B = ctx.ledger, ctx.bounds
    N = len(ctx.word)
    prefixes = {"u1": ctx.u1, "u1'": ctx.u1p} if ctx.has_u1 else {}
    prefixes.update({f"tau{r}": ctx.tau(r) for r in range(1, ctx.k + 1)})
    prefixes.update({f"w{r}": ctx.w(r) for r in range(1, ctx.k + 1)})
    pos = {}
    for name, word in prefixes.items():
        if ctx.word[:len(word)] != word:
            out.append(LemmaCheck("prefix-bookkeeping", {"prefix": name}, "failed", (),
                                  "named word is not a prefix of the theorem word"))
            return out
        pos[name] = len(word)
    out.append(LemmaCheck("prefix-bookkeeping", {"prefixes": sorted(prefixes)}, "verified", (), ""))
    weights = [mu for mu in B.weights() if mu != R.zero]
    t1 = pos["tau1"]
    in_levi = n not in ctx.tau(1)
    vanish = all(not L.entry(t).h1_char for t in range(1, t1 + 1)) and B.vanishes(t1, 1)
    out.append(LemmaCheck("tau1-terminal-vanishing", {"t": t1, "word": list(ctx.tau(1))},
                          "verified" if in_levi and vanish else "failed"))
    if not ctx.has_u1:
        return out
    t_u1, t_u1p = pos["u1"], pos["u1'"]
    over = [mu for mu in weights if B.h0_at(t_u1, mu)[1] > 1]
    out.append(LemmaCheck("tangent-u1-cap", {"t": t_u1}, "failed" if over else "verified",
                          _sorted(over), ""))
    M0 = {mu for mu in weights if L.b(t_u1, mu)}
    bad1 = [mu for mu in weights if mu not in M0 and B.h0_at(t_u1p, mu)[1] > 1]
    bad2 = [mu for mu in M0 if B.h0_at(t_u1p, mu) != (2, 2)]
    out.append(LemmaCheck("tangent-u1-prime-cap", {"t": t_u1p}, "failed" if bad1 else "verified",
                          _sorted(bad1), ""))
    out.append(LemmaCheck("tangent-u1-prime-two", {"t": t_u1p}, "failed" if bad2 else "verified",
                          _sorted(bad2 if bad2 else M0), ""))
    for r in range(2, ctx.k + 1):
        t_tau = pos[f"tau{r}"]
        Mr = {mu for mu in weights if L.b(pos[f"w{r}"], mu)}
        quiet = [mu for mu in weights
                 if not L.b(t_u1, mu) and all(not L.b(pos[f"w{m}"], mu) for m in range(r, ctx.k + 1))]
        bad1 = [mu for mu in quiet if B.h0_at(t_tau, mu)[1] > 1]
        bad2 = [mu for mu in Mr if B.h0_at(t_tau, mu) != (2, 2)] if ctx.tail_ok(r) else []
        out.append(LemmaCheck("tangent-tau-cap", {"r": r, "t": t_tau}, "failed" if bad1 else "verified",
                              _sorted(bad1), ""))
        out.append(LemmaCheck("tangent-tau-two", {"r": r, "t": t_tau}, "failed" if bad2 else "verified",
                              _sorted(bad2 if bad2 else Mr), ""))
    return out


def lemma_suite(n, shape, _ctx=None):
    """Check every support, dimension and vanishing statement for ``(n, shape)``."""
    if n < 3:
        raise ValueError("rank unsupported")
    ctx = _ctx or _Context(n, shape)
    checks = []
    checks += _h0_interval_checks(ctx)
    checks += _tau_checks(ctx)
    checks += _kernel_checks(ctx)
    checks += _w_r_checks(ctx)
    checks += _h1_support_checks(ctx)
    checks += _implication_checks(ctx)
    checks += _power_checks(ctx)
    checks += _tangent_checks(ctx)
    return checks


# ---------------------------------------------------------------------------
# Verdict


def _trusted_entries(ctx, branch):
    L = ctx.ledger
    higher = all(e.higher_ok() for e in L.entries)
    hyp = "H^2 of every relative line bundle verified zero" if higher else "H^2 vanishing not verified"
    out = [
        LemmaCheck("les-exactness", {}, "trusted-structural", (), hyp),
        LemmaCheck("peel-ses", {}, "trusted-structural", (), "character identities re-checked by the oracle suite"),
        LemmaCheck("surjection-to-prefix", {}, "trusted-structural", (), hyp),
        LemmaCheck("commutation-invariance", {}, "trusted-structural", (),
                   "theorem word and n-fold Coxeter word are commutation equivalent"),
    ]
    if branch == "vanishing":
        out += [
            LemmaCheck("parabolic-h0", {}, "trusted-structural", (), "used as the cap at the last prefix"),
            LemmaCheck("levi-tail-isomorphism", {}, "trusted-structural", (),
                       "H^1 vanishes for every prefix after u_1 and up to tau_1"),
            LemmaCheck("parabolic-reduction", {}, "trusted-structural", (),
                       "u_1^{-1} sends the highest root to a negative root"),
        ]
    return out


def _ledger_checks(ctx):
    L = ctx.ledger
    out = []
    unknown = L.unknown()
    out.append(LemmaCheck("ledger-certified", {"prefixes": len(L)}, "inconclusive" if unknown else "verified",
                          (), f"H^1 unknown at {unknown}" if unknown else ""))
    bad = [e.t for e in L.entries if not e.higher_ok()]
    out.append(LemmaCheck("higher-vanishing", {"prefixes": len(L), "degrees": [2]},
                          "failed" if bad else "verified", (), f"prefixes {bad}" if bad else ""))
    c_word = weyl.shape_to_word(ctx.shape, ctx.n) * ctx.n
    same = weyl.comm_class_eq(ctx.word, c_word, ctx.n)
    out.append(LemmaCheck("commutation-class", {"word": list(c_word)}, "verified" if same else "failed",
                          (), ""))
    return out


def _vanishing_checks(ctx):
    n, R = ctx.n, ctx.R
    L, B = ctx.ledger, ctx.bounds
    N = len(ctx.word)
    out = []
    t_u1 = len(ctx.u1)
    tail = [t for t in range(t_u1 + 1, N + 1) if L.entry(t).h1_char]
    out.append(LemmaCheck("tail-h1-vanishing", {"from": t_u1 + 1, "to": N},
                          "failed" if tail else "verified", (), f"prefixes {tail}" if tail else ""))
    u1 = weyl.from_word(ctx.u1, n)
    image = weyl.act(u1.inverse(), R.highest_root)
    out.append(LemmaCheck("u1-inverts-highest-root", {"word": list(ctx.u1)},
                          "verified" if not cartan.is_positive_root(image) else "failed", (image,), ""))
    out.append(LemmaCheck("cap-consistency", {"t": N}, "failed" if B.infeasible else "verified",
                          _sorted(B.infeasible), ""))
    ch = B.character(N, 0)
    lowest = cartan.neg(R.highest_root)
    if ch is None:
        out.append(LemmaCheck("parabolic-collapse", {"t": N}, "failed", (), "H^0 bounds are not exact"))
    else:
        subset = find_parabolic(ch, n)
        ok = subset is not None and ch[lowest] == 1
        out.append(LemmaCheck("parabolic-collapse", {"t": N, "subset": list(subset) if subset else None},
                              "verified" if ok else "failed", (lowest,), f"dim {ch.dim}"))
    left = [mu for mu in B.weights() if B.h1_at(N, mu)[1]]
    out.append(LemmaCheck("final-h1-bounds", {"t": N}, "failed" if left else "verified",
                          _sorted(left), "H^1 collapses to zero" if not left else ""))
    return out


def _nonvanishing_checks(ctx):
    n, R = ctx.n, ctx.R
    B = ctx.bounds
    N = len(ctx.word)
    out = []
    a = ctx.shape
    an, an1 = R.alpha(n), R.alpha(n - 1)
    if a[0] == n - 1:
        word = (n - 1, n)
        target = cartan.add(an, an1)
        h1 = ctx.h1(word, line(an))
        h0 = ctx.h0((n - 1,), line(an1))
        t = 2
        ok = (h1 == Character({target: 1}) and h0[target] == 0
              and ctx.word[:2] == word and B.h1_at(t, target)[0] >= 1)
        out.append(LemmaCheck("first-block-witness", {"word": list(word)}, "verified" if ok else "failed",
                              (target,), ""))
    if len(a) > 1 and a[1] == n - 1:
        c = weyl.shape_to_word(a, n)
        word = c + (n,)
        h1 = ctx.h1((n, n - 1, n), line(an))
        cl = relative_ledger(word, n)
        cb = tangent_bounds(cl)
        ok = (h1 is not None and h1[an1] == 1 and weyl.is_reduced(word, n)
              and cb.h0_at(n, an1) == (0, 0) and cb.h1_at(n + 1, an1)[0] >= 1)
        out.append(LemmaCheck("second-block-witness", {"word": list(word)}, "verified" if ok else "failed",
                              (an1,), "H^1 of (n, n-1, n) contains alpha_{n-1}"))
    hit = B.certainly_nonzero(N, 1)
    out.append(LemmaCheck("final-h1-bounds", {"t": N}, "verified" if hit else "failed", tuple(hit),
                          "some weight of H^1 has lower bound at least one"))
    return out


def theorem_verdict(n, shape):
    """Vanishing verdict for H^1 of the tangent bundle of Z(w_0, i) for one Coxeter shape."""
    if n < 3:
        raise ValueError("rank unsupported")
    start = time.perf_counter()
    ctx = _Context(n, shape)
    checks = _ledger_checks(ctx)
    if any(c.status != "verified" for c in checks if c.id == "ledger-certified"):
        elapsed = (time.perf_counter() - start) * 1000
        return VerdictReport(n, ctx.shape, checks, "inconclusive", [], "none", elapsed)
    checks += lemma_suite(n, shape, ctx)
    B = ctx.bounds
    N = len(ctx.word)
    if B.vanishes(N, 1):
        branch = "vanishing"
        checks += _vanishing_checks(ctx)
        target = "H1-vanishes"
    elif B.certainly_nonzero(N, 1):
        branch = "nonvanishing"
        checks += _nonvanishing_checks(ctx)
        target = "H1-nonzero"
    else:
        branch = "undecided"
        target = "inconclusive"
    checks += _trusted_entries(ctx, branch)
    for c in checks:
        c.load_bearing = c.id in LOAD_BEARING.get(branch, ())
    bearing = [c for c in checks if c.load_bearing]
    if all(c.status == "verified" for c in bearing):
        verdict = target
    else:
        verdict = "inconclusive"
    trusted = sorted(c.id for c in checks if c.status == "trusted-structural")
    elapsed = (time.perf_counter() - start) * 1000
    return VerdictReport(n, ctx.shape, checks, verdict, trusted, branch, elapsed)


# ---------------------------------------------------------------------------
# Commutation invariance


def commutation_invariance_check(word1, word2, n):
    """Compare ledger characters and tangent bounds of two commutation-equivalent words."""
    word1, word2 = tuple(word1), tuple(word2)
    if not weyl.comm_class_eq(word1, word2, n):
        raise ValueError("words not commutation-equivalent")
    L1, L2 = relative_ledger(word1, n), relative_ledger(word2, n)
    B1, B2 = tangent_bounds(L1), tangent_bounds(L2)
    N = len(word1)
    weights = set(B1.h0) | set(B2.h0)
    diff = sorted((mu for mu in weights
                   if B1.h0_at(N, mu) != B2.h0_at(N, mu) or B1.h1_at(N, mu) != B2.h1_at(N, mu)), key=_key)
    total = Character()
    for L in (L1, L2):
        ch = Character()
        for e in L.entries:
            ch = ch + e.h0_char - e.h1_char
        total = ch - total
    return {
        "word1": list(word1),
        "word2": list(word2),
        "agree": not diff,
        "differing_weights": [cartan.format_weight(m) for m in diff],
        "euler_difference": total.to_json(),
    }
