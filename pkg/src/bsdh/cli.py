"""Command line front end: verdict matrices, statement checks, cohomology queries and oracles."""

import argparse
import json
import random
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from . import __version__, cartan, coh, ledger, weyl
from .bmod import Character, adjoint, direct_sum, gprime, k1, line

EXIT_OK = 0
EXIT_FAILED = 2
EXIT_INCONCLUSIVE = 3
EXIT_USAGE = 64
EXIT_DATA = 65

THEOREM_RANKS = (3, 6)
QUERY_RANKS = (2, 8)

WEIGHT_GRAMMAR = """\
weight literals:
  weight  ::= "0" | [sign] term { sign term }
  term    ::= [digits] ("a" | "w") index
  sign    ::= "+" | "-"
  a<k> is the simple root alpha_k, w<k> the fundamental weight omega_k.
  examples: a3, -a3-2a2, w1+a2, 2w2

module specs:
  line:<weight> | k1 | adjoint | gprime
"""


class UsageError(Exception):
    pass


class ArgParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


@dataclass
class RunConfig:
    command: str
    n: list
    shape: object = "all"
    lemma: list = field(default_factory=list)
    format: str = "text"
    out: str = None
    jobs: int = 1
    seed: int = 0
    samples: int = 200
    word: list = None
    module: str = None
    degree: int = 1
    timing: bool = False

    def to_json(self):
        """The recorded configuration; output path and parallelism do not affect results."""
        d = asdict(self)
        d.pop("out")
        d.pop("jobs")
        return d


# ---------------------------------------------------------------------------
# parsing


_TERM = re.compile(r"([+-]?)(\d*)([aw])(\d+)")
_WEIGHT = re.compile(r"[+-]?\d*[aw]\d+([+-]\d*[aw]\d+)*")


def parse_weight(text, n):
    text = text.replace(" ", "")
    if text == "0":
        return cartan.build(n).zero
    if not _WEIGHT.fullmatch(text):
        raise UsageError(f"malformed weight {text!r}")
    rs = cartan.build(n)
    lam = rs.zero
    for sign, coeff, kind, index in _TERM.findall(text):
        k = int(index)
        if not 1 <= k <= n:
            raise UsageError(f"index {k} out of range in weight {text!r}")
        c = int(coeff) if coeff else 1
        if sign == "-":
            c = -c
        base = rs.alpha(k) if kind == "a" else rs.omega(k)
        lam = cartan.add(lam, cartan.scale(c, base))
    return lam


def parse_module(text, n):
    if text.startswith("line:"):
        return line(parse_weight(text[len("line:"):], n))
    makers = {"k1": k1, "adjoint": adjoint, "gprime": gprime}
    if text not in makers:
        raise UsageError(f"unknown module {text!r}")
    return makers[text](n)


def parse_ints(text, what):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"malformed {what} {text!r}") from None


def parse_ranks(text, bounds):
    lo, hi = bounds
    try:
        if "-" in text:
            a, b = text.split("-", 1)
            ranks = list(range(int(a), int(b) + 1))
        else:
            ranks = parse_ints(text, "rank")
    except ValueError:
        raise UsageError(f"malformed rank {text!r}") from None
    if not ranks:
        raise UsageError("empty rank range")
    bad = [r for r in ranks if not lo <= r <= hi]
    if bad:
        raise UsageError(f"rank {bad[0]} outside supported range {lo}..{hi}")
    return ranks


def _work_items(config):
    items = []
    for n in config.n:
        if config.shape == "all":
            shapes = weyl.coxeter_shapes(n)
        else:
            try:
                shapes = [weyl.validate_shape(tuple(config.shape), n)]
            except ValueError as exc:
                raise UsageError(f"invalid shape {config.shape} for rank {n}: {exc}") from None
        items.extend((n, tuple(s)) for s in shapes)
    return items


def _map(fn, items, jobs):
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


# ---------------------------------------------------------------------------
# output


def envelope(config, results, **extra):
    twists = {}
    for n in sorted(set(config.n)):
        twists[str(n)] = coh.duality_twist(n)
    out = {
        "tool_version": __version__,
        "config": config.to_json(),
        "duality_twist": twists,
        "trust_annotations": dict(sorted(ledger.TRUSTED.items())),
        "results": results,
    }
    out.update(extra)
    return out


def emit(config, payload, text):
    if config.format == "json":
        body = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        body = text if text.endswith("\n") else text + "\n"
    if config.out:
        with open(config.out, "w") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)


def _shape_text(shape):
    return "(" + ",".join(str(a) for a in shape) + ")"


def _char_text(ch):
    if not ch:
        return "0"
    return "{" + ", ".join(f"{cartan.format_weight(mu)}: {m}" for mu, m in ch.items()) + "}"


def _exit_for(reports):
    if any(r.failed() for r in reports):
        return EXIT_FAILED
    if any(r.inconclusive() or r.verdict == "inconclusive" for r in reports):
        return EXIT_INCONCLUSIVE
    return EXIT_OK


# ---------------------------------------------------------------------------
# commands


def _verdict_item(item):
    return ledger.theorem_verdict(*item)


def cmd_theorem(config):
    items = _work_items(config)
    reports = _map(_verdict_item, items, config.jobs)
    rows, mismatch = [], False
    for rep in reports:
        expected = "H1-vanishes" if ledger.predicate(rep.n, rep.shape) else "H1-nonzero"
        agrees = rep.verdict == expected
        mismatch |= rep.verdict != "inconclusive" and not agrees
        row = rep.to_json(timing=config.timing)
        row["predicate"] = expected
        row["matches_predicate"] = agrees
        rows.append((rep, row))
    lines = [f"{'n':>2}  {'shape':<14} {'verdict':<13} {'predicate':<13} {'match':<5} "
             f"{'checks':>6} {'failed':>6} {'inconcl':>7}"]
    for rep, row in rows:
        lines.append(f"{rep.n:>2}  {_shape_text(rep.shape):<14} {rep.verdict:<13} {row['predicate']:<13} "
                     f"{'yes' if row['matches_predicate'] else 'no':<5} {len(rep.lemmas):>6} "
                     f"{len(rep.failed()):>6} {len(rep.inconclusive()):>7}")
        if config.timing:
            lines[-1] += f"  {rep.wall_time_ms:.0f} ms"
        for c in rep.failed() + rep.inconclusive():
            lines.append(f"      {c.status}: {c.id} [{c.instance}] {c.detail}")
    emit(config, envelope(config, [row for _, row in rows]), "\n".join(lines))
    code = _exit_for(reports)
    if code == EXIT_OK and mismatch:
        code = EXIT_FAILED
    return code


def _lemma_item(item):
    return item, ledger.lemma_suite(*item)


def cmd_lemmas(config):
    items = _work_items(config)
    results = _map(_lemma_item, items, config.jobs)
    wanted = set(config.lemma)
    seen = set()
    rows, lines, statuses = [], [], []
    for (n, shape), checks in results:
        seen.update(c.id for c in checks)
        if wanted:
            checks = [c for c in checks if c.id in wanted]
        statuses.extend(c.status for c in checks)
        rows.append({"n": n, "shape": list(shape), "lemmas": [c.to_json() for c in checks]})
        counts = {s: sum(c.status == s for c in checks) for s in ledger.STATUSES}
        summary = ", ".join(f"{s} {k}" for s, k in counts.items() if k)
        lines.append(f"n={n} shape={_shape_text(shape)}: {summary or 'no checks'}")
        for c in checks:
            if c.status in ("failed", "inconclusive"):
                lines.append(f"    {c.status}: {c.id} [{c.instance}] {c.detail}")
    unknown = wanted - seen
    if unknown:
        raise UsageError(f"unknown lemma id(s): {', '.join(sorted(unknown))}")
    emit(config, envelope(config, rows), "\n".join(lines))
    if "failed" in statuses:
        return EXIT_FAILED
    if "inconclusive" in statuses:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_cohomology(config):
    n = config.n[0]
    word = tuple(config.word or ())
    if any(not 1 <= i <= n for i in word):
        raise UsageError(f"word {list(word)} has letters outside 1..{n}")
    V = parse_module(config.module, n)
    try:
        wc = coh.word_cohomology(word, V, max(config.degree, 1))
    except coh.NonReducedWord as exc:
        print(f"non-reduced word: failing prefix {list(exc.prefix)}", file=sys.stderr)
        return EXIT_DATA
    state = wc.degree(config.degree)
    ch = state.character()
    result = {
        "word": list(word),
        "module": config.module,
        "degree": config.degree,
        "flag": state.flag,
        "character": ch.to_json() if ch is not None else None,
        "certificate": wc.certificate,
    }
    if ch is None:
        text = f"H^{config.degree} undetermined: extension ambiguous at {state.origin}"
    else:
        text = _char_text(ch)
    if config.format == "text" and wc.certificate:
        text += "\ncertificate:\n" + "\n".join(f"  {step}" for step in _cert_lines(wc.certificate))
    emit(config, envelope(config, result), text)
    return EXIT_OK if ch is not None else EXIT_INCONCLUSIVE


def _cert_lines(cert):
    for step in cert:
        yield step if isinstance(step, str) else json.dumps(step, sort_keys=True)


def cmd_shapes(config):
    rows, lines = [], []
    for n in config.n:
        for shape in weyl.coxeter_shapes(n):
            word = weyl.theorem_word(shape, n)
            vanish = ledger.predicate(n, shape) if n >= 3 else None
            rows.append({"n": n, "shape": list(shape), "coxeter_word": list(weyl.shape_to_word(shape, n)),
                         "theorem_word_length": len(word), "predicate_vanishes": vanish})
            lines.append(f"n={n} shape={_shape_text(shape):<14} coxeter word "
                         f"{''.join(map(str, weyl.shape_to_word(shape, n)))}  predicate "
                         f"{'-' if vanish is None else ('vanishes' if vanish else 'nonzero')}")
    emit(config, envelope(config, rows), "\n".join(lines))
    return EXIT_OK


def cmd_oracles(config):
    results = [run_oracles(n, config.samples, config.seed) for n in config.n]
    lines = []
    status = EXIT_OK
    for res in results:
        for name, row in res["suites"].items():
            lines.append(f"n={res['n']} {name:<22} passed {row['passed']:>4}  failed {row['failed']:>3}  "
                         f"inconclusive {row['inconclusive']:>3}")
            for f in row["failures"][:5]:
                lines.append(f"    {f}")
            if row["failed"]:
                status = EXIT_FAILED
            elif row["inconclusive"] and status == EXIT_OK:
                status = EXIT_INCONCLUSIVE
    emit(config, envelope(config, results), "\n".join(lines))
    return status


# ---------------------------------------------------------------------------
# oracle suites


def random_reduced_word(rng, n, max_length):
    w = weyl.identity(n)
    word = []
    target = rng.randint(1, max_length)
    while len(word) < target:
        ascents = [i for i in range(1, n + 1)
                   if weyl.length(w * weyl.generator(n, i)) == len(word) + 1]
        if not ascents:
            break
        i = rng.choice(ascents)
        word.append(i)
        w = w * weyl.generator(n, i)
    return tuple(word)


def random_weight(rng, n, lo=-3, hi=2):
    rs = cartan.build(n)
    return rs.weight(fundamental=[rng.randint(lo, hi) for _ in range(n)])


def _suite():
    return {"passed": 0, "failed": 0, "inconclusive": 0, "failures": []}


def _record(suite, ok, detail):
    if ok is None:
        suite["inconclusive"] += 1
    elif ok:
        suite["passed"] += 1
    else:
        suite["failed"] += 1
        suite["failures"].append(detail)


def _euler(word, V):
    wc = coh.word_cohomology(word, V, len(word))
    total = Character()
    for j in range(len(word) + 1):
        ch = wc.degree(j).character()
        if ch is None:
            return None
        total = total + ch if j % 2 == 0 else total - ch
    return total == coh.demazure_word(word, V.character())


def run_oracles(n, samples, seed, max_length=5):
    """Randomised exact identities at rank ``n``; every sample is recomputed from scratch."""
    rng = random.Random(seed)
    rs = cartan.build(n)
    guard = [mu for mu in rs.short_roots() if not cartan.is_positive_root(mu)
             and cartan.neg(mu) not in rs.simple_roots]
    suites = {name: _suite() for name in
              ("euler", "word-independence", "duality-twist", "pairing-minus-one", "support-guard")}
    twist = coh.duality_twist(n)
    for _ in range(samples):
        word = random_reduced_word(rng, n, max_length)
        V = line(random_weight(rng, n)) if rng.random() < 0.8 else rng.choice([k1, gprime])(n)
        _record(suites["euler"], _euler(word, V), f"word {list(word)} module {V.character()!r}")

        w = weyl.from_word(word, n)
        words = weyl.reduced_words(w)
        other = rng.choice(words)
        ok = coh.h0_word(word, V).character() == coh.h0_word(other, V).character()
        _record(suites["word-independence"], ok, f"words {list(word)} and {list(other)}")

        i = rng.randint(1, n)
        lam = random_weight(rng, n, -5, 2)
        got = coh.h1_step(i, line(lam)).character()
        if cartan.pairing(lam, i) <= -2:
            want = coh.h0_step(i, line(cartan.dot_reflect(lam, i))).character()
        else:
            want = Character()
        _record(suites["duality-twist"], got == want, f"letter {i} weight {cartan.format_weight(lam)}")

        lam = cartan.sub(lam, cartan.scale(cartan.pairing(lam, i) + 1, rs.omega(i)))
        ok = coh.h0_step(i, line(lam)).is_zero() and coh.h1_step(i, line(lam)).is_zero()
        _record(suites["pairing-minus-one"], ok, f"letter {i} weight {cartan.format_weight(lam)}")

        U = line(rng.choice(guard))
        for _ in range(rng.randint(0, 2)):
            U = direct_sum(U, line(rng.choice(guard)))
        allowed = set(guard)
        ok = all(mu in allowed for mu in coh.h0_word(word, U).character().support())
        _record(suites["support-guard"], ok, f"word {list(word)} module {U.character()!r}")
    return {"n": n, "seed": seed, "samples": samples, "duality_twist": twist, "suites": suites}


# ---------------------------------------------------------------------------
# entry point


def build_parser():
    p = ArgParser(prog="bsdh", description=__doc__, epilog=WEIGHT_GRAMMAR,
                  formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=ArgParser)

    def common(sp, rank_help):
        sp.add_argument("--n", required=True, help=rank_help)
        sp.add_argument("--format", choices=("json", "text"), default="text")
        sp.add_argument("--out", help="write the report to this file")
        sp.add_argument("--seed", type=int, default=0)
        return sp

    for name, helptext in (("theorem", "verdict matrix for H^1 of the tangent bundle"),
                           ("lemmas", "individual statement checks")):
        sp = common(sub.add_parser(name, help=helptext, epilog=WEIGHT_GRAMMAR,
                                   formatter_class=argparse.RawDescriptionHelpFormatter),
                    "rank, list (3,4) or range (3-5) within 3..6")
        sp.add_argument("--shape", default="all", help="block starts, e.g. 3,1, or 'all'")
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--timing", action="store_true", help="record wall time (breaks byte identity)")
        if name == "lemmas":
            sp.add_argument("--lemma", default="", help="comma-separated check ids")

    sp = common(sub.add_parser("coh", help="cohomology of a module along a word", epilog=WEIGHT_GRAMMAR,
                               formatter_class=argparse.RawDescriptionHelpFormatter), "rank")
    sp.add_argument("--word", required=True, help="comma-separated letters, e.g. 2,3")
    sp.add_argument("--module", required=True, help="line:<weight> | k1 | adjoint | gprime")
    sp.add_argument("--degree", type=int, default=1)

    sp = common(sub.add_parser("oracles", help="randomised exact identities"), "rank or range")
    sp.add_argument("--samples", type=int, default=200)

    common(sub.add_parser("shapes", help="list Coxeter shapes"), "rank or range")
    return p


def config_from_args(args):
    cmd = args.command
    bounds = THEOREM_RANKS if cmd in ("theorem", "lemmas") else QUERY_RANKS
    config = RunConfig(command=cmd, n=parse_ranks(args.n, bounds), format=args.format,
                       out=args.out, seed=args.seed)
    if cmd in ("theorem", "lemmas"):
        config.shape = "all" if args.shape == "all" else parse_ints(args.shape, "shape")
        if args.jobs < 1:
            raise UsageError("--jobs must be positive")
        config.jobs = args.jobs
        config.timing = args.timing
        if cmd == "lemmas":
            config.lemma = [x.strip() for x in args.lemma.split(",") if x.strip()]
    if cmd == "coh":
        if len(config.n) != 1:
            raise UsageError("coh takes a single rank")
        config.word = parse_ints(args.word, "word")
        config.module = args.module
        if args.degree < 0:
            raise UsageError("--degree must be non-negative")
        config.degree = args.degree
    if cmd == "oracles":
        if args.samples < 1:
            raise UsageError("--samples must be positive")
        config.samples = args.samples
    return config


COMMANDS = {
    "theorem": cmd_theorem,
    "lemmas": cmd_lemmas,
    "coh": cmd_cohomology,
    "oracles": cmd_oracles,
    "shapes": cmd_shapes,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        config = config_from_args(args)
        return COMMANDS[config.command](config)
    except UsageError as exc:
        print(f"bsdh: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
