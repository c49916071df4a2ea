"""Command-line front door.

Exit codes: 0 success / positive decision, 1 negative decision, 2 usage or
input error, 3 internal assertion failure.  All randomness flows through an
explicit --seed.  --format summary emits stable key=value lines.
"""
from __future__ import annotations

import argparse
import math
import sys

from . import automaton, codes, constructions, equivalence, generators
from . import oracle as oracle_mod
from . import synchronization as sync_mod
from .errors import InputError, NotSynchronizing, SyncwordError


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_dfa(path):
    # analysis commands accept @g automata emitted by the build commands;
    # constructions that add @g themselves reject colliding alphabets
    dfa = automaton.parse_dfa(_read(path), allow_gamma=True)
    dead = automaton.fully_undefined_letters(dfa)
    if dead:
        toks = ", ".join(dfa.alphabet[a] for a in dead)
        print(f"note: letters with no defined transition: {toks}",
              file=sys.stderr)
    return dfa


def _parse_word_list(dfa, text):
    words = []
    for chunk in text.split(","):
        chunk = chunk.strip().replace(".", " ")
        words.append(dfa.word(chunk))
    return words


def _emit(fmt, text_lines, summary_pairs):
    if fmt == "summary":
        for k, v in summary_pairs:
            print(f"{k}={v}")
    else:
        for line in text_lines:
            print(line)


def _bool(v):
    return "true" if v else "false"


# --------------------------------------------------------------- subcommands

def _cmd_classes(args):
    dfa = _load_dfa(args.file)
    part = equivalence.inseparability_partition(dfa)
    for cls in part.classes:
        print(" ".join(str(q) for q in sorted(cls)))
    return 0


def _cmd_build(args):
    dfa = _load_dfa(args.file)
    if args.what == "fixing":
        out = constructions.fixing(dfa)
    elif args.what == "collecting":
        out, _ = sync_mod.reduction_to_complete(dfa)
    elif args.what == "duplicating":
        out = constructions.duplicating(dfa)
    else:  # induced
        if not args.w1 or not args.w2:
            raise InputError("induced needs --w1 and --w2")
        ind = constructions.induced(dfa, _parse_word_list(dfa, args.w1),
                                    _parse_word_list(dfa, args.w2))
        out = ind.dfa
    sys.stdout.write(automaton.format_dfa(out))
    return 0


def _cmd_sync_check(args):
    dfa = _load_dfa(args.file)
    if sync_mod.is_synchronizing(dfa):
        _emit(args.format, ["synchronizing"], [("synchronizing", "true")])
        return 0
    r = sync_mod.greedy_min_rank(dfa).final_rank
    _emit(args.format, [f"not synchronizing: minimal non-zero rank {r}"],
          [("synchronizing", "false"), ("min_rank", r)])
    return 1


def _word_output(args, dfa, word):
    r = dfa.rank(word)
    _emit(args.format,
          [dfa.format_word(word), f"rank={r} len={len(word)}"],
          [("word", dfa.format_word(word)), ("rank", r), ("len", len(word))])
    return r


def _cmd_sync_word(args):
    dfa = _load_dfa(args.file)
    if not sync_mod.is_synchronizing(dfa):
        r = sync_mod.greedy_min_rank(dfa).final_rank
        _emit(args.format, [f"not synchronizing: minimal non-zero rank {r}"],
              [("synchronizing", "false"), ("min_rank", r)])
        return 1
    if args.method == "greedy":
        word = sync_mod.greedy_min_rank(dfa).word
    elif args.method == "fixing":
        word = sync_mod.min_rank_word_via_fixing(dfa).word
    elif args.method == "collecting":
        word = sync_mod.reset_word_via_collecting(dfa)
    else:  # oracle
        word = oracle_mod.subset_bfs(dfa).witness(1)
    assert dfa.rank(word) == 1
    _word_output(args, dfa, word)
    return 0


def _cmd_rank_min(args):
    dfa = _load_dfa(args.file)
    result = sync_mod.greedy_min_rank(dfa)
    _word_output(args, dfa, result.word)
    return 0


def _cmd_rank_word(args):
    dfa = _load_dfa(args.file)
    word = sync_mod.rank_target_word(dfa, args.target, method=args.method)
    _word_output(args, dfa, word)
    return 0


def _cmd_oracle(args):
    dfa = _load_dfa(args.file)
    report = oracle_mod.subset_bfs(dfa)
    lines = []
    pairs = []
    for r in range(dfa.n, -1, -1):
        if report.reachable(r):
            w = dfa.format_word(report.witness(r))
            lines.append(f"r={r} len={report.length(r)} word={w}")
            pairs.append((f"len_r{r}", report.length(r)))
    _emit(args.format, lines, pairs)
    return 0


def _cmd_verify_duplicating(args):
    dfa = _load_dfa(args.file)
    results = oracle_mod.duplicating_identity_check(dfa)
    lines = [f"r={r} base={lb} duplicated={ld}" for r, (lb, ld) in sorted(results.items())]
    lines.append("identity holds")
    pairs = [(f"rt2x_r{r}", ld) for r, (_, ld) in sorted(results.items())]
    pairs.append(("identity", "ok"))
    _emit(args.format, lines, pairs)
    return 0


def _cmd_verify_all(args):
    failures = []
    results = []

    def check(name, fn):
        try:
            detail = fn() or ""
            results.append((name, "ok", detail))
        except Exception as exc:  # report and keep going
            failures.append(name)
            results.append((name, "fail", str(exc)))

    cap = max(3, args.size_cap)
    seed = args.seed

    def cerny_check():
        for n in range(3, min(cap, 8) + 1):
            rep = oracle_mod.subset_bfs(generators.gen_cerny(n))
            assert rep.reset_threshold == (n - 1) ** 2
        return f"n<={min(cap, 8)}"

    def duplicating_check():
        for n in range(3, min(cap, 5) + 1):
            oracle_mod.duplicating_identity_check(generators.gen_cerny(n))
        for i in range(5):
            dfa = generators.gen_random_partial(min(cap, 5), 2, 1.0, seed + i)
            oracle_mod.duplicating_identity_check(dfa)
        return "cerny + 5 random"

    def greedy_check():
        for i in range(20):
            dfa = generators.gen_random_partial(3 + i % (min(cap, 8) - 2), 2,
                                                0.7 + (i % 4) * 0.1, seed + i)
            res = sync_mod.greedy_min_rank(dfa)
            rep = oracle_mod.subset_bfs(dfa)
            assert res.final_rank == rep.min_nonzero_rank
            assert dfa.rank(res.word) == res.final_rank
        return "20 random automata"

    def lemma_check():
        rng = generators.Lcg64(seed)
        for i in range(10):
            dfa = generators.gen_random_partial(3 + i % (min(cap, 8) - 2), 2,
                                                0.75, seed + 100 + i)
            part = equivalence.inseparability_partition(dfa)
            for _ in range(20):
                S = frozenset(q for q in range(dfa.n) if rng.below(2))
                if part.kappa(S) >= 2:
                    w = equivalence.class_reducing_word(dfa, part, S)
                    assert len(w) <= part.kappa(dfa.states) - part.kappa(S) + 1
                if S:
                    w = tuple(rng.below(2) for _ in range(6))
                    lifted = constructions.lift_word_to_partial(dfa, S, w)
                    fixed = constructions.fixing(dfa)
                    img = dfa.image(S, lifted)
                    assert img and img <= fixed.image(S, w)
        return "10 automata x 20 subsets"

    def reduction_check():
        for i in range(20):
            dfa = generators.gen_random_partial(3 + i % (min(cap, 8) - 2), 2,
                                                0.65 + (i % 3) * 0.1, seed + 200 + i)
            complete, _ = sync_mod.reduction_to_complete(dfa)
            assert sync_mod.is_synchronizing(dfa) == sync_mod.is_synchronizing(complete)
        return "20 random automata"

    def logrank_check():
        done = 0
        attempt = 0
        while done < 10:
            code = generators.gen_random_prefix_code(2 + attempt % 3, 5, 2,
                                                     seed + 300 + attempt)
            attempt += 1
            lit = codes.literal_automaton(code)
            if lit.height == 0:
                continue
            w = codes.log_rank_word(lit)  # bounds asserted inside
            assert len(w) <= 2 * lit.height
            done += 1
        return "10 random codes"

    def oneword_check():
        for k in range(1, 4):
            code = generators.gen_oneword_code(k)
            lit = codes.literal_automaton(code)
            assert codes.one_word_rank(code) == 1
            word = codes.literal_reset_word(lit)
            assert len(word) == k + 1
        return "k=1..3"

    def extremal_check():
        res = oracle_mod.extremal_search(3, exhaustive=True)
        assert res.attained, f"best {res.best_rt} < target {res.target}"
        return f"n=3 best={res.best_rt}"

    check("cerny-thresholds", cerny_check)
    check("duplicating-identity", duplicating_check)
    check("extremal-bound", extremal_check)
    check("greedy-vs-oracle", greedy_check)
    check("lemma-bounds", lemma_check)
    check("logrank-bounds", logrank_check)
    check("oneword-family", oneword_check)
    check("reduction-soundness", reduction_check)

    results.sort(key=lambda r: r[0])
    for name, status, detail in results:
        if args.format == "summary":
            print(f"{name}={status}")
        else:
            suffix = f" ({detail})" if detail else ""
            print(f"check={name} status={status}{suffix}")
    return 3 if failures else 0


def _cmd_search_extremal(args):
    if args.exhaustive and (args.seed is not None or args.trials is not None):
        raise InputError("--exhaustive excludes --seed/--trials")
    exhaustive = args.exhaustive or (args.seed is None and args.trials is None)
    res = oracle_mod.extremal_search(
        args.n, exhaustive=exhaustive,
        seed=args.seed if args.seed is not None else 0,
        trials=args.trials if args.trials is not None else 10000)
    pairs = [("n", res.n), ("target", res.target), ("best_rt", res.best_rt),
             ("attained", _bool(res.attained)), ("candidates", res.candidates)]
    lines = [f"n={res.n} target={res.target} best_rt={res.best_rt} "
             f"attained={_bool(res.attained)} candidates={res.candidates}"]
    _emit(args.format, lines, pairs)
    if args.format != "summary" and res.best_dfa is not None:
        print()
        sys.stdout.write(automaton.format_dfa(res.best_dfa))
    return 0


def _cmd_code(args):
    if args.what == "oneword":
        word = args.file  # positional doubles as the codeword
        if not word:
            raise InputError("give the codeword")
        code = codes.validate_code([word])
        y, k = codes.primitive_root(word)
        lines = [f"primitive_root={y}", f"power={k}", f"rank={k}"]
        pairs = [("primitive_root", y), ("power", k), ("rank", k)]
        if k == 1:
            lit = codes.literal_automaton(code)
            w = codes.literal_reset_word(lit)
            lines.append(f"reset_word={lit.dfa.format_word(w)} len={len(w)}")
            pairs.extend([("reset_word", lit.dfa.format_word(w)), ("len", len(w))])
            _emit(args.format, lines, pairs)
            return 0
        lines.append("not synchronizing")
        pairs.append(("synchronizing", "false"))
        _emit(args.format, lines, pairs)
        return 1

    code = codes.parse_code(_read(args.file))
    if args.what == "validate":
        _emit(args.format, [f"valid prefix code with {len(code.words)} words"],
              [("valid", "true"), ("words", len(code.words))])
        return 0
    lit = codes.literal_automaton(code)
    if args.what == "literal":
        names = ", ".join(repr(p) for p in lit.prefixes)
        sys.stdout.write(automaton.format_dfa(
            lit.dfa, comment=f"literal automaton; states = proper prefixes {names}"))
        return 0
    if args.what == "logrank":
        if len(code.words) == 1:
            raise InputError("log-rank words are for codes with >= 2 words; "
                             "use 'code oneword'")
        word = codes.log_rank_word(lit)
        r = lit.dfa.rank(word)
        h, n = lit.height, lit.dfa.n
        bound = (math.ceil(math.log2(h * n)) + math.ceil(math.log2(h))) if h else 1
        _emit(args.format,
              [lit.dfa.format_word(word),
               f"rank={r} len={len(word)} bound={bound} height={h}"],
              [("word", lit.dfa.format_word(word)), ("rank", r),
               ("len", len(word)), ("bound", bound), ("height", h)])
        return 0
    # reset
    try:
        word = codes.literal_reset_word(lit)
    except NotSynchronizing as exc:
        _emit(args.format, [str(exc)], [("synchronizing", "false")])
        return 1
    _word_output(args, lit.dfa, word)
    return 0


def _cmd_gen(args):
    if args.family == "cerny":
        sys.stdout.write(automaton.format_dfa(generators.gen_cerny(args.n)))
    elif args.family == "oneword":
        sys.stdout.write(codes.format_code(generators.gen_oneword_code(args.k)))
    elif args.family == "random-dfa":
        dfa = generators.gen_random_partial(args.n, args.alpha, args.density,
                                            args.seed)
        sys.stdout.write(automaton.format_dfa(dfa, comment=f"seed {args.seed}"))
    else:  # random-code
        code = generators.gen_random_prefix_code(args.count, args.maxlen,
                                                 args.alpha, args.seed)
        sys.stdout.write(codes.format_code(code))
    return 0


# ------------------------------------------------------------------- parser

def _build_parser():
    top = argparse.ArgumentParser(
        prog="syncword",
        description="Synchronization toolkit for strongly connected partial DFAs")
    top.add_argument("--format", choices=["text", "summary"], default="text")
    sub = top.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("classes", help="print inseparability classes")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_classes)

    p = sub.add_parser("build", help="emit a derived automaton")
    p.add_argument("what", choices=["fixing", "collecting", "duplicating", "induced"])
    p.add_argument("file")
    p.add_argument("--w1", help="comma-separated words (induced)")
    p.add_argument("--w2", help="comma-separated words (induced)")
    p.set_defaults(fn=_cmd_build)

    p = sub.add_parser("sync", help="synchronizability")
    ssub = p.add_subparsers(dest="subcmd", required=True)
    pc = ssub.add_parser("check")
    pc.add_argument("file")
    pc.set_defaults(fn=_cmd_sync_check)
    pw = ssub.add_parser("word")
    pw.add_argument("file")
    pw.add_argument("--method", choices=["greedy", "fixing", "collecting", "oracle"],
                    default="greedy")
    pw.set_defaults(fn=_cmd_sync_word)

    p = sub.add_parser("rank", help="minimum-rank words")
    rsub = p.add_subparsers(dest="subcmd", required=True)
    pm = rsub.add_parser("min")
    pm.add_argument("file")
    pm.set_defaults(fn=_cmd_rank_min)
    pw = rsub.add_parser("word")
    pw.add_argument("file")
    pw.add_argument("--target", type=int, required=True)
    pw.add_argument("--method", choices=["greedy", "oracle"], default="greedy")
    pw.set_defaults(fn=_cmd_rank_word)

    p = sub.add_parser("oracle", help="exact thresholds by subset BFS")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_oracle)

    p = sub.add_parser("verify", help="verification suites")
    vsub = p.add_subparsers(dest="subcmd", required=True)
    pd = vsub.add_parser("duplicating")
    pd.add_argument("file")
    pd.set_defaults(fn=_cmd_verify_duplicating)
    pa = vsub.add_parser("all")
    pa.add_argument("--size-cap", type=int, default=8)
    pa.add_argument("--seed", type=int, default=0)
    pa.set_defaults(fn=_cmd_verify_all)

    p = sub.add_parser("search", help="extremal searches")
    xsub = p.add_subparsers(dest="subcmd", required=True)
    px = xsub.add_parser("extremal")
    px.add_argument("--n", type=int, required=True)
    px.add_argument("--exhaustive", action="store_true")
    px.add_argument("--seed", type=int)
    px.add_argument("--trials", type=int)
    px.set_defaults(fn=_cmd_search_extremal)

    p = sub.add_parser("code", help="prefix codes and literal automata")
    p.add_argument("what", choices=["validate", "literal", "logrank", "reset", "oneword"])
    p.add_argument("file", help="code file, or the codeword for 'oneword'")
    p.set_defaults(fn=_cmd_code)

    p = sub.add_parser("gen", help="fixture generators")
    gsub = p.add_subparsers(dest="family", required=True)
    pg = gsub.add_parser("cerny")
    pg.add_argument("--n", type=int, required=True)
    pg.set_defaults(fn=_cmd_gen, family="cerny")
    pg = gsub.add_parser("oneword")
    pg.add_argument("--k", type=int, required=True)
    pg.set_defaults(fn=_cmd_gen, family="oneword")
    pg = gsub.add_parser("random-dfa")
    pg.add_argument("--n", type=int, required=True)
    pg.add_argument("--alpha", type=int, default=2)
    pg.add_argument("--density", type=float, default=0.9)
    pg.add_argument("--seed", type=int, required=True)
    pg.set_defaults(fn=_cmd_gen, family="random-dfa")
    pg = gsub.add_parser("random-code")
    pg.add_argument("--count", type=int, required=True)
    pg.add_argument("--maxlen", type=int, required=True)
    pg.add_argument("--alpha", type=int, default=2)
    pg.add_argument("--seed", type=int, required=True)
    pg.set_defaults(fn=_cmd_gen, family="random-code")

    return top


def run(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except NotSynchronizing as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (AssertionError, SyncwordError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
