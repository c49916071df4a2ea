"""Finite prefix codes and their literal automata.

The literal automaton has the proper prefixes of the code as states; reading
a codeword returns to the root, so it recognizes X* and doubles as a decoder
skeleton.  One-word codes synchronize via a conjugate split (Weinbaum);
larger codes admit a word of linear length and logarithmic rank, built in
two phases around the unique pivot state where the prefix tree first
branches.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .automaton import EPSILON, UNDEF, PartialDfa, Word, is_strongly_connected
from .errors import FormatError, InputError, NotSynchronizing, SyncwordError

ENUMERATION_CAP = 2 ** 22


@dataclass(frozen=True)
class PrefixCode:
    """Non-empty, duplicate-free set of codewords, none a prefix of another."""

    words: tuple[str, ...]

    @property
    def alphabet(self) -> tuple[str, ...]:
        return tuple(sorted({ch for w in self.words for ch in w}))

    @property
    def total_length(self) -> int:
        return sum(len(w) for w in self.words)


def validate_code(words) -> PrefixCode:
    words = tuple(words)
    if not words:
        raise InputError("a code needs at least one codeword")
    for w in words:
        if not w:
            raise InputError("codewords must be non-empty")
    seen = {}
    for i, w in enumerate(words):
        if w in seen:
            raise InputError(f"duplicate codeword {w!r}")
        seen[w] = i
    by_len = sorted(words, key=len)
    for i, u in enumerate(by_len):
        for v in by_len[i + 1:]:
            if v.startswith(u) and u != v:
                raise InputError(f"codeword {u!r} is a prefix of {v!r}")
    return PrefixCode(words)


@dataclass(frozen=True)
class LiteralAutomaton:
    """Partial DFA on the proper prefixes of a prefix code.

    States are the proper prefixes in lexicographic order, so the root
    (empty prefix) is state 0; height is the longest codeword length minus
    one.
    """

    code: PrefixCode
    dfa: PartialDfa
    prefixes: tuple[str, ...]
    state_of: dict
    height: int

    @property
    def root(self) -> int:
        return 0


def literal_automaton(code: PrefixCode) -> LiteralAutomaton:
    codewords = set(code.words)
    prefixes = sorted({w[:i] for w in codewords for i in range(len(w))})
    state_of = {p: i for i, p in enumerate(prefixes)}
    alphabet = code.alphabet
    table = []
    for p in prefixes:
        row = []
        for ch in alphabet:
            ext = p + ch
            if ext in codewords:
                row.append(state_of[""])
            elif ext in state_of:
                row.append(state_of[ext])
            else:
                row.append(UNDEF)
        table.append(tuple(row))
    dfa = PartialDfa(len(prefixes), alphabet, tuple(table))
    assert is_strongly_connected(dfa), "literal automata are strongly connected"
    height = max(len(w) for w in codewords) - 1
    return LiteralAutomaton(code, dfa, tuple(prefixes), state_of, height)


def primitive_root(x: str) -> tuple[str, int]:
    """The primitive y and maximal k with x = y^k.

    x is a power of its length-p prefix iff p divides |x| and x has period p,
    so it suffices to scan the divisors in increasing order.
    """
    if not x:
        raise InputError("empty word has no primitive root")
    n = len(x)
    for p in range(1, n + 1):
        if n % p == 0 and x == x[:p] * (n // p):
            return x[:p], n // p
    raise AssertionError("unreachable: every word is a power of itself")


def one_word_rank(code: PrefixCode) -> int:
    """Minimal non-zero rank of the literal automaton of a one-word code:
    the power k in x = y^k."""
    if len(code.words) != 1:
        raise InputError("defined for one-word codes only")
    return primitive_root(code.words[0])[1]


def _defined_states(lit: LiteralAutomaton, w: str) -> list[int]:
    word = lit.dfa.word(w)
    return [q for q in range(lit.dfa.n) if lit.dfa.run(q, word) is not UNDEF]


def weinbaum_conjugate(x: str, lit: LiteralAutomaton) -> tuple[str, str]:
    """A conjugate x' = uv of the primitive word x such that the actions of
    both u and v are defined for exactly one state each (so both are reset
    words; the shorter one has length at most |x|/2).

    Found by scanning all conjugates and split points in order.
    """
    if primitive_root(x)[1] != 1:
        raise InputError(f"{x!r} is not primitive")
    if lit.code.words != (x,):
        raise InputError("literal automaton must belong to the one-word code")
    for i in range(len(x)):
        conj = x[i:] + x[:i]
        for j in range(1, len(conj)):
            u, v = conj[:j], conj[j:]
            if len(_defined_states(lit, u)) == 1 and len(_defined_states(lit, v)) == 1:
                return u, v
    raise SyncwordError("no conjugate split found for a primitive word")


def pivot_state(lit: LiteralAutomaton) -> int:
    """The unique state closest to the root with >= 2 defined letters.

    Every state before it on the walk from the root has exactly one defined
    letter, so following unique transitions finds it.
    """
    if len(lit.code.words) < 2:
        raise InputError("pivot exists only for codes with at least two words")
    q = lit.root
    for _ in range(lit.dfa.n + 1):
        defined = [a for a in range(len(lit.dfa.alphabet))
                   if lit.dfa.trans[q][a] is not UNDEF]
        if len(defined) >= 2:
            return q
        q = lit.dfa.trans[q][defined[0]]
    raise AssertionError("unreachable: a multi-word code has a branching state")


def pivot_letters(lit: LiteralAutomaton) -> tuple[int, int]:
    """The two alphabet-least letters defined at the pivot."""
    p = pivot_state(lit)
    defined = [a for a in range(len(lit.dfa.alphabet))
               if lit.dfa.trans[p][a] is not UNDEF]
    return defined[0], defined[1]


def path_states(lit: LiteralAutomaton) -> tuple[int, ...]:
    """States strictly between root and pivot on the unique path, in depth
    order, the root included and the pivot excluded."""
    p = pivot_state(lit)
    out = []
    q = lit.root
    while q != p:
        out.append(q)
        defined = [a for a in range(len(lit.dfa.alphabet))
                   if lit.dfa.trans[q][a] is not UNDEF]
        q = lit.dfa.trans[q][defined[0]]
    return tuple(out)


def filtering_alpha(lit: LiteralAutomaton, pivot: int, w: Word) -> Word:
    """The filtering pass: consume the next letter of w while the pivot is
    active, otherwise apply the least letter that keeps the active set
    alive.  Stops when w is exhausted with the pivot active or the output
    reaches the height; the output is never mortal.
    """
    dfa = lit.dfa
    active = dfa.states
    out = []
    rest = list(w)
    while len(out) < lit.height:
        if pivot in active:
            if not rest:
                break
            a = rest.pop(0)
        else:
            a = next(b for b in range(len(dfa.alphabet))
                     if dfa.image(active, (b,)))
        active = dfa.image(active, (a,))
        out.append(a)
        assert active, "filtering never applies a mortal letter"
    return tuple(out)


def _passes_through_root(lit: LiteralAutomaton, w: Word) -> bool:
    """Every state surviving w visits the root under some prefix of w."""
    dfa = lit.dfa
    for q in range(dfa.n):
        visited_root = q == lit.root
        cur = q
        for a in w:
            cur = dfa.trans[cur][a]
            if cur is UNDEF:
                break
            if cur == lit.root:
                visited_root = True
        if cur is not UNDEF and not visited_root:
            return False
    return True


def _through_root_candidates(lit: LiteralAutomaton):
    """Filtered words with the all-through-root property, in the
    lexicographic order of the pivot-letter inputs they come from."""
    h, n = lit.height, lit.dfa.n
    length = max(1, (h * n - 1).bit_length())
    if 2 ** length > ENUMERATION_CAP:
        raise InputError(
            f"candidate enumeration 2^{length} exceeds cap {ENUMERATION_CAP}")
    p = pivot_state(lit)
    la, lb = pivot_letters(lit)
    for bits in range(2 ** length):
        w = tuple(lb if (bits >> (length - 1 - i)) & 1 else la
                  for i in range(length))
        candidate = filtering_alpha(lit, p, w)
        if _passes_through_root(lit, candidate):
            yield candidate


def all_through_root_word(lit: LiteralAutomaton) -> Word:
    """A filtered word under which every surviving state passes through the
    root: the first success among the filtered images of all words of length
    ceil(log2(h n)) over the two pivot letters.  Existence is a theorem, so
    running out of candidates is an internal error.
    """
    if len(lit.code.words) < 2:
        raise InputError("needs a code with at least two words")
    if lit.height == 0:
        return EPSILON
    for candidate in _through_root_candidates(lit):
        return candidate
    raise SyncwordError("no all-through-root word found")


def compress_path_word(lit: LiteralAutomaton, R) -> Word:
    """Halving loop mapping the surviving path states into a set of at most
    ceil(log2 h) states: route the deepest active path state to the pivot,
    then apply whichever pivot letter kills at least half of the remaining
    active path states (alphabet-least on ties).
    """
    dfa = lit.dfa
    R = frozenset(R)
    if not R <= dfa.states:
        raise InputError("R must be a set of states")
    p = pivot_state(lit)
    path = path_states(lit)
    depth = {q: i for i, q in enumerate(path)}
    la, lb = pivot_letters(lit)

    active = set(R) & set(path)
    if not active:
        return EPSILON
    out = []
    while True:
        deepest = max(active, key=depth.get)
        # forced letters from the deepest path state to the pivot
        ell = []
        q = deepest
        while q != p:
            a = next(b for b in range(len(dfa.alphabet))
                     if dfa.trans[q][b] is not UNDEF)
            ell.append(a)
            q = dfa.trans[q][a]
        moved = dfa.image(active, tuple(ell))
        out.extend(ell)
        assert p in moved
        survivors = {q for q in moved if q in depth}           # drop the pivot
        assert len(survivors) <= max(0, len(active) - 1)
        if not survivors:
            break
        half = (len(survivors) + 1) // 2
        kills = {a: sum(1 for q in survivors if dfa.trans[q][a] is UNDEF)
                 for a in (la, lb)}
        choice = next(a for a in sorted((la, lb)) if kills[a] >= half)
        out.append(choice)
        nxt = dfa.image(survivors, (choice,))
        assert len(nxt & frozenset(depth)) <= len(active) // 2
        active = set(nxt) & set(depth)
        if len(out) >= lit.height or not active:
            break
    assert len(out) <= lit.height
    return tuple(out)


def log_rank_word(lit: LiteralAutomaton) -> Word:
    """A non-mortal word of length <= 2h and rank <= ceil(log2 hn) +
    ceil(log2 h) for a code with at least two words.

    Built as an all-through-root word followed by the path-compressing word.
    A survivor perched exactly on the pivot after the last letter can cost
    one state over the bound for the first candidate at tiny sizes, so the
    enumeration continues to the first candidate whose composed word passes
    all three postconditions by direct evaluation.
    """
    if len(lit.code.words) < 2:
        raise InputError("one-word codes take the conjugate route instead")
    h, n = lit.height, lit.dfa.n
    if h == 0:
        return EPSILON  # single-state automaton, rank already 1
    bound = math.ceil(math.log2(h * n)) + math.ceil(math.log2(h))
    seen_any = False
    for u in _through_root_candidates(lit):
        seen_any = True
        R = lit.dfa.image(lit.dfa.states, u)
        v = compress_path_word(lit, R)
        word = u + v
        r = lit.dfa.rank(word)
        assert r > 0, "log-rank word must be non-mortal"
        assert len(word) <= 2 * h
        if r <= bound:
            return word
    raise SyncwordError("no candidate met the rank bound"
                        if seen_any else "no all-through-root word found")


def literal_reset_word(lit: LiteralAutomaton) -> Word:
    """Reset word for a synchronizing literal automaton.

    One-word codes: the shorter part of a Weinbaum conjugate split (length
    <= |x|/2).  Otherwise: the log-rank word followed by greedy pair
    compression of its image in the base automaton.
    """
    from .synchronization import _min_pair, pair_table, pair_word

    dfa = lit.dfa
    if len(lit.code.words) == 1:
        x = lit.code.words[0]
        y, k = primitive_root(x)
        if k > 1:
            raise NotSynchronizing(
                f"literal automaton of {x!r} has minimal non-zero rank {k}")
        u, v = weinbaum_conjugate(x, lit)
        word = dfa.word(u if len(u) <= len(v) else v)
        assert dfa.rank(word) == 1
        return word

    table = pair_table(dfa)
    if not table.all_compressible():
        p, q = next((p, q) for p in range(dfa.n) for q in range(p + 1, dfa.n)
                    if (p, q) not in table.dist)
        raise NotSynchronizing(
            f"not synchronizing: pair {{{lit.prefixes[p]!r}, {lit.prefixes[q]!r}}} "
            "is incompressible")
    word = list(log_rank_word(lit))
    S = dfa.image(dfa.states, tuple(word))
    while len(S) > 1:
        _, p, q = _min_pair(table, S)
        sub = pair_word(dfa, table, p, q)
        word.extend(sub)
        S = dfa.image(S, sub)
    assert dfa.rank(tuple(word)) == 1
    return tuple(word)


def parse_code(text: str) -> PrefixCode:
    """Code file: one codeword per line, single-character letters, '#'
    starts a comment."""
    words = []
    for no, raw in enumerate(text.split("\n"), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        if any(ch.isspace() for ch in stripped):
            raise FormatError("codewords cannot contain whitespace", line=no)
        words.append(stripped)
    return validate_code(words)


def format_code(code: PrefixCode) -> str:
    return "\n".join(code.words) + "\n"
