"""Partial DFA core: representation, word actions, basic predicates, file I/O.

States are dense indices 0..n-1.  A transition table entry is either a state
index or UNDEF (None); no implicit sink state exists.  Words are tuples of
letter indices into the automaton's alphabet.

All values are immutable after construction and all operations are pure, so
everything here can be shared freely across threads.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import FormatError, InputError, NotStronglyConnected

UNDEF = None

#: reserved letter token used by the collecting/duplicating constructions
GAMMA_TOKEN = "@g"

Word = tuple[int, ...]
EPSILON: Word = ()


@dataclass(frozen=True)
class PartialDfa:
    """A partial deterministic finite automaton (no initial/final states).

    trans[q][a] is the successor state or UNDEF.  The alphabet is an ordered
    tuple of distinct non-empty tokens; all tie-breaking everywhere in this
    package follows (letter order, then state order).
    """

    n: int
    alphabet: tuple[str, ...]
    trans: tuple[tuple[int | None, ...], ...]
    _letter_index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.n < 1:
            raise InputError("automaton needs at least one state")
        if not self.alphabet:
            raise InputError("automaton needs at least one letter")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise InputError("alphabet tokens must be distinct")
        if any(not tok for tok in self.alphabet):
            raise InputError("alphabet tokens must be non-empty")
        if len(self.trans) != self.n:
            raise InputError("transition table must have one row per state")
        for q, row in enumerate(self.trans):
            if len(row) != len(self.alphabet):
                raise InputError(f"state {q}: row width != alphabet size")
            for t in row:
                if t is not UNDEF and not (0 <= t < self.n):
                    raise InputError(f"state {q}: target {t} out of range")
        object.__setattr__(self, "_letter_index",
                           {tok: i for i, tok in enumerate(self.alphabet)})

    @classmethod
    def build(cls, n, alphabet, edges):
        """Construct from an iterable of (src, letter_token, dst) triples."""
        alphabet = tuple(alphabet)
        index = {tok: i for i, tok in enumerate(alphabet)}
        table = [[UNDEF] * len(alphabet) for _ in range(n)]
        for src, tok, dst in edges:
            table[src][index[tok]] = dst
        return cls(n, alphabet, tuple(tuple(row) for row in table))

    @property
    def states(self) -> frozenset[int]:
        return frozenset(range(self.n))

    def step(self, q: int | None, a: int) -> int | None:
        return UNDEF if q is UNDEF else self.trans[q][a]

    def run(self, q: int, w: Word) -> int | None:
        """Follow w from q; UNDEF as soon as a transition is missing."""
        for a in w:
            if q is UNDEF:
                return UNDEF
            q = self.trans[q][a]
        return q

    def image(self, S, w: Word) -> frozenset[int]:
        """{delta(q, w) : q in S, delta(q, w) defined}."""
        cur = set(S)
        for a in w:
            cur = {t for q in cur if (t := self.trans[q][a]) is not UNDEF}
            if not cur:
                break
        return frozenset(cur)

    def preimage(self, S, w: Word) -> frozenset[int]:
        """{q : delta(q, w) in S}."""
        target = frozenset(S)
        return frozenset(q for q in range(self.n) if self.run(q, w) in target)

    def rank(self, w: Word) -> int:
        return len(self.image(self.states, w))

    def word(self, text: str) -> Word:
        """Parse a word from letter tokens.

        Accepts space-separated tokens, '-' for the empty word, and (when all
        alphabet tokens are single characters) an unseparated string such as
        'bab'.
        """
        text = text.strip()
        if text == "-" or not text:
            return EPSILON
        toks = text.split()
        if len(toks) == 1 and toks[0] not in self._letter_index \
                and all(len(t) == 1 for t in self.alphabet):
            toks = list(toks[0])
        try:
            return tuple(self._letter_index[t] for t in toks)
        except KeyError as exc:
            raise InputError(f"unknown letter {exc.args[0]!r}") from None

    def format_word(self, w: Word) -> str:
        if not w:
            return "-"
        return " ".join(self.alphabet[a] for a in w)


def image(dfa: PartialDfa, S, w: Word) -> frozenset[int]:
    return dfa.image(S, w)


def preimage(dfa: PartialDfa, S, w: Word) -> frozenset[int]:
    return dfa.preimage(S, w)


def rank(dfa: PartialDfa, w: Word) -> int:
    return dfa.rank(w)


def is_mortal(dfa: PartialDfa, w: Word) -> bool:
    return dfa.rank(w) == 0


def is_complete(dfa: PartialDfa) -> bool:
    return all(t is not UNDEF for row in dfa.trans for t in row)


def is_properly_incomplete(dfa: PartialDfa) -> bool:
    """Some letter has both a defined and an undefined entry."""
    for a in range(len(dfa.alphabet)):
        col = [dfa.trans[q][a] for q in range(dfa.n)]
        if any(t is UNDEF for t in col) and any(t is not UNDEF for t in col):
            return True
    return False


def fully_undefined_letters(dfa: PartialDfa) -> list[int]:
    """Letters with no defined entry at all.

    Permitted by the data model but worth flagging: such a letter can only
    ever start a mortal suffix.
    """
    return [a for a in range(len(dfa.alphabet))
            if all(dfa.trans[q][a] is UNDEF for q in range(dfa.n))]


def _reachable(n, adj, start=0):
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


def is_strongly_connected(dfa: PartialDfa) -> bool:
    """Strong connectivity of the digraph of defined transitions."""
    fwd = [set() for _ in range(dfa.n)]
    bwd = [set() for _ in range(dfa.n)]
    for q, row in enumerate(dfa.trans):
        for t in row:
            if t is not UNDEF:
                fwd[q].add(t)
                bwd[t].add(q)
    return (len(_reachable(dfa.n, fwd)) == dfa.n
            and len(_reachable(dfa.n, bwd)) == dfa.n)


def is_eulerian(dfa: PartialDfa) -> bool:
    """Strongly connected with per-state out-degree == in-degree."""
    if not is_strongly_connected(dfa):
        return False
    indeg = [0] * dfa.n
    outdeg = [0] * dfa.n
    for q, row in enumerate(dfa.trans):
        for t in row:
            if t is not UNDEF:
                outdeg[q] += 1
                indeg[t] += 1
    return indeg == outdeg


def connecting_word(dfa: PartialDfa, p: int, q: int) -> Word:
    """Shortest word with delta(p, w) = q, ties broken by letter order.

    Always has length <= n-1.  Raises NotStronglyConnected when q is not
    reachable from p.
    """
    if p == q:
        return EPSILON
    prev: dict[int, tuple[int, int]] = {p: None}
    queue = deque([p])
    while queue:
        u = queue.popleft()
        for a in range(len(dfa.alphabet)):
            v = dfa.trans[u][a]
            if v is not UNDEF and v not in prev:
                prev[v] = (u, a)
                if v == q:
                    letters = []
                    while v != p:
                        u, a = prev[v]
                        letters.append(a)
                        v = u
                    return tuple(reversed(letters))
                queue.append(v)
    raise NotStronglyConnected(f"state {q} not reachable from state {p}")


# ---------------------------------------------------------------------------
# dfa v1 file format
#
#   dfa v1
#   states <n>
#   alphabet <tok1> <tok2> ...
#   <src> <tok> <dst>          (omitted pairs are UNDEF)
#
# UTF-8, LF, '#' starts a comment; each (src, tok) at most once.
# ---------------------------------------------------------------------------

def parse_dfa(text: str, allow_gamma: bool = False) -> PartialDfa:
    """Parse a `dfa v1` document; errors carry the offending line number."""
    lines = text.split("\n")
    items = []
    for no, raw in enumerate(lines, start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            items.append((no, stripped))
    if not items or items[0][1] != "dfa v1":
        raise FormatError("expected header 'dfa v1'",
                          line=items[0][0] if items else 1)
    if len(items) < 3:
        raise FormatError("missing 'states'/'alphabet' lines")

    no, states_line = items[1]
    parts = states_line.split()
    if len(parts) != 2 or parts[0] != "states" or not parts[1].isdigit():
        raise FormatError("expected 'states <n>'", line=no)
    n = int(parts[1])
    if n < 1:
        raise FormatError("need at least one state", line=no)

    no, alpha_line = items[2]
    parts = alpha_line.split()
    if len(parts) < 2 or parts[0] != "alphabet":
        raise FormatError("expected 'alphabet <tok> ...'", line=no)
    alphabet = tuple(parts[1:])
    if len(set(alphabet)) != len(alphabet):
        raise FormatError("duplicate alphabet token", line=no)
    if not allow_gamma and GAMMA_TOKEN in alphabet:
        raise FormatError(f"token {GAMMA_TOKEN!r} is reserved", line=no)
    index = {tok: i for i, tok in enumerate(alphabet)}

    table = [[UNDEF] * len(alphabet) for _ in range(n)]
    for no, line in items[3:]:
        parts = line.split()
        if len(parts) != 3:
            raise FormatError("expected '<src> <tok> <dst>'", line=no)
        src_s, tok, dst_s = parts
        if not src_s.isdigit() or not dst_s.isdigit():
            raise FormatError("states must be decimal", line=no)
        src, dst = int(src_s), int(dst_s)
        if src >= n or dst >= n:
            raise FormatError(f"state out of range (states {n})", line=no)
        if tok not in index:
            raise FormatError(f"unknown letter {tok!r}", line=no)
        if table[src][index[tok]] is not UNDEF:
            raise FormatError(f"duplicate transition for ({src}, {tok})", line=no)
        table[src][index[tok]] = dst

    return PartialDfa(n, alphabet, tuple(tuple(row) for row in table))


def format_dfa(dfa: PartialDfa, comment: str | None = None) -> str:
    out = ["dfa v1"]
    if comment:
        out.extend(f"# {line}" for line in comment.split("\n"))
    out.append(f"states {dfa.n}")
    out.append("alphabet " + " ".join(dfa.alphabet))
    for q, row in enumerate(dfa.trans):
        for a, t in enumerate(row):
            if t is not UNDEF:
                out.append(f"{q} {dfa.alphabet[a]} {t}")
    return "\n".join(out) + "\n"
