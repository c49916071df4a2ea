"""Inseparability equivalence and the words that exploit it.

Two states are inseparable when no word kills exactly one of them (the
definedness of every word action agrees).  The classes are computed by
partition refinement treating UNDEF as a sink that is the only accepting
state; separation witnesses are stored per class pair as (letter, level)
and reconstructed recursively.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .automaton import UNDEF, PartialDfa, Word
from .errors import InputError


@dataclass(frozen=True)
class Partition:
    """Inseparability classes plus separating-word witnesses.

    classes are ordered by their minimal state, class_of maps each state to
    its class id, and levels maps each separated (unordered) class-id pair to
    a (letter, level) witness: level is the length of a shortest word whose
    definedness distinguishes the two classes, and the letter is its first
    letter.
    """

    class_of: tuple[int, ...]
    classes: tuple[frozenset[int], ...]
    levels: dict = field(compare=False)

    def kappa(self, S) -> int:
        """Number of classes intersecting S."""
        return len({self.class_of[q] for q in S})

    def level(self, c1: int, c2: int) -> int:
        return self.levels[(min(c1, c2), max(c1, c2))][1]


def _hopcroft_classes(dfa: PartialDfa) -> list[set[int]]:
    """Classes of 0..n-1 with the UNDEF sink as the only accepting state."""
    n, k = dfa.n, len(dfa.alphabet)
    sink = n
    inv = [[[] for _ in range(n + 1)] for _ in range(k)]
    for q in range(n):
        for a in range(k):
            t = dfa.trans[q][a]
            inv[a][sink if t is UNDEF else t].append(q)

    live = frozenset(range(n))
    blocks = {live, frozenset([sink])}
    block_of = {q: live for q in range(n)}
    block_of[sink] = frozenset([sink])
    worklist = {frozenset([sink])}  # smaller of the two seed blocks

    while worklist:
        splitter = worklist.pop()
        for a in range(k):
            touched: dict[frozenset, set] = {}
            for t in splitter:
                for q in inv[a][t]:
                    touched.setdefault(block_of[q], set()).add(q)
            for block, overlap in touched.items():
                if len(overlap) == len(block):
                    continue
                part1 = frozenset(overlap)
                part2 = block - part1
                blocks.remove(block)
                blocks.update((part1, part2))
                for q in part1:
                    block_of[q] = part1
                for q in part2:
                    block_of[q] = part2
                if block in worklist:
                    worklist.remove(block)
                    worklist.update((part1, part2))
                else:
                    # only the smaller half -- keeps it O(|Sigma| n log n)
                    worklist.add(part1 if len(part1) <= len(part2) else part2)

    return [set(b) for b in blocks if sink not in b]


def _quotient_table(dfa: PartialDfa, class_of, classes):
    """Class-level transition table; asserts well-definedness.

    A failure here means the partition is wrong, i.e. an implementation bug.
    """
    k = len(dfa.alphabet)
    table = []
    for cls in classes:
        row = []
        for a in range(k):
            targets = {dfa.trans[q][a] for q in cls}
            defined = {t for t in targets if t is not UNDEF}
            assert not defined or len(defined) == len(targets), \
                f"class {sorted(cls)} splits on definedness of letter {a}"
            if not defined:
                row.append(UNDEF)
            else:
                tclasses = {class_of[t] for t in defined}
                assert len(tclasses) == 1, \
                    f"class {sorted(cls)} maps into several classes on letter {a}"
                row.append(tclasses.pop())
        table.append(tuple(row))
    return tuple(table)


def _pair_levels(qtable, kappa_, k):
    """BFS over class pairs: shortest definedness-separating word lengths.

    Returns {(c1, c2): (letter, level)} for c1 < c2; every pair of distinct
    classes is separated, so every pair gets an entry.
    """
    levels = {}
    queue = deque()
    for c1 in range(kappa_):
        for c2 in range(c1 + 1, kappa_):
            for a in range(k):
                if (qtable[c1][a] is UNDEF) != (qtable[c2][a] is UNDEF):
                    levels[(c1, c2)] = (a, 1)
                    queue.append((c1, c2))
                    break
    inv = [[[] for _ in range(kappa_)] for _ in range(k)]
    for c in range(kappa_):
        for a in range(k):
            t = qtable[c][a]
            if t is not UNDEF:
                inv[a][t].append(c)
    while queue:
        d1, d2 = queue.popleft()
        lvl = levels[(d1, d2)][1]
        for a in range(k):
            for p1 in inv[a][d1]:
                for p2 in inv[a][d2]:
                    if p1 == p2:
                        continue
                    key = (min(p1, p2), max(p1, p2))
                    if key not in levels:
                        levels[key] = (a, lvl + 1)
                        queue.append(key)
    return levels


def inseparability_partition(dfa: PartialDfa) -> Partition:
    blocks = _hopcroft_classes(dfa)
    blocks.sort(key=min)
    classes = tuple(frozenset(b) for b in blocks)
    class_of = [0] * dfa.n
    for cid, cls in enumerate(classes):
        for q in cls:
            class_of[q] = cid
    qtable = _quotient_table(dfa, class_of, classes)
    levels = _pair_levels(qtable, len(classes), len(dfa.alphabet))
    assert len(levels) == len(classes) * (len(classes) - 1) // 2, \
        "distinct classes must all be separable"
    return Partition(tuple(class_of), classes, levels)


def refinement_levels(dfa: PartialDfa):
    """Moore-style chain of level-k partitions, coarsest first.

    Level-k classes group states whose word actions of length <= k agree on
    definedness.  The chain is strictly refining until it stabilizes at the
    inseparability partition; the stable partition is the last element.
    """
    k = len(dfa.alphabet)
    class_of = [0] * dfa.n
    chain = [class_of]
    while True:
        sig = {}
        nxt = [0] * dfa.n
        for q in range(dfa.n):
            key = (class_of[q],
                   tuple(UNDEF if dfa.trans[q][a] is UNDEF else class_of[dfa.trans[q][a]]
                         for a in range(k)))
            nxt[q] = sig.setdefault(key, len(sig))
        if nxt == class_of:
            break
        class_of = nxt
        chain.append(class_of)
    out = []
    for levels in chain:
        groups = {}
        for q, c in enumerate(levels):
            groups.setdefault(c, set()).add(q)
        out.append(tuple(sorted((frozenset(g) for g in groups.values()), key=min)))
    return out


def separating_word(dfa: PartialDfa, part: Partition, p: int, q: int) -> Word:
    """A word killing exactly one of p, q; length = separation level.

    Reconstructed from the stored witnesses: the letter alone when the
    definedness of the two classes differs on it, otherwise the letter
    followed by a deeper witness.
    """
    c1, c2 = part.class_of[p], part.class_of[q]
    if c1 == c2:
        raise InputError(f"states {p} and {q} are inseparable")
    out = []
    while True:
        a, lvl = part.levels[(min(c1, c2), max(c1, c2))]
        out.append(a)
        if lvl == 1:
            return tuple(out)
        c1 = part.class_of[dfa.trans[min(part.classes[c1])][a]]
        c2 = part.class_of[dfa.trans[min(part.classes[c2])][a]]


def kappa(part: Partition, S) -> int:
    return part.kappa(S)


def class_reducing_word(dfa: PartialDfa, part: Partition, S) -> Word:
    """A word w with 1 <= kappa(image(S, w)) < kappa(S).

    Picks, among state pairs of S lying in distinct classes, one separated at
    the minimal level (ties by state order) and emits its witness word, so
    |w| <= min(kappa(Q) - kappa(S) + 1, n - |S| + 1).
    """
    S = frozenset(S)
    if part.kappa(S) < 2:
        raise InputError("subset intersects fewer than two classes")
    best = None
    for p in sorted(S):
        for q in sorted(S):
            if q <= p or part.class_of[p] == part.class_of[q]:
                continue
            lvl = part.level(part.class_of[p], part.class_of[q])
            if best is None or (lvl, p, q) < best:
                best = (lvl, p, q)
    w = separating_word(dfa, part, best[1], best[2])
    img = dfa.image(S, w)
    assert img and part.kappa(img) < part.kappa(S), "voiding word failed"
    return w


def collapse_to_single_class_word(dfa: PartialDfa, part: Partition, S) -> Word:
    """Iterate class_reducing_word until the image sits in one class."""
    S = frozenset(S)
    if not S:
        raise InputError("empty subset")
    out = []
    while part.kappa(S) >= 2:
        w = class_reducing_word(dfa, part, S)
        out.extend(w)
        S = dfa.image(S, w)
    return tuple(out)


def quotient(dfa: PartialDfa, part: Partition) -> tuple[PartialDfa, tuple[int, ...]]:
    """The automaton on inseparability classes, plus the state->class map."""
    qtable = _quotient_table(dfa, part.class_of, part.classes)
    qdfa = PartialDfa(len(part.classes), dfa.alphabet, qtable)
    return qdfa, part.class_of
