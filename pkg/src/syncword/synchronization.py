"""Synchronizability, greedy minimum-rank words and the reduction to the
complete case.

A pair of states can compress in two ways: both map to the same state, or
exactly one of them dies.  A single backward BFS over the pair graph with a
virtual "compressed" target covers both modes in one O(|Sigma| n^2) pass;
greedy repetition of shortest pair words then reaches the minimal non-zero
rank on any strongly connected partial automaton.

Only strongly connected input is accepted: without it even deciding the
existence of a reset word is intractable, so it is rejected rather than
attempted.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .automaton import (EPSILON, UNDEF, PartialDfa, Word, connecting_word,
                        is_strongly_connected)
from .constructions import (CollectingTree, collecting, collecting_tree,
                            fixing, lift_word_to_partial, strip_gamma)
from .equivalence import (Partition, class_reducing_word,
                          collapse_to_single_class_word,
                          inseparability_partition, quotient)
from .errors import InputError, NotStronglyConnected, NotSynchronizing


@dataclass(frozen=True)
class PairTable:
    """Distance-to-compression and first letters for unordered state pairs.

    dist[(p, q)] (p < q) is the length of a shortest word compressing the
    pair; pairs admitting no such word are absent.  letter[(p, q)] is the
    first letter of one such word.
    """

    n: int
    dist: dict
    letter: dict

    def distance(self, p: int, q: int):
        return self.dist.get((min(p, q), max(p, q)))

    def all_compressible(self) -> bool:
        return len(self.dist) == self.n * (self.n - 1) // 2


def pair_table(dfa: PartialDfa) -> PairTable:
    n, k = dfa.n, len(dfa.alphabet)
    dist = {}
    letter = {}
    queue = deque()

    # distance-1 seeds: merge, or exactly one of the two dying
    for p in range(n):
        for q in range(p + 1, n):
            for a in range(k):
                tp, tq = dfa.trans[p][a], dfa.trans[q][a]
                if (tp is UNDEF) != (tq is UNDEF) or (tp is not UNDEF and tp == tq):
                    dist[(p, q)] = 1
                    letter[(p, q)] = a
                    queue.append((p, q))
                    break

    inv = [[[] for _ in range(n)] for _ in range(k)]
    for q in range(n):
        for a in range(k):
            t = dfa.trans[q][a]
            if t is not UNDEF:
                inv[a][t].append(q)

    while queue:
        tp, tq = queue.popleft()
        d = dist[(tp, tq)]
        for a in range(k):
            for p in inv[a][tp]:
                for q in inv[a][tq]:
                    if p == q:
                        continue
                    key = (min(p, q), max(p, q))
                    if key not in dist:
                        dist[key] = d + 1
                        letter[key] = a
                        queue.append(key)
    return PairTable(n, dist, letter)


def pair_word(dfa: PartialDfa, table: PairTable, p: int, q: int) -> Word:
    """The shortest compressing word recorded for {p, q}."""
    key = (min(p, q), max(p, q))
    if key not in table.dist:
        raise InputError(f"pair {key} is not compressible")
    out = []
    while True:
        a = table.letter[key]
        out.append(a)
        if table.dist[key] == 1:
            return tuple(out)
        tp, tq = dfa.trans[key[0]][a], dfa.trans[key[1]][a]
        key = (min(tp, tq), max(tp, tq))


def is_synchronizing(dfa: PartialDfa) -> bool:
    """True iff some word has rank 1; requires strong connectivity."""
    if not is_strongly_connected(dfa):
        raise NotStronglyConnected(
            "synchronizability is only decided for strongly connected automata")
    if dfa.n == 1:
        return True
    return pair_table(dfa).all_compressible()


@dataclass(frozen=True)
class SyncResult:
    """A produced word with its measured rank and the greedy trace.

    Each trace entry is (subset size after the step, sub-word applied);
    replaying the trace from the full state set reproduces word and
    final_rank.
    """

    word: Word
    final_rank: int
    trace: tuple

    def replay(self, dfa: PartialDfa) -> bool:
        S = dfa.states
        acc = []
        for size, sub in self.trace:
            S = dfa.image(S, sub)
            acc.extend(sub)
            if len(S) != size:
                return False
        return tuple(acc) == self.word and len(S) == self.final_rank


def _min_pair(table: PairTable, S):
    """Compressible pair of S minimizing (distance, p, q), or None."""
    best = None
    states = sorted(S)
    for i, p in enumerate(states):
        for q in states[i + 1:]:
            d = table.dist.get((p, q))
            if d is not None and (best is None or (d, p, q) < best):
                best = (d, p, q)
    return best


def greedy_min_rank(dfa: PartialDfa) -> SyncResult:
    """Repeatedly apply a shortest word compressing a pair of the current
    image, starting from the full set; stops at the minimal non-zero rank.
    """
    if not is_strongly_connected(dfa):
        raise NotStronglyConnected("greedy compression needs strong connectivity")
    table = pair_table(dfa)
    S = dfa.states
    word = []
    trace = []
    while True:
        best = _min_pair(table, S)
        if best is None:
            break
        sub = pair_word(dfa, table, best[1], best[2])
        S = dfa.image(S, sub)
        word.extend(sub)
        trace.append((len(S), sub))
    return SyncResult(tuple(word), len(S), tuple(trace))


def min_rank_word_via_fixing(dfa: PartialDfa) -> SyncResult:
    """Minimum-rank word through the fixing automaton.

    Pipeline: greedy word on the fixing automaton, lifted back to the
    partial automaton, then while the image spans several inseparability
    classes shrink their number with voiding words, and finally compress
    pairs inside the single remaining class.
    """
    if not is_strongly_connected(dfa):
        raise NotStronglyConnected("needs strong connectivity")
    fixed_word = greedy_min_rank(fixing(dfa)).word
    lifted = lift_word_to_partial(dfa, dfa.states, fixed_word)
    S = dfa.image(dfa.states, lifted)
    word = list(lifted)
    trace = [(len(S), lifted)]
    part = inseparability_partition(dfa)
    table = pair_table(dfa)
    while True:
        if part.kappa(S) >= 2:
            sub = class_reducing_word(dfa, part, S)
        else:
            best = _min_pair(table, S)
            if best is None:
                break
            sub = pair_word(dfa, table, best[1], best[2])
        S = dfa.image(S, sub)
        word.extend(sub)
        trace.append((len(S), sub))
    return SyncResult(tuple(word), len(S), tuple(trace))


def _smallest_class(part: Partition) -> int:
    return min(range(len(part.classes)),
               key=lambda c: (len(part.classes[c]), min(part.classes[c])))


def reduction_to_complete(dfa: PartialDfa) -> tuple[PartialDfa, CollectingTree]:
    """Complete automaton that is synchronizing iff dfa is.

    The collecting automaton for the deterministic tree rooted at the
    smallest inseparability class (ties by least state id).
    """
    if not is_strongly_connected(dfa):
        raise NotStronglyConnected("reduction needs strong connectivity")
    part = inseparability_partition(dfa)
    tree = collecting_tree(dfa, part, _smallest_class(part))
    return collecting(dfa, tree), tree


def reset_word_via_collecting(dfa: PartialDfa) -> Word:
    """Reset word assembled as collapse-word, quotient connecting word, and a
    stripped reset word of the collecting automaton.
    """
    if not is_synchronizing(dfa):  # also rejects non-strongly-connected
        raise NotSynchronizing("automaton is not synchronizing")
    coll, tree = reduction_to_complete(dfa)
    part = tree.partition

    v = collapse_to_single_class_word(dfa, part, dfa.states)
    S = dfa.image(dfa.states, v)
    p_class = part.class_of[min(S)]

    qdfa, _ = quotient(dfa, part)
    u = connecting_word(qdfa, p_class, tree.root_class)
    S = dfa.image(S, u)

    coll_result = greedy_min_rank(coll)
    assert coll_result.final_rank == 1, "collecting automaton must be synchronizing"
    w = strip_gamma(dfa, tree, coll_result.word)

    out = v + u + w
    assert dfa.rank(out) == 1, "pipeline must emit a reset word"
    return out


def rank_target_word(dfa: PartialDfa, r: int, method: str = "greedy") -> Word:
    """A word of non-zero rank <= r, or an error when r is unreachable.

    greedy: shortest prefix of the greedy minimum-rank word that reaches the
    target.  oracle: exact witness by subset BFS (small n only).
    """
    if not is_strongly_connected(dfa):
        raise NotStronglyConnected("needs strong connectivity")
    if not 1 <= r <= dfa.n:
        raise InputError(f"target rank must be in 1..{dfa.n}")
    if r == dfa.n:
        return EPSILON
    if method == "greedy":
        result = greedy_min_rank(dfa)
        S = dfa.states
        for i, a in enumerate(result.word):
            S = dfa.image(S, (a,))
            if len(S) <= r:
                return result.word[:i + 1]
        raise InputError(
            f"minimal non-zero rank is {result.final_rank}, above target {r}")
    if method == "oracle":
        from .oracle import subset_bfs
        report = subset_bfs(dfa)
        options = [(report.length(s), s) for s in range(1, r + 1) if report.reachable(s)]
        if not options:
            raise InputError(f"no word of non-zero rank <= {r} exists")
        _, s = min(options)
        return report.witness(s)
    raise InputError(f"unknown method {method!r}")
