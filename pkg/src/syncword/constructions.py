"""Automaton transformations: fixing, collecting, induced, duplicating.

fixing completes a partial automaton by turning undefined transitions into
self-loops; collecting additionally adds a letter that walks every state's
class down a tree of classes into a chosen root class; induced restricts to
the image of a word set with composite letters; duplicating doubles every
rank threshold while making the automaton properly incomplete.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .automaton import (GAMMA_TOKEN, UNDEF, PartialDfa, Word,
                        is_complete, is_strongly_connected)
from .equivalence import Partition, quotient
from .errors import InputError, NotStronglyConnected


def fixing(dfa: PartialDfa) -> PartialDfa:
    """Complete automaton: undefined transitions become self-loops."""
    table = tuple(tuple(q if t is UNDEF else t for t in row)
                  for q, row in enumerate(dfa.trans))
    return PartialDfa(dfa.n, dfa.alphabet, table)


def lift_word_to_partial(dfa: PartialDfa, S, w: Word) -> Word:
    """A subword w' of w with empty != image(S, w') <= image_fixing(S, w).

    Letter-by-letter filter: drop a letter exactly when the whole current
    image would die under it (those states are the ones the fixing automaton
    holds in place).
    """
    cur = frozenset(S)
    if not cur:
        raise InputError("empty subset")
    out = []
    for a in w:
        nxt = dfa.image(cur, (a,))
        if nxt:
            out.append(a)
            cur = nxt
    return tuple(out)


@dataclass(frozen=True)
class CollectingTree:
    """Tree on inseparability classes directed toward a root class.

    parent maps every non-root class id to (letter, parent class id), where
    the quotient moves the class to its parent under the letter.
    """

    root_class: int
    parent: dict
    partition: Partition


def collecting_tree(dfa: PartialDfa, part: Partition, root_class: int) -> CollectingTree:
    """Breadth-first tree in the reversed quotient digraph from root_class.

    Deterministic: predecessors are scanned in (letter, class) order.
    """
    if not is_strongly_connected(dfa):
        raise NotStronglyConnected("collecting tree needs a strongly connected automaton")
    qdfa, _ = quotient(dfa, part)
    if not 0 <= root_class < qdfa.n:
        raise InputError(f"no class {root_class}")
    parent = {}
    seen = {root_class}
    queue = deque([root_class])
    while queue:
        target = queue.popleft()
        for a in range(len(qdfa.alphabet)):
            for c in range(qdfa.n):
                if c not in seen and qdfa.trans[c][a] == target:
                    parent[c] = (a, target)
                    seen.add(c)
                    queue.append(c)
    assert len(seen) == qdfa.n, "quotient of a strongly connected automaton is strongly connected"
    return CollectingTree(root_class, parent, part)


def collecting(dfa: PartialDfa, tree: CollectingTree) -> PartialDfa:
    """Complete automaton over the alphabet plus the collecting letter @g.

    On the original alphabet it acts as the fixing automaton; @g follows the
    tree edge of each state's class and is the identity on the root class,
    so @g^(n-1) maps everything into the root class.
    """
    if GAMMA_TOKEN in dfa.alphabet:
        raise InputError(f"alphabet already uses the reserved token {GAMMA_TOKEN!r}")
    part = tree.partition
    fixed = fixing(dfa)
    table = []
    for q in range(dfa.n):
        cls = part.class_of[q]
        if cls == tree.root_class:
            g = q
        else:
            a, _ = tree.parent[cls]
            g = dfa.trans[q][a]
            assert g is not UNDEF, "tree edge letter must be defined on the whole class"
        table.append(fixed.trans[q] + (g,))
    return PartialDfa(dfa.n, dfa.alphabet + (GAMMA_TOKEN,), tuple(table))


def strip_gamma(dfa: PartialDfa, tree: CollectingTree, w: Word) -> Word:
    """Rewrite a root-class-synchronizing word of the collecting automaton
    into one over the original alphabet that synchronizes the root class in
    the partial automaton itself.

    Processing left to right with the image's class tracked: @g is replaced
    by the tree letter of the current class, or dropped on the root class.
    Letters the current class would entirely die under are dropped as well
    (the collecting automaton holds those states in place), which keeps the
    output's action on the root class non-empty.  The output is never longer
    than the input.
    """
    part = tree.partition
    coll = collecting(dfa, tree)
    gamma = len(dfa.alphabet)
    root = frozenset(part.classes[tree.root_class])
    if len(coll.image(root, w)) != 1:
        raise InputError("word does not synchronize the root class in the collecting automaton")
    out = []
    cls = tree.root_class
    for a in w:
        if a == gamma:
            if cls == tree.root_class:
                continue
            a, cls = tree.parent[cls]
            out.append(a)
        else:
            rep = min(part.classes[cls])
            t = dfa.trans[rep][a]
            if t is not UNDEF:
                out.append(a)
                cls = part.class_of[t]
    assert len(dfa.image(root, tuple(out))) == 1
    return tuple(out)


@dataclass(frozen=True)
class InducedAutomaton:
    """Restriction of an automaton to R = image under W1, with one composite
    letter per distinct action of a W2 W1 product word.

    dfa re-indexes R densely; letters[i] is the product word the i-th
    composite letter stands for.
    """

    base: PartialDfa
    R: tuple[int, ...]
    letters: tuple[Word, ...]
    dfa: PartialDfa

    def local_state(self, base_state: int) -> int:
        return self.R.index(base_state)


def _composite_token(base: PartialDfa, w: Word) -> str:
    if not w:
        return '"-"'
    toks = [base.alphabet[a] for a in w]
    joined = "".join(toks) if all(len(t) == 1 for t in toks) else ".".join(toks)
    return f'"{joined}"'


def induced(dfa: PartialDfa, W1, W2) -> InducedAutomaton:
    """Induced automaton on R = union of image(Q, w1) with letters W2 W1.

    Product words with identical action on R are merged, keeping the
    shortest (then lexicographically least) representative: the product set
    can explode combinatorially while distinct actions cannot.
    """
    W1 = [tuple(w) for w in W1]
    W2 = [tuple(w) for w in W2]
    if not W1 or not W2:
        raise InputError("W1 and W2 must be non-empty")
    R = set()
    for w in W1:
        R |= dfa.image(dfa.states, w)
    if not R:
        raise InputError("image of W1 is empty")
    R = tuple(sorted(R))
    local = {q: i for i, q in enumerate(R)}

    by_action = {}
    for w2 in W2:
        for w1 in W1:
            word = w2 + w1
            action = tuple(dfa.run(q, word) for q in R)
            assert all(t is UNDEF or t in local for t in action), \
                "a W2 W1 word must map into R or die"
            key = (len(word), word)
            if action not in by_action or key < by_action[action][0]:
                by_action[action] = (key, action)
    chosen = sorted(by_action.values())
    letters = tuple(key[1] for key, _ in chosen)
    actions = [action for _, action in chosen]

    table = tuple(tuple(UNDEF if action[i] is UNDEF else local[action[i]]
                        for action in actions)
                  for i in range(len(R)))
    tokens = tuple(_composite_token(dfa, w) for w in letters)
    sub = PartialDfa(len(R), tokens, table)
    return InducedAutomaton(dfa, R, letters, sub)


def duplicating(dfa: PartialDfa) -> PartialDfa:
    """2n-state properly incomplete automaton with doubled rank thresholds.

    Original letters fix every unprimed state and act as the original on the
    primed copy; @g swaps into the primed copy and is undefined there.
    """
    if not is_complete(dfa):
        raise InputError("duplicating automaton is defined for complete automata")
    if GAMMA_TOKEN in dfa.alphabet:
        raise InputError(f"alphabet already uses the reserved token {GAMMA_TOKEN!r}")
    n, k = dfa.n, len(dfa.alphabet)
    table = []
    for q in range(n):
        table.append(tuple([q] * k) + (n + q,))
    for q in range(n):
        table.append(dfa.trans[q] + (UNDEF,))
    return PartialDfa(2 * n, dfa.alphabet + (GAMMA_TOKEN,), tuple(table))
