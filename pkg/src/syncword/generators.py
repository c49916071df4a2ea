"""Fixture families for tests and benchmarks.

Randomness flows through Lcg64, a fully specified 64-bit linear congruential
generator, so golden files stay portable across implementations.
"""
from __future__ import annotations

from .automaton import UNDEF, PartialDfa, is_strongly_connected
from .codes import PrefixCode, validate_code
from .errors import InputError


class Lcg64:
    """Knuth's MMIX linear congruential generator.

    state' = (6364136223846793005 * state + 1442695040888963407) mod 2^64,
    seeded with (seed + 1) so that seed 0 is usable.  below(b) maps the top
    32 bits through (x * b) >> 32; unit() uses the top 53 bits / 2^53.
    """

    MULT = 6364136223846793005
    INC = 1442695040888963407
    MASK = (1 << 64) - 1

    def __init__(self, seed: int = 0):
        self.state = (seed + 1) & self.MASK

    def next_u64(self) -> int:
        self.state = (self.MULT * self.state + self.INC) & self.MASK
        return self.state

    def below(self, bound: int) -> int:
        return ((self.next_u64() >> 32) * bound) >> 32

    def unit(self) -> float:
        return (self.next_u64() >> 11) / (1 << 53)


def gen_cerny(n: int) -> PartialDfa:
    """The classical slowly synchronizing cycle family: one letter rotates,
    the other merges state 0 into state 1; reset threshold (n-1)^2."""
    if n < 1:
        raise InputError("need at least one state")
    table = tuple((((q + 1) % n), (1 % n if q == 0 else q)) for q in range(n))
    return PartialDfa(n, ("a", "b"), table)


def gen_oneword_code(k: int) -> PrefixCode:
    """The tight one-word family {a^k b a^(k+1) b}: the literal automaton
    has 2k+3 states and reset threshold k+1."""
    if k < 1:
        raise InputError("k must be at least 1")
    return validate_code(["a" * k + "b" + "a" * (k + 1) + "b"])


def gen_random_partial(n: int, alpha: int, density: float, seed: int,
                       max_retries: int = 5000) -> PartialDfa:
    """Uniform transitions, each defined with the given probability,
    regenerated until strongly connected.

    Strong connectivity is rare for sparse tables (below one percent at
    n = 8, binary, density 0.6), hence the generous retry budget.
    """
    if not 0 < density <= 1:
        raise InputError("density must be in (0, 1]")
    if n < 1 or alpha < 1:
        raise InputError("need n >= 1 and alpha >= 1")
    letters = tuple(_letter_name(i) for i in range(alpha))
    rng = Lcg64(seed)
    for _ in range(max_retries):
        table = tuple(
            tuple(rng.below(n) if rng.unit() < density else UNDEF
                  for _ in range(alpha))
            for _ in range(n))
        dfa = PartialDfa(n, letters, table)
        if is_strongly_connected(dfa):
            return dfa
    raise InputError(
        f"no strongly connected automaton in {max_retries} tries; "
        "raise the density")


def gen_random_prefix_code(count: int, maxlen: int, alpha: int, seed: int,
                           max_retries: int = 1000) -> PrefixCode:
    """A prefix-free sample of the given size, deterministic per seed."""
    if count < 1 or maxlen < 1:
        raise InputError("need count >= 1 and maxlen >= 1")
    if alpha < 1:
        raise InputError("need alpha >= 1")
    if alpha == 1 and count > 1:
        raise InputError("a unary alphabet admits only one-word prefix codes")
    letters = [_letter_name(i) for i in range(alpha)]
    rng = Lcg64(seed)
    chosen: list[str] = []
    attempts = 0
    stalled = 0
    while len(chosen) < count:
        attempts += 1
        if attempts > max_retries * count:
            raise InputError("could not sample a prefix-free set; "
                             "raise maxlen or lower count")
        length = 1 + rng.below(maxlen)
        w = "".join(letters[rng.below(alpha)] for _ in range(length))
        if any(w.startswith(c) or c.startswith(w) for c in chosen):
            # early picks can block every completion (e.g. a short word
            # eating a whole subtree); restart rather than backtrack
            stalled += 1
            if stalled > 20 + 2 * count:
                chosen.clear()
                stalled = 0
            continue
        stalled = 0
        chosen.append(w)
    return validate_code(chosen)


def _letter_name(i: int) -> str:
    # a..z, then t26, t27, ...
    return chr(ord("a") + i) if i < 26 else f"t{i}"
