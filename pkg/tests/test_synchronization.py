import pytest

from syncword import (EPSILON, InputError, NotStronglyConnected,
                      NotSynchronizing, duplicating, gen_cerny,
                      gen_oneword_code, gen_random_partial, greedy_min_rank,
                      is_synchronizing, literal_automaton,
                      min_rank_word_via_fixing, pair_table, pair_word,
                      parse_dfa, rank_target_word, reduction_to_complete,
                      reset_word_via_collecting, subset_bfs, validate_code)
from syncword.automaton import GAMMA_TOKEN


# -------------------------------------------------------------- pair table

def test_pair_table_fig1(fig1):
    table = pair_table(fig1)
    assert table.all_compressible()
    # frozen distances from an independent word-enumeration oracle
    expected = {(0, 1): 2, (0, 2): 1, (0, 3): 1, (0, 4): 2, (0, 5): 1,
                (1, 2): 1, (1, 3): 2, (1, 4): 3, (1, 5): 1, (2, 3): 1,
                (2, 4): 1, (2, 5): 2, (3, 4): 2, (3, 5): 1, (4, 5): 1}
    assert table.dist == expected
    # {q3, q6}: both dying under b is no compression, so distance is 2
    assert table.distance(2, 5) == 2
    # the only merge-type pair: {q1, q4} collide at q1 under b
    w = pair_word(fig1, table, 0, 3)
    assert w == fig1.word("b")
    assert fig1.image({0, 3}, w) == {0}


def test_pair_words_compress(fig1):
    table = pair_table(fig1)
    for (p, q), d in table.dist.items():
        w = pair_word(fig1, table, p, q)
        assert len(w) == d
        assert len(fig1.image({p, q}, w)) == 1


def test_pair_table_complete_dfa_merge_only():
    c4 = gen_cerny(4)
    table = pair_table(c4)
    assert table.all_compressible()
    for (p, q), d in table.dist.items():
        if d == 1:
            a = table.letter[(p, q)]
            assert c4.trans[p][a] == c4.trans[q][a]


def test_pair_table_matches_word_enumeration():
    from itertools import product
    for seed in range(15):
        dfa = gen_random_partial(3 + seed % 4, 2, 0.7, seed + 31)
        table = pair_table(dfa)
        brute = {}
        for length in range(0, 9):
            for w in product(range(2), repeat=length):
                for p in range(dfa.n):
                    for q in range(p + 1, dfa.n):
                        if (p, q) in brute:
                            continue
                        if len(dfa.image({p, q}, w)) == 1:
                            brute[(p, q)] = length
        for key, d in brute.items():
            assert table.dist.get(key) == d


# --------------------------------------------------------- is_synchronizing

def test_is_synchronizing_examples(fig1):
    assert is_synchronizing(fig1)
    one = parse_dfa("dfa v1\nstates 1\nalphabet a\n0 a 0\n")
    assert is_synchronizing(one)
    lit = literal_automaton(validate_code(["aa"]))
    assert not is_synchronizing(lit.dfa)


def test_is_synchronizing_rejects_non_strongly_connected():
    line = parse_dfa("dfa v1\nstates 2\nalphabet a\n0 a 1\n")
    with pytest.raises(NotStronglyConnected):
        is_synchronizing(line)


# ------------------------------------------------------------------- greedy

def test_greedy_fig1(fig1):
    res = greedy_min_rank(fig1)
    assert res.final_rank == 1
    assert fig1.rank(res.word) == 1
    assert len(res.word) >= 3  # bab is the unique shortest reset word
    assert res.replay(fig1)


def test_greedy_cerny_family():
    for n in range(2, 9):
        cn = gen_cerny(n)
        res = greedy_min_rank(cn)
        assert res.final_rank == 1
        assert len(res.word) >= (n - 1) ** 2
        assert cn.rank(res.word) == 1


def test_greedy_oneword_example():
    lit = literal_automaton(gen_oneword_code(2))
    res = greedy_min_rank(lit.dfa)
    assert res.final_rank == 1
    assert subset_bfs(lit.dfa).reset_threshold == 3  # a^{k+1} with k=2


def test_greedy_trace_strictly_decreases():
    for seed in range(25):
        dfa = gen_random_partial(3 + seed % 6, 2, 0.7, seed + 17)
        res = greedy_min_rank(dfa)
        sizes = [dfa.n] + [s for s, _ in res.trace]
        assert all(a > b for a, b in zip(sizes, sizes[1:]))
        assert res.replay(dfa)


def test_greedy_matches_oracle_min_rank():
    for seed in range(60):
        dfa = gen_random_partial(2 + seed % 7, 2, 0.6 + (seed % 4) * 0.1,
                                 seed + 1000)
        res = greedy_min_rank(dfa)
        assert res.final_rank == subset_bfs(dfa).min_nonzero_rank
        assert dfa.rank(res.word) == res.final_rank


# ------------------------------------------------------- fixing-based route

def test_fixing_route_complete_input():
    # fixing a complete automaton changes nothing, so the pipeline collapses
    # to plain greedy compression
    c4 = gen_cerny(4)
    res = min_rank_word_via_fixing(c4)
    assert res.final_rank == 1
    assert res.word == greedy_min_rank(c4).word


def test_fixing_route_fig1(fig1):
    res = min_rank_word_via_fixing(fig1)
    assert res.final_rank == 1
    assert fig1.rank(res.word) == 1


def test_fixing_route_matches_oracle():
    for seed in range(40):
        dfa = gen_random_partial(2 + seed % 7, 2, 0.65 + (seed % 3) * 0.1,
                                 seed + 2000)
        res = min_rank_word_via_fixing(dfa)
        assert res.final_rank == subset_bfs(dfa).min_nonzero_rank
        assert dfa.rank(res.word) == res.final_rank
        assert res.final_rank == greedy_min_rank(dfa).final_rank


# -------------------------------------------------------------- reduction

def test_reduction_fig1(fig1):
    complete, tree = reduction_to_complete(fig1)
    assert complete.alphabet == ("a", "b", GAMMA_TOKEN)
    assert complete.n == 6
    # all classes have size 2; the tie goes to the class holding state 0
    assert tree.root_class == 0
    assert is_synchronizing(complete)


def test_reduction_keeps_fixing_part_on_complete_input():
    c4 = gen_cerny(4)
    complete, _ = reduction_to_complete(c4)
    assert complete.alphabet == ("a", "b", GAMMA_TOKEN)
    assert all(complete.trans[q][:2] == c4.trans[q] for q in range(4))


def test_reduction_equivalence_random():
    for seed in range(50):
        dfa = gen_random_partial(2 + seed % 7, 2, 0.6 + (seed % 4) * 0.1,
                                 seed + 3000)
        complete, _ = reduction_to_complete(dfa)
        lhs = is_synchronizing(dfa)
        assert lhs == is_synchronizing(complete)
        assert lhs == (subset_bfs(dfa).reset_threshold is not None)
        assert is_synchronizing(complete) == \
            (subset_bfs(complete).reset_threshold is not None)


# ------------------------------------------------------- collecting route

def test_collecting_route_fig1(fig1):
    w = reset_word_via_collecting(fig1)
    assert fig1.rank(w) == 1


def test_collecting_route_complete_synchronizing():
    # one class only: the collapse and connecting parts are empty and the
    # collecting letter never helps, so the word stays on the base alphabet
    c4 = gen_cerny(4)
    w = reset_word_via_collecting(c4)
    assert c4.rank(w) == 1
    assert all(a < 2 for a in w)


def test_collecting_route_rejects_nonsynchronizing():
    lit = literal_automaton(validate_code(["abab"]))
    with pytest.raises(NotSynchronizing):
        reset_word_via_collecting(lit.dfa)


def test_collecting_route_random():
    for seed in range(40):
        dfa = gen_random_partial(2 + seed % 7, 2, 0.7 + (seed % 3) * 0.1,
                                 seed + 4000)
        if not is_synchronizing(dfa):
            continue
        w = reset_word_via_collecting(dfa)
        assert dfa.rank(w) == 1


# ------------------------------------------------------------- rank target

def test_rank_target_trivial(fig1):
    assert rank_target_word(fig1, 6) == EPSILON


def test_rank_target_reset(fig1):
    w = rank_target_word(fig1, 1)
    assert fig1.rank(w) == 1


def test_rank_target_skips_unreachable_sizes(fig1):
    # no word of rank exactly 2 exists here; rank 1 satisfies the target
    w = rank_target_word(fig1, 2)
    assert 0 < fig1.rank(w) <= 2


def test_rank_target_oracle_mode_duplicating():
    c4 = gen_cerny(4)
    dup = duplicating(c4)
    w = rank_target_word(dup, 2, method="oracle")
    assert dup.rank(w) == 2
    assert len(w) == 2 * subset_bfs(c4).length(2)


def test_rank_target_unreachable_rank():
    lit = literal_automaton(validate_code(["abab"]))  # minimal non-zero rank 2
    with pytest.raises(InputError):
        rank_target_word(lit.dfa, 1)
    with pytest.raises(InputError):
        rank_target_word(lit.dfa, 1, method="oracle")


def test_rank_target_range_check(fig1):
    with pytest.raises(InputError):
        rank_target_word(fig1, 0)
    with pytest.raises(InputError):
        rank_target_word(fig1, 7)
