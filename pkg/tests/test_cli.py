import subprocess
import sys

from syncword import parse_dfa, parse_code
from syncword.cli import run

from conftest import FIXTURES

FIG1 = str(FIXTURES / "fig1left.dfa")
LIT_ABAB = str(FIXTURES / "lit-abab.dfa")
DECODER = str(FIXTURES / "fig1right.code")


def test_no_args_is_usage_error():
    assert run([]) == 2


def test_unknown_command_is_usage_error():
    assert run(["frobnicate"]) == 2


def test_missing_file_is_input_error(capsys):
    assert run(["sync", "check", "/nonexistent.dfa"]) == 2
    assert "error" in capsys.readouterr().err


def test_sync_check_positive(capsys):
    assert run(["sync", "check", FIG1]) == 0
    assert capsys.readouterr().out.strip() == "synchronizing"


def test_sync_check_negative(capsys):
    assert run(["sync", "check", LIT_ABAB]) == 1
    assert "minimal non-zero rank 2" in capsys.readouterr().out


def test_sync_check_summary_format(capsys):
    assert run(["--format", "summary", "sync", "check", FIG1]) == 0
    assert capsys.readouterr().out.strip() == "synchronizing=true"


def test_sync_word_methods(capsys, fig1):
    for method in ("greedy", "fixing", "collecting", "oracle"):
        assert run(["sync", "word", FIG1, "--method", method]) == 0
        out = capsys.readouterr().out.splitlines()
        word = fig1.word(out[0])
        assert fig1.rank(word) == 1
        assert out[1] == f"rank=1 len={len(word)}"


def test_sync_word_on_nonsynchronizing(capsys):
    assert run(["sync", "word", LIT_ABAB]) == 1


def test_rank_min(capsys):
    assert run(["rank", "min", LIT_ABAB]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[1].startswith("rank=2")


def test_rank_word_target(capsys, fig1):
    assert run(["rank", "word", FIG1, "--target", "3"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert fig1.rank(fig1.word(out[0])) <= 3
    assert run(["rank", "word", LIT_ABAB, "--target", "1"]) == 2


def test_oracle_output(capsys):
    assert run(["oracle", FIG1]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "r=6 len=0 word=-"
    assert "r=3 len=1 word=b" in lines
    assert "r=1 len=3 word=b a b" in lines
    assert "r=0 len=5 word=b a b a b" in lines


def test_classes_output(capsys):
    assert run(["classes", FIG1]) == 0
    assert capsys.readouterr().out.splitlines() == ["0 3", "1 4", "2 5"]


def test_build_fixing_roundtrip(capsys, fig1):
    assert run(["build", "fixing", FIG1]) == 0
    dfa = parse_dfa(capsys.readouterr().out)
    assert dfa.trans[2][1] == 2 and dfa.trans[5][1] == 5


def test_build_collecting_emits_gamma(capsys):
    assert run(["build", "collecting", FIG1]) == 0
    out = capsys.readouterr().out
    dfa = parse_dfa(out, allow_gamma=True)
    assert dfa.alphabet == ("a", "b", "@g")


def test_build_duplicating_requires_complete(capsys):
    assert run(["build", "duplicating", FIG1]) == 2


def test_build_induced(capsys, fig1):
    w2 = ",".join(u + "a" * j for u in ("ab", "aab") for j in range(6))
    assert run(["build", "induced", FIG1, "--w1", "b", "--w2", w2]) == 0
    out = capsys.readouterr().out
    dfa = parse_dfa(out, allow_gamma=True)
    assert dfa.n == 3
    assert '"abb"' in dfa.alphabet


def test_verify_duplicating_on_cerny(capsys, tmp_path):
    assert run(["gen", "cerny", "--n", "4"]) == 0
    path = tmp_path / "c4.dfa"
    path.write_text(capsys.readouterr().out)
    assert run(["verify", "duplicating", str(path)]) == 0
    out = capsys.readouterr().out
    assert "r=1 base=9 duplicated=18" in out
    assert "identity holds" in out


def test_search_extremal(capsys):
    assert run(["search", "extremal", "--n", "3", "--exhaustive"]) == 0
    out = capsys.readouterr().out
    assert "best_rt=3" in out and "attained=true" in out


def test_search_extremal_seeded(capsys):
    assert run(["--format", "summary", "search", "extremal", "--n", "3",
                "--seed", "5", "--trials", "200"]) == 0
    out = capsys.readouterr().out
    assert "target=3" in out


def test_code_validate(capsys):
    assert run(["code", "validate", DECODER]) == 0
    assert "4 words" in capsys.readouterr().out


def test_code_literal_roundtrip(capsys):
    assert run(["code", "literal", DECODER]) == 0
    dfa = parse_dfa(capsys.readouterr().out)
    assert dfa.n == 6


def test_code_logrank(capsys):
    assert run(["code", "logrank", DECODER]) == 0
    out = capsys.readouterr().out.splitlines()
    assert "bound=7" in out[1]


def test_code_reset(capsys, decoder_lit):
    assert run(["code", "reset", DECODER]) == 0
    out = capsys.readouterr().out.splitlines()
    word = decoder_lit.dfa.word(out[0])
    assert decoder_lit.dfa.rank(word) == 1


def test_code_reset_nonsynchronizing(capsys, tmp_path):
    path = tmp_path / "abab.code"
    path.write_text("abab\n")
    assert run(["code", "reset", str(path)]) == 1


def test_code_oneword(capsys):
    assert run(["code", "oneword", "aabaaab"]) == 0
    out = capsys.readouterr().out
    assert "power=1" in out and "reset_word=a a a len=3" in out
    assert run(["code", "oneword", "abab"]) == 1
    assert "not synchronizing" in capsys.readouterr().out


def test_gen_roundtrips(capsys):
    assert run(["gen", "cerny", "--n", "5"]) == 0
    assert parse_dfa(capsys.readouterr().out).n == 5
    assert run(["gen", "oneword", "--k", "2"]) == 0
    assert parse_code(capsys.readouterr().out).words == ("aabaaab",)
    assert run(["gen", "random-dfa", "--n", "6", "--alpha", "2",
                "--density", "0.9", "--seed", "42"]) == 0
    assert parse_dfa(capsys.readouterr().out).n == 6
    assert run(["gen", "random-code", "--count", "3", "--maxlen", "4",
                "--alpha", "2", "--seed", "1"]) == 0
    assert len(parse_code(capsys.readouterr().out).words) == 3


def test_verify_all_quick(capsys):
    assert run(["verify", "all", "--size-cap", "5", "--seed", "1"]) == 0
    lines = capsys.readouterr().out.splitlines()
    names = [line.split()[0] for line in lines]
    assert names == sorted(names)
    assert all("status=ok" in line for line in lines)


def test_fully_undefined_letter_flagged(capsys, tmp_path):
    path = tmp_path / "dead.dfa"
    path.write_text("dfa v1\nstates 1\nalphabet a b\n0 a 0\n")
    assert run(["sync", "check", str(path)]) == 0
    assert "no defined transition: b" in capsys.readouterr().err


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "syncword.cli", "sync",
                           "check", FIG1], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "synchronizing"
