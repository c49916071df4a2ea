import pathlib

import pytest

from syncword import parse_dfa, parse_code, literal_automaton

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


def fixture_text(name):
    return (FIXTURES / name).read_text()


@pytest.fixture(scope="session")
def fig1():
    """The 6-state strongly connected partial binary automaton; states 0..5
    stand for q1..q6."""
    return parse_dfa(fixture_text("fig1left.dfa"))


@pytest.fixture(scope="session")
def decoder_lit():
    """Literal automaton of {abaaa, abaab, abab, abba} (6 states, height 4)."""
    return literal_automaton(parse_code(fixture_text("fig1right.code")))
