import pytest
from hypothesis import given, strategies as st

from opda.symbols import (CENT, DOLLAR, HASH, LAMBDA, NATURAL, WordError, column, column_alphabet,
                          count_upto, delete_natural, format_word, is_valid_token, parse_word,
                          split_column, track, untrack, words_upto)

ALPHA = ("0", "1", "a1", "a1'", "x", NATURAL, HASH)
tokens = st.sampled_from(ALPHA)
words = st.lists(tokens, max_size=8).map(tuple)


@pytest.mark.parametrize("tok", [CENT, DOLLAR, LAMBDA, "", "a b", "#x", "->", "-", ";", '"q"'])
def test_invalid_tokens(tok):
    assert not is_valid_token(tok)


@pytest.mark.parametrize("tok", ["0", "a1'", NATURAL, HASH, "[0,1]", "q.b0"])
def test_valid_tokens(tok):
    assert is_valid_token(tok)


def test_parse_word_forms():
    assert parse_word("") == ()
    assert parse_word("0101") == ("0", "1", "0", "1")
    assert parse_word("a1 a1'") == ("a1", "a1'")
    assert parse_word("a1a1'a1", {"a1", "a1'"}) == ("a1", "a1'", "a1")
    assert parse_word("0<natural>1") == ("0", NATURAL, "1")
    assert parse_word("[0,1][1,<natural>]") == ("[0,1]", "[1,<natural>]")
    with pytest.raises(WordError):
        parse_word("a2", {"a1", "a1'"})


@given(words)
def test_format_parse_round_trip(w):
    # a lone multi-character token is only recoverable against its alphabet
    assert parse_word(format_word(w), ALPHA) == w
    if all(len(t) == 1 for t in w) or len(w) > 1:
        assert parse_word(format_word(w)) == w


def test_words_upto_is_length_lex():
    got = list(words_upto(("1", "0"), 2))
    assert got == [(), ("0",), ("1",), ("0", "0"), ("0", "1"), ("1", "0"), ("1", "1")]
    assert len(list(words_upto("abc", 4))) == count_upto(3, 4) == 121


@given(words)
def test_delete_natural(w):
    out = delete_natural(w)
    assert NATURAL not in out
    assert len(out) == len(w) - w.count(NATURAL)


@given(st.lists(st.tuples(tokens, tokens, tokens), max_size=6))
def test_track_round_trip(cols):
    rows = tuple(tuple(c[i] for c in cols) for i in range(3))
    t = track(rows)
    assert len(t) == len(cols)
    assert untrack(t, 3) == rows


def test_track_errors():
    with pytest.raises(WordError):
        track([("0",), ("0", "1")])
    with pytest.raises(WordError):
        untrack(("[0,1]",), 3)
    with pytest.raises(WordError):
        split_column("01")


def test_column_alphabet():
    alpha = column_alphabet([("0", "1"), (NATURAL,)])
    assert alpha == {column(("0", NATURAL)), column(("1", NATURAL))}
    assert split_column(column(("a1'", NATURAL))) == ("a1'", NATURAL)
