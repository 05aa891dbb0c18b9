"""Tokens, words and track columns.

A word is a tuple of string tokens.  Reserved tokens name the endmarkers,
the empty move, the padding symbol and the hash separator.
"""

import itertools
import re

CENT = "<cent>"
DOLLAR = "<dollar>"
LAMBDA = "<lambda>"
NATURAL = "<natural>"
HASH = "<hash>"

RESERVED = frozenset([CENT, DOLLAR, LAMBDA, NATURAL, HASH])
# padding and separator may be declared as ordinary alphabet members
NEVER_IN_ALPHABET = frozenset([CENT, DOLLAR, LAMBDA])

_TOKEN_RE = re.compile(r"<[^<>\s]+>|\[[^\[\]\s]*\]|\S")


class WordError(ValueError):
    pass


def is_valid_token(tok):
    if not tok or any(c.isspace() for c in tok):
        return False
    if tok in NEVER_IN_ALPHABET:
        return False
    if tok.startswith("#") or tok in ("-", "->", ";"):
        return False
    return '"' not in tok and "(" not in tok and ")" not in tok


def parse_word(text, alphabet=None):
    """Split text into tokens.

    Whitespace separates tokens when present.  Otherwise the text is cut
    greedily against the alphabet, or character by character (keeping
    ``<...>`` and ``[...]`` groups whole) when no alphabet is known.
    """
    if isinstance(text, tuple):
        return text
    if isinstance(text, list):
        return tuple(text)
    text = text.strip()
    if not text:
        return ()
    if any(c.isspace() for c in text):
        return tuple(text.split())
    if alphabet:
        if text in alphabet:
            return (text,)
        toks = sorted(alphabet, key=len, reverse=True)
        out, i = [], 0
        while i < len(text):
            for t in toks:
                if text.startswith(t, i):
                    out.append(t)
                    i += len(t)
                    break
            else:
                raise WordError("cannot split %r over alphabet at offset %d" % (text, i))
        return tuple(out)
    return tuple(_TOKEN_RE.findall(text))


def format_word(word):
    """Inverse of parse_word: run single characters together, else space them."""
    if all(len(t) == 1 for t in word):
        return "".join(word)
    return " ".join(word)


def spaced(word):
    return " ".join(word)


def delete_natural(word):
    return tuple(t for t in word if t != NATURAL)


def reverse(word):
    return tuple(reversed(word))


def words_upto(alphabet, max_len):
    """All words of length <= max_len in length-lexicographic order."""
    alphabet = sorted(alphabet)
    for n in range(max_len + 1):
        for w in itertools.product(alphabet, repeat=n):
            yield w


def count_upto(size, max_len):
    return sum(size ** n for n in range(max_len + 1))


# track columns -------------------------------------------------------------

def column(parts):
    """Column token holding one symbol per track, e.g. ``[a1,<natural>]``."""
    return "[" + ",".join(parts) + "]"


def split_column(tok):
    if not (tok.startswith("[") and tok.endswith("]")):
        raise WordError("not a track column: %r" % tok)
    inner = tok[1:-1]
    return tuple(inner.split(",")) if inner else ()


def track(words):
    """Stack equal-length words into one word of column tokens."""
    lengths = {len(w) for w in words}
    if len(lengths) > 1:
        raise WordError("track words differ in length: %s" % sorted(lengths))
    return tuple(column(col) for col in zip(*words))


def untrack(word, width):
    rows = [[] for _ in range(width)]
    for tok in word:
        parts = split_column(tok)
        if len(parts) != width:
            raise WordError("column %r has width %d, expected %d" % (tok, len(parts), width))
        for i, p in enumerate(parts):
            rows[i].append(p)
    return tuple(tuple(r) for r in rows)


def column_alphabet(alphabets):
    return frozenset(column(c) for c in itertools.product(*[sorted(a) for a in alphabets]))
