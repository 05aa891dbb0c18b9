"""Example languages: a direct predicate next to a layered construction.

Each entry pairs a reference predicate, written with plain arithmetic and
string operations, with an oracle expression built from machines.  The
crosscheck compares the two on every string in a bounded sample space.
"""

from dataclasses import dataclass, field
import os
import time

from .oracles import Decider, load_expr, register_builtin
from .simulate import ResourceExceeded
from .symbols import HASH, format_word, words_upto

DATA = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data", "zoo")

EQUAL6_ALPHABET = ("a1", "a2", "a3", "a4", "a5", "a6", HASH)


def is_prime(n):
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            return False
        p += 1
    return True


def is_composite(n):
    return n >= 4 and not is_prime(n)


def is_semiprime(n):
    return any(n % p == 0 and is_prime(p) and is_prime(n // p) for p in range(2, n + 1))


def _unary(w):
    return all(t == "0" for t in w)


def ref_dup(k):
    def pred(w):
        n = len(w)
        if n % k:
            return False
        m = n // k
        return all(w[i * m:(i + 1) * m] == w[:m] for i in range(k))
    return pred


def ref_match(w):
    if w.count(HASH) != 1:
        return False
    i = w.index(HASH)
    x, rest = w[:i], w[i + 1:]
    return any(rest[j:j + len(x)] == x for j in range(len(rest) - len(x) + 1))


def ref_sq(w):
    i = 0
    while i < len(w) and w[i] == "0":
        i += 1
    if any(t != "1" for t in w[i:]):
        return False
    return i >= 1 and len(w) - i == i * i


def ref_dyck(opens):
    pairs = {o + "'": o for o in opens}

    def pred(w):
        # count-based for one pair, stack-based for more
        if len(opens) == 1:
            depth = 0
            for t in w:
                depth += 1 if t == opens[0] else -1
                if depth < 0:
                    return False
            return depth == 0
        stack = []
        for t in w:
            if t in pairs:
                if not stack or stack.pop() != pairs[t]:
                    return False
            else:
                stack.append(t)
        return not stack
    return pred


def ref_equal6(w):
    counts = [w.count(a) for a in EQUAL6_ALPHABET[:6]]
    return len(set(counts)) == 1


REFERENCES = {
    "dup2": ref_dup(2),
    "dup3": ref_dup(3),
    "match": ref_match,
    "sq": ref_sq,
    "comp": lambda w: _unary(w) and is_composite(len(w)),
    "prim": lambda w: _unary(w) and is_prime(len(w)),
    "mulprim": lambda w: _unary(w) and is_semiprime(len(w)),
    "dyck1": ref_dyck(("a1",)),
    "dyck2": ref_dyck(("a1", "a2")),
    "empty": lambda w: False,
    "equal6": ref_equal6,
}


# sample spaces ---------------------------------------------------------------------

def all_words(alphabet):
    return lambda max_len: words_upto(alphabet, max_len)


def unary_words(max_len):
    return (("0",) * n for n in range(max_len + 1))


def match_words(max_len):
    # |x w| <= max_len, plus the separator
    return words_upto(("0", "1", HASH), max_len + 1)


def sq_words(max_len):
    """Every binary string up to length 10 and every 0^a 1^b up to max_len."""
    seen = set(words_upto(("0", "1"), min(max_len, 10)))
    for n in range(max_len + 1):
        for a in range(n + 1):
            seen.add(("0",) * a + ("1",) * (n - a))
    return sorted(seen, key=lambda w: (len(w), w))


@dataclass(frozen=True)
class ZooEntry:
    name: str
    alphabet: tuple
    expr_file: str
    test_max_len: int
    description: str
    space: object = field(default=None, compare=False)

    @property
    def reference(self):
        return REFERENCES[self.name.replace("_machine", "")]

    def words(self, max_len=None):
        n = self.test_max_len if max_len is None else max_len
        return (self.space or all_words(self.alphabet))(n)


BIN = ("0", "1")
DYCK1 = ("a1", "a1'")
DYCK2 = ("a1", "a1'", "a2", "a2'")

ENTRIES = {e.name: e for e in [
    ZooEntry("dup2", BIN, "dup2.expr", 10, "{xx}: split reverser into the x^R # y checker"),
    ZooEntry("dup3", BIN, "dup3.expr", 10,
             "{xxx}: x^R # y # y^R # z checked in two stack phases"),
    ZooEntry("match", BIN + (HASH,), "match.expr", 8,
             "{x <hash> w : x is a factor of w}: guessed factor against x^R",
             space=match_words),
    ZooEntry("sq", BIN, "sq.expr", 30,
             "{0^n 1^(n*n) : n >= 1}: block split checked by three counters",
             space=sq_words),
    ZooEntry("comp", ("0",), "comp.expr", 30,
             "{0^n : n composite}: equal blocks checked pairwise two ways",
             space=unary_words),
    ZooEntry("prim", ("0",), "prim.expr", 30, "{0^n : n prime}: complement of comp and {0^0, 0^1}",
             space=unary_words),
    ZooEntry("mulprim", ("0",), "mulprim.expr", 40,
             "{0^(mn) : m, n prime}: three-machine chain with two complements",
             space=unary_words),
    ZooEntry("dyck1", DYCK1, "dyck1.expr", 8, "balanced brackets over one pair"),
    ZooEntry("dyck2", DYCK2, "dyck2.expr", 8, "balanced brackets over two pairs"),
    ZooEntry("dyck1_machine", DYCK1, "dyck1_machine.expr", 8, "one-pair Dyck recognizer npda"),
    ZooEntry("dyck2_machine", DYCK2, "dyck2_machine.expr", 8, "two-pair Dyck recognizer npda"),
    ZooEntry("empty", BIN, "empty.expr", 8, "the empty language"),
    ZooEntry("equal6", EQUAL6_ALPHABET, "equal6.expr", 4,
             "equal counts of a1..a6: bounded-error ppda, majority vote"),
]}


class UnknownEntry(KeyError):
    pass


def entry(name):
    try:
        return ENTRIES[name]
    except KeyError:
        raise UnknownEntry("unknown zoo entry %r (known: %s)" % (name, ", ".join(sorted(ENTRIES))))


def names():
    return sorted(ENTRIES)


def reference_member(name, w):
    e = entry(name)
    w = tuple(w)
    bad = [t for t in w if t not in e.alphabet]
    if bad:
        raise ValueError("symbol %r is not in the alphabet of %s" % (bad[0], name))
    return bool(e.reference(w))


_exprs = {}


def construction_expr(name):
    e = entry(name)
    if name not in _exprs:
        _exprs[name] = load_expr(os.path.join(DATA, e.expr_file))
    return _exprs[name]


def data_path(filename):
    return os.path.join(DATA, filename)


@dataclass
class CrossReport:
    name: str
    max_len: int
    total: int = 0
    agree: int = 0
    exceeded: int = 0
    first_disagreement: object = None
    seconds: float = 0.0

    @property
    def ok(self):
        return self.agree == self.total and self.exceeded == 0

    def summary(self):
        line = "%s max_len=%d: %d/%d agree, %d resource_exceeded, %.2fs" % (
            self.name, self.max_len, self.agree, self.total, self.exceeded, self.seconds)
        if self.first_disagreement is not None:
            w, got, want = self.first_disagreement
            line += "; first disagreement %r: construction %s, reference %s" % (
                format_word(w), got, want)
        return line


def crosscheck(name, max_len=None, bounds=None, decider=None):
    """Compare construction and reference on every word of the entry's sample space."""
    e = entry(name)
    n = e.test_max_len if max_len is None else max_len
    expr = construction_expr(name)
    decider = decider or Decider()
    rep = CrossReport(name, n)
    t0 = time.perf_counter()
    for w in e.words(n):
        rep.total += 1
        want = bool(e.reference(w))
        try:
            got = decider.member(expr, w, bounds)
        except ResourceExceeded:
            rep.exceeded += 1
            continue
        if got == want:
            rep.agree += 1
        elif rep.first_disagreement is None:
            rep.first_disagreement = (w, got, want)
    rep.seconds = time.perf_counter() - t0
    return rep


def _register():
    for name, e in ENTRIES.items():
        if name.endswith("_machine") or name == "equal6":
            continue
        register_builtin(name, lambda params, e=e: frozenset(e.alphabet),
                         lambda w, params, d, e=e: e.reference(w))

    def equal6_bp(w, params, d):
        from .ppda import equal6_majority
        return equal6_majority(w)
    register_builtin("equal6-bp", lambda params: frozenset(EQUAL6_ALPHABET), equal6_bp)


_register()
