"""Builders for every machine shipped under ``data/``.

The files in ``data/zoo`` and ``data/samples`` are generated from these
functions by ``scripts/gen_data.py``; a test keeps the two in sync.
"""

from .build import Builder
from .symbols import CENT, DOLLAR, NATURAL

BITS = ("0", "1")
NAT = NATURAL


def _push_each(b, state, syms, tops, sym_to_stack=None):
    """state --s--> state pushing the stack image of s over every top."""
    sym_to_stack = sym_to_stack or {s: s for s in syms}
    for s in syms:
        for t in tops:
            b.rule(state, s, t, state, push=(sym_to_stack[s], t))


# Dup2 / Dup3 / Match -------------------------------------------------------------

def dup2_red():
    """x y  ->  x^R <natural> y  over every split."""
    b = Builder("dup2_red", "npda", BITS, stack=("Z",) + BITS, queries=[BITS + (NAT,)],
                oracle="many-one")
    b.rule("s", CENT, "Z", "p", push="Z")
    _push_each(b, "p", BITS, ("Z",) + BITS)
    b.rule("p", "-", "-", "r")
    for a in BITS:
        b.rule("r", "-", a, "r", push="", emit=a)
    b.rule("r", "-", "Z", "c", push="Z", emit=NAT)
    for a in BITS:
        b.rule("c", a, "-", "c", emit=a)
    b.rule("c", DOLLAR, "-", "acc")
    return b.build("s", ["acc"])


def eqrev():
    """{u <natural> v : v = u^R}, deterministic."""
    b = Builder("eqrev", "npda", BITS + (NAT,), stack=("Z",) + BITS)
    b.rule("s", CENT, "Z", "a", push="Z")
    _push_each(b, "a", BITS, ("Z",) + BITS)
    b.rule("a", NAT, "-", "b")
    for a in BITS:
        b.rule("b", a, a, "b", push="")
    b.rule("b", DOLLAR, "Z", "acc", push="")
    return b.build("s", ["acc"])


def dup3_red():
    """x y z  ->  x^R <natural> y <natural> y^R <natural> z."""
    b = Builder("dup3_red", "npda", BITS, stack=("Z",) + BITS, queries=[BITS + (NAT,)],
                oracle="many-one")
    tops = ("Z",) + BITS
    b.rule("s", CENT, "Z", "p", push="Z")
    _push_each(b, "p", BITS, tops)
    b.rule("p", "-", "-", "r")
    for a in BITS:
        b.rule("r", "-", a, "r", push="", emit=a)
    b.rule("r", "-", "Z", "c", push="Z", emit=NAT)
    for a in BITS:
        for t in tops:
            b.rule("c", a, t, "c", push=(a, t), emit=a)
    b.rule("c", "-", "-", "r2", emit=NAT)
    for a in BITS:
        b.rule("r2", "-", a, "r2", push="", emit=a)
    b.rule("r2", "-", "Z", "d", push="Z", emit=NAT)
    for a in BITS:
        b.rule("d", a, "-", "d", emit=a)
    b.rule("d", DOLLAR, "-", "acc")
    return b.build("s", ["acc"])


def eqrev2():
    """{u1 # u2 # u3 # u4 : u2 = u1^R and u4 = u3^R} with # the padding symbol."""
    b = Builder("eqrev2", "npda", BITS + (NAT,), stack=("Z",) + BITS)
    tops = ("Z",) + BITS
    b.rule("s", CENT, "Z", "a", push="Z")
    _push_each(b, "a", BITS, tops)
    b.rule("a", NAT, "-", "b")
    for a in BITS:
        b.rule("b", a, a, "b", push="")
    b.rule("b", NAT, "Z", "c", push="Z")
    _push_each(b, "c", BITS, tops)
    b.rule("c", NAT, "-", "d")
    for a in BITS:
        b.rule("d", a, a, "d", push="")
    b.rule("d", DOLLAR, "Z", "acc", push="")
    return b.build("s", ["acc"])


def match_red():
    """x <hash> u y v  ->  x^R <natural> y."""
    hash_ = "<hash>"
    b = Builder("match_red", "npda", BITS + (hash_,), stack=("Z",) + BITS,
                queries=[BITS + (NAT,)], oracle="many-one")
    b.rule("s", CENT, "Z", "p", push="Z")
    _push_each(b, "p", BITS, ("Z",) + BITS)
    b.rule("p", hash_, "-", "r")
    for a in BITS:
        b.rule("r", "-", a, "r", push="", emit=a)
    b.rule("r", "-", "Z", "u", push="Z", emit=NAT)
    for a in BITS:
        b.rule("u", a, "-", "u")
    b.rule("u", "-", "-", "y")
    for a in BITS:
        b.rule("y", a, "-", "y", emit=a)
    b.rule("y", "-", "-", "v")
    for a in BITS:
        b.rule("v", a, "-", "v")
    b.rule("v", DOLLAR, "-", "acc")
    return b.build("s", ["acc"])


# Sq ------------------------------------------------------------------------------

def sq_red():
    """0^i 1^j  ->  0^i # 1^j1 # ... # 1^jk with i >= 1 and j1 = i checked on the stack."""
    b = Builder("sq_red", "npda", BITS, stack=("Z", "O"), queries=[BITS + (NAT,)],
                oracle="many-one")
    b.rule("s", CENT, "Z", "a", push="Z")
    b.rule("a", "0", "Z", "z", push="O Z", emit="0")
    b.rule("z", "0", "O", "z", push="O O", emit="0")
    b.rule("z", "-", "O", "b1", push="O", emit=NAT)
    b.rule("b1", "1", "O", "b1", push="", emit="1")
    b.rule("b1", "-", "Z", "c", push="Z")
    b.rule("c", DOLLAR, "-", "acc")
    b.rule("c", "-", "-", "n", emit=NAT)
    b.rule("n", "1", "-", "m", emit="1")
    b.rule("m", "1", "-", "m", emit="1")
    b.rule("m", "-", "-", "n", emit=NAT)
    b.rule("m", DOLLAR, "-", "acc")
    return b.build("s", ["acc"])


def _pairs(b, start, sym, stack_sym="O"):
    """Deterministic check that consecutive blocks pair up: block 1 = block 2, 3 = 4, ...

    Enters ``start`` in push mode with the bottom marker on top.
    """
    u, v = start, start + "v"
    b.rule(u, sym, "Z", u, push=(stack_sym, "Z"))
    b.rule(u, sym, stack_sym, u, push=(stack_sym, stack_sym))
    b.rule(u, NAT, "-", v)
    b.rule(v, sym, stack_sym, v, push="")
    b.rule(v, NAT, "Z", u, push="Z")
    b.rule(v, DOLLAR, "Z", "acc", push="")
    b.rule(u, DOLLAR, "-", "acc")


def sq_pair_a():
    """j1 = j2, j3 = j4, ... on 0^i # 1^j1 # ... # 1^jk."""
    b = Builder("sq_pair_a", "npda", BITS + (NAT,), stack=("Z", "O"))
    b.rule("s", CENT, "Z", "z", push="Z")
    b.rule("z", "0", "-", "z")
    b.rule("z", NAT, "-", "u")
    _pairs(b, "u", "1")
    return b.build("s", ["acc"])


def sq_pair_b():
    """j2 = j3, j4 = j5, ... on 0^i # 1^j1 # ... # 1^jk."""
    b = Builder("sq_pair_b", "npda", BITS + (NAT,), stack=("Z", "O"))
    b.rule("s", CENT, "Z", "z", push="Z")
    b.rule("z", "0", "-", "z")
    b.rule("z", NAT, "-", "w")
    b.rule("w", "1", "-", "w")
    b.rule("w", NAT, "-", "u")
    b.rule("w", DOLLAR, "-", "acc")
    _pairs(b, "u", "1")
    return b.build("s", ["acc"])


def sq_count():
    """i = k: one stack cell per 0, one pop per separator."""
    b = Builder("sq_count", "npda", BITS + (NAT,), stack=("Z", "O"))
    b.rule("s", CENT, "Z", "z", push="Z")
    b.rule("z", "0", "Z", "z", push="O Z")
    b.rule("z", "0", "O", "z", push="O O")
    b.rule("z", NAT, "O", "y", push="")
    b.rule("y", "1", "-", "y")
    b.rule("y", NAT, "O", "y", push="")
    b.rule("y", DOLLAR, "Z", "acc", push="")
    return b.build("s", ["acc"])


# Comp / Prim -----------------------------------------------------------------------

def comp_red():
    """0^n -> 0^m1 # 0^m2 # ... with at least two blocks, each of length >= 2."""
    b = Builder("comp_red", "nfa", ("0",), queries=[("0", NAT)], oracle="many-one")
    b.rule("s", CENT, "-", "f0")
    b.rule("f0", "0", "-", "f1", emit="0")
    b.rule("f1", "0", "-", "f2", emit="0")
    b.rule("f2", "0", "-", "f2", emit="0")
    b.rule("f2", "-", "-", "g0", emit=NAT)
    b.rule("g0", "0", "-", "g1", emit="0")
    b.rule("g1", "0", "-", "g2", emit="0")
    b.rule("g2", "0", "-", "g2", emit="0")
    b.rule("g2", "-", "-", "g0", emit=NAT)
    b.rule("g2", DOLLAR, "-", "acc")
    return b.build("s", ["acc"])


def comp_pair_a():
    """z1 = z2, z3 = z4, ... on blocks of 0 separated by the padding symbol."""
    b = Builder("comp_pair_a", "npda", ("0", NAT), stack=("Z", "O"))
    b.rule("s", CENT, "Z", "u", push="Z")
    _pairs(b, "u", "0")
    return b.build("s", ["acc"])


def comp_pair_b():
    """z2 = z3, z4 = z5, ... on blocks of 0 separated by the padding symbol."""
    b = Builder("comp_pair_b", "npda", ("0", NAT), stack=("Z", "O"))
    b.rule("s", CENT, "Z", "w", push="Z")
    b.rule("w", "0", "-", "w")
    b.rule("w", NAT, "-", "u")
    b.rule("w", DOLLAR, "-", "acc")
    _pairs(b, "u", "0")
    return b.build("s", ["acc"])


# MulPrim ---------------------------------------------------------------------------

def mulprim_m1():
    """0^k -> y1 # y2 # ... # yn, every block nonempty."""
    b = Builder("mulprim_m1", "nfa", ("0",), queries=[("0", NAT)], oracle="many-one")
    b.rule("s", CENT, "-", "a")
    b.rule("a", "0", "-", "b", emit="0")
    b.rule("b", "0", "-", "b", emit="0")
    b.rule("b", "-", "-", "a", emit=NAT)
    b.rule("b", DOLLAR, "-", "acc")
    return b.build("s", ["acc"])


def mulprim_m2():
    """Accepts with evidence that y1 # ... # yn is not a square of two primes.

    Branches: malformed shape (empty output); an odd pair y(2i-1) != y(2i)
    (empty output); ``e`` + copy for the even pairs; ``z`` + a factorization
    of |y1|; ``z`` + a factorization of n.
    """
    out = ("0", NAT, "e", "z")
    b = Builder("mulprim_m2", "npda", ("0", NAT), stack=("Z", "O"), queries=[out],
                oracle="many-one")
    b.rule("s", CENT, "Z", "B", push="Z")
    # shape: accept unless every block is nonempty, n >= 2 and |y1| >= 2
    b.rule("B", "-", "-", "g0")
    nxt = {("g0", "0"): "g1", ("g0", NAT): "bad", ("g1", "0"): "g2", ("g1", NAT): "bad",
           ("g2", "0"): "g2", ("g2", NAT): "g3", ("g3", "0"): "g4", ("g3", NAT): "bad",
           ("g4", "0"): "g4", ("g4", NAT): "g3", ("bad", "0"): "bad", ("bad", NAT): "bad"}
    for (q, a), p in nxt.items():
        b.rule(q, a, "-", p)
    for q in ("g0", "g1", "g2", "g3", "bad"):
        b.rule(q, DOLLAR, "-", "acc")
    b.rule("g4", DOLLAR, "-", "rej")
    # odd pairs: accept as soon as one pair differs
    b.rule("B", "-", "-", "pu")
    b.rule("pu", "0", "Z", "pu", push="O Z")
    b.rule("pu", "0", "O", "pu", push="O O")
    b.rule("pu", NAT, "-", "pv")
    b.rule("pu", DOLLAR, "-", "rej")
    b.rule("pv", "0", "O", "pv", push="")
    b.rule("pv", "0", "Z", "acc", push="Z")
    b.rule("pv", NAT, "Z", "pu", push="Z")
    b.rule("pv", NAT, "O", "acc", push="O")
    b.rule("pv", DOLLAR, "Z", "rej", push="Z")
    b.rule("pv", DOLLAR, "O", "acc", push="O")
    # even pairs are left to the next machine
    b.rule("B", "-", "-", "c", emit="e")
    b.rule("c", "0", "-", "c", emit="0")
    b.rule("c", NAT, "-", "c", emit=NAT)
    b.rule("c", DOLLAR, "-", "acc")
    # |y1| = (>= 2 blocks of length >= 2)
    b.rule("B", "-", "-", "d0", emit="z")
    b.rule("d0", "0", "-", "d1", emit="0")
    b.rule("d1", "0", "-", "d2", emit="0")
    b.rule("d2", "0", "-", "d2", emit="0")
    b.rule("d2", "-", "-", "d3", emit=NAT)
    b.rule("d3", "0", "-", "d4", emit="0")
    b.rule("d4", "0", "-", "d5", emit="0")
    b.rule("d5", "0", "-", "d5", emit="0")
    b.rule("d5", "-", "-", "d3", emit=NAT)
    b.rule("d5", NAT, "-", "skip")
    b.rule("d5", DOLLAR, "-", "acc")
    b.rule("skip", "0", "-", "skip")
    b.rule("skip", NAT, "-", "skip")
    b.rule("skip", DOLLAR, "-", "acc")
    # n = (>= 2 groups of >= 2 blocks); one 0 per block
    b.rule("B", "-", "-", "hf0", emit="z")
    for g in ("f", "l"):
        for c in (0, 1, 2):
            up = min(c + 1, 2)
            b.rule("h%s%d" % (g, c), "0", "-", "i%s%d" % (g, up), emit="0")
            b.rule("i%s%d" % (g, c), "0", "-", "i%s%d" % (g, c))
            b.rule("i%s%d" % (g, c), NAT, "-", "h%s%d" % (g, c))
        b.rule("h%s2" % g, "-", "-", "hl0", emit=NAT)
    b.rule("il2", DOLLAR, "-", "acc")
    return b.build("s", ["acc"], ["rej"])


def mulprim_m3():
    """``e`` + w: even pairs equal.  ``z`` + blocks: not all blocks equal."""
    b = Builder("mulprim_m3", "npda", ("0", NAT, "e", "z"), stack=("Z", "O"))
    b.rule("s", CENT, "Z", "t", push="Z")
    b.rule("t", DOLLAR, "Z", "rej", push="Z")
    b.rule("t", "e", "Z", "e0", push="Z")
    b.rule("e0", "0", "-", "e0")
    b.rule("e0", NAT, "-", "u")
    b.rule("e0", DOLLAR, "-", "acc")
    _pairs(b, "u", "0")
    b.rule("t", "z", "Z", "zb", push="Z")
    b.rule("zb", "-", "-", "pu")
    b.rule("zb", "-", "-", "q0")
    b.rule("q0", "0", "-", "q0")
    b.rule("q0", NAT, "-", "pu")
    b.rule("q0", DOLLAR, "-", "rej")
    # pair check whose failure is acceptance
    b.rule("pu", "0", "Z", "pu", push="O Z")
    b.rule("pu", "0", "O", "pu", push="O O")
    b.rule("pu", NAT, "-", "pv")
    b.rule("pu", DOLLAR, "-", "rej")
    b.rule("pv", "0", "O", "pv", push="")
    b.rule("pv", "0", "Z", "acc", push="Z")
    b.rule("pv", NAT, "Z", "pu", push="Z")
    b.rule("pv", NAT, "O", "acc", push="O")
    b.rule("pv", DOLLAR, "Z", "rej", push="Z")
    b.rule("pv", DOLLAR, "O", "acc", push="O")
    return b.build("s", ["acc"], ["rej"])


# Dyck recognizers -------------------------------------------------------------------

def dyck2_npda():
    """Dyck(2) with an emptied stack at the end; no lambda moves."""
    opens = ("a1", "a2")
    stack = {"a1": "A1", "a2": "A2"}
    b = Builder("dyck2", "npda", opens + tuple(o + "'" for o in opens), stack=("Z", "A1", "A2"))
    b.rule("s", CENT, "Z", "r", push="Z")
    for o in opens:
        for t in ("Z", "A1", "A2"):
            b.rule("r", o, t, "r", push=(stack[o], t))
        b.rule("r", o + "'", stack[o], "r", push="")
    b.rule("r", DOLLAR, "Z", "acc", push="")
    return b.build("s", ["acc"])


ZOO_MACHINES = {
    "dup2_red": dup2_red, "eqrev": eqrev, "dup3_red": dup3_red, "eqrev2": eqrev2,
    "match_red": match_red, "sq_red": sq_red, "sq_pair_a": sq_pair_a, "sq_pair_b": sq_pair_b,
    "sq_count": sq_count, "comp_red": comp_red, "comp_pair_a": comp_pair_a,
    "comp_pair_b": comp_pair_b, "mulprim_m1": mulprim_m1, "mulprim_m2": mulprim_m2,
    "mulprim_m3": mulprim_m3, "dyck2": dyck2_npda,
}


# samples for the transforms --------------------------------------------------------

def anbn():
    """{0^n 1^n}, deterministic, normalized."""
    b = Builder("anbn", "npda", BITS, stack=("Z", "O"))
    b.rule("s", CENT, "Z", "a", push="Z")
    for t in ("Z", "O"):
        b.rule("a", "0", t, "a", push=("O", t))
    b.rule("a", "1", "O", "b", push="")
    b.rule("b", "1", "O", "b", push="")
    for q in ("a", "b"):
        b.rule(q, DOLLAR, "Z", "acc", push="")
    return b.build("s", ["acc"])


def evenpal():
    """{u u^R}; the middle is guessed while reading the first symbol of u^R."""
    b = Builder("evenpal", "npda", BITS, stack=("Z",) + BITS)
    b.rule("s", CENT, "Z", "p", push="Z")
    _push_each(b, "p", BITS, ("Z",) + BITS)
    for a in BITS:
        b.rule("p", a, a, "q", push="")
        b.rule("q", a, a, "q", push="")
    for q in ("p", "q"):
        b.rule(q, DOLLAR, "Z", "acc", push="")
    return b.build("s", ["acc"])


def anbn_tail():
    """{0^a 1^b 0^c : a = b}, the leading block of 0s taken as a."""
    b = Builder("anbn_tail", "npda", BITS, stack=("Z", "O"))
    b.rule("s", CENT, "Z", "a", push="Z")
    for t in ("Z", "O"):
        b.rule("a", "0", t, "a", push=("O", t))
    b.rule("a", "1", "O", "b", push="")
    b.rule("b", "1", "O", "b", push="")
    b.rule("b", "0", "Z", "c", push="Z")
    b.rule("c", "0", "Z", "c", push="Z")
    for q in ("a", "b", "c"):
        b.rule(q, DOLLAR, "Z", "acc", push="")
    return b.build("s", ["acc"])


def head_bn0n():
    """{0^a 1^b 0^c : b = c}, the leading block of 0s taken as a."""
    b = Builder("head_bn0n", "npda", BITS, stack=("Z", "O"))
    b.rule("s", CENT, "Z", "a", push="Z")
    b.rule("a", "0", "Z", "a", push="Z")
    for t in ("Z", "O"):
        b.rule("a", "1", t, "b", push=("O", t))
        b.rule("b", "1", t, "b", push=("O", t))
    b.rule("b", "0", "O", "c", push="")
    b.rule("c", "0", "O", "c", push="")
    for q in ("a", "c"):
        b.rule(q, DOLLAR, "Z", "acc", push="")
    return b.build("s", ["acc"])


def anbn_pos():
    """{0^n 1^n : n >= 1}."""
    b = Builder("anbn_pos", "npda", BITS, stack=("Z", "O"))
    b.rule("s", CENT, "Z", "a", push="Z")
    for t in ("Z", "O"):
        b.rule("a", "0", t, "a", push=("O", t))
    b.rule("a", "1", "O", "b", push="")
    b.rule("b", "1", "O", "b", push="")
    b.rule("b", DOLLAR, "Z", "acc", push="")
    return b.build("s", ["acc"])


def one_zero_one():
    """The single word 01, no stack."""
    b = Builder("w01", "nfa", BITS)
    b.rule("s", CENT, "-", "a")
    b.rule("a", "0", "-", "b")
    b.rule("b", "1", "-", "c")
    b.rule("c", DOLLAR, "-", "acc")
    return b.build("s", ["acc"])


def turing_copy():
    """Ask whether the input is in the oracle; accept on yes."""
    b = Builder("turing_copy", "nfa", BITS, queries=[BITS], oracle="turing")
    b.rule("s", CENT, "-", "r")
    for a in BITS:
        b.rule("r", a, "-", "r", emit=a)
    b.rule("r", DOLLAR, "-", "ask")
    b.rule("ask", "-", "-", "qy")
    b.rule("yes", "-", "-", "acc")
    b.rule("no", "-", "-", "rej")
    return b.build("s", ["acc"], ["rej"], query_state="qy", yes_state="yes", no_state="no")


def turing_split():
    """Accept iff some split x = u v has u in the oracle and v^R outside it.

    Both queries resume in the same yes and no states; a marker M on the
    stack tells the second answer from the first.
    """
    b = Builder("turing_split", "npda", BITS, stack=("Z", "M") + BITS, queries=[BITS],
                oracle="turing")
    b.rule("s", CENT, "Z", "u", push="Z")
    for a in BITS:
        b.rule("u", a, "-", "u", emit=a)
    b.rule("u", "-", "-", "qy")
    b.rule("yes", "-", "Z", "v", push="Z")
    b.rule("no", "-", "Z", "rej", push="Z")
    _push_each(b, "v", BITS, ("Z",) + BITS)
    b.rule("v", DOLLAR, "-", "pop")
    for a in BITS:
        b.rule("pop", "-", a, "pop", push="", emit=a)
    b.rule("pop", "-", "Z", "qy", push=("M", "Z"))
    b.rule("yes", "-", "M", "rej", push="")
    b.rule("no", "-", "M", "acc", push="")
    return b.build("s", ["acc"], ["rej"], query_state="qy", yes_state="yes", no_state="no")


def zeros_cover_ones():
    """{0^n 1^m : m <= n}; accepts with symbols left on the stack, so not normalized."""
    b = Builder("zeros_cover_ones", "npda", BITS, stack=("Z", "O"))
    b.rule("s", CENT, "Z", "a", push="Z")
    for t in ("Z", "O"):
        b.rule("a", "0", t, "a", push=("O", t))
    b.rule("a", "1", "O", "b", push="")
    b.rule("b", "1", "O", "b", push="")
    for q in ("a", "b"):
        b.rule(q, DOLLAR, "-", "acc")
    return b.build("s", ["acc"])


def starts_one():
    """Words starting with 1, accepted as soon as that 1 is read."""
    b = Builder("starts_one", "npda", BITS, stack=("Z",))
    b.rule("s", CENT, "Z", "a", push="Z")
    b.rule("a", "1", "-", "acc")
    return b.build("s", ["acc"])


def flip_bits():
    """Copies the input with 0 and 1 exchanged."""
    b = Builder("flip_bits", "nfa", BITS, queries=[BITS], oracle="many-one")
    b.rule("s", CENT, "-", "r")
    b.rule("r", "0", "-", "r", emit="1")
    b.rule("r", "1", "-", "r", emit="0")
    b.rule("r", DOLLAR, "-", "acc")
    return b.build("s", ["acc"])


def copy_bits():
    """Copies the input to the query tape."""
    b = Builder("copy_bits", "nfa", BITS, queries=[BITS], oracle="many-one")
    b.rule("s", CENT, "-", "r")
    for a in BITS:
        b.rule("r", a, "-", "r", emit=a)
    b.rule("r", DOLLAR, "-", "acc")
    return b.build("s", ["acc"])


def even_ones():
    """Total dfa for words with an even number of 1s."""
    b = Builder("even_ones", "dfa", BITS)
    b.rule("s", CENT, "-", "e")
    for q, o in (("e", "o"), ("o", "e")):
        b.rule(q, "0", "-", q)
        b.rule(q, "1", "-", o)
    b.rule("e", DOLLAR, "-", "acc")
    b.rule("o", DOLLAR, "-", "rej")
    # totality: misplaced endmarkers reject
    for a in BITS + (DOLLAR,):
        b.rule("s", a, "-", "rej")
    for q in ("e", "o"):
        b.rule(q, CENT, "-", "rej")
    return b.build("s", ["acc"], ["rej"])


def coin():
    """Flips one fair coin after the left endmarker and halts on the outcome."""
    b = Builder("coin", "ppda", BITS, stack=("Z",))
    b.rule("s", CENT, "Z", "flip", push="Z")
    b.rule("flip", "-", "Z", "acc", push="Z", group="c", weight="1/2")
    b.rule("flip", "-", "Z", "rej", push="Z", group="c", weight="1/2")
    return b.build("s", ["acc"], ["rej"])


def equal6_small():
    from .ppda import equal6_machine
    return equal6_machine(N=2)


SAMPLE_PPDAS = {"coin": coin, "equal6_n2": equal6_small}

SAMPLE_MACHINES = {
    "anbn": anbn, "evenpal": evenpal, "dyck2": dyck2_npda, "anbn_tail": anbn_tail,
    "head_bn0n": head_bn0n, "w01": one_zero_one, "anbn_pos": anbn_pos, "turing_copy": turing_copy,
    "turing_split": turing_split, "zeros_cover_ones": zeros_cover_ones,
    "starts_one": starts_one, "flip_bits": flip_bits, "copy_bits": copy_bits,
    "even_ones": even_ones,
}
