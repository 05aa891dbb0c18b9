"""Oracle expressions and the three reducibilities."""

from opda import catalog
from opda.build import Builder
from opda.oracles import (Complement, Decider, Machine, ManyOne, decide_ktt, decide_turing,
                          dyck, finite, format_expr, parse_expr, table)
from opda.symbols import CENT, DOLLAR, HASH, format_word

BITS = ("0", "1")

d = Decider()

e = parse_expr('(intersect (dyck 1) (complement (finite-over "a1 a1\'" "")))')
print(format_expr(e))
for w, m in table(e, ["a1", "a1'"], 4):
    if m:
        print("member", format_word(w))

# many-one: {xx} is the set of inputs with some valid output in the reversal checker
dup2 = ManyOne(catalog.dup2_red(), Machine(catalog.eqrev()))
print("0101 in dup2:", d.member(dup2, tuple("0101")))
print("0110 in dup2:", d.member(dup2, tuple("0110")))

# Turing: answers steer the run; flipping answers and complementing the oracle agree
A = finite(["", "0", "10"], BITS)
T = catalog.turing_split()
for x in ["01", "010", "110"]:
    print(x, decide_turing(T, A, tuple(x)), decide_turing(T, Complement(A), tuple(x)))

print("a2 a1 a1' a2' in dyck 2:", d.member(dyck(2), ("a2", "a1", "a1'", "a2'")))


# truth-table: one query per tape, accepted when the answer bits read "1 1"
def table_dfa(bits):
    b = Builder("table_" + bits, "nfa", BITS + (HASH,))
    b.rule("s", CENT, "-", "x")
    for a in BITS:
        b.rule("x", a, "-", "x")
    b.rule("x", HASH, "-", "z0")
    for i, a in enumerate(bits):
        b.rule("z%d" % i, a, "-", "z%d" % (i + 1))
    b.rule("z%d" % len(bits), DOLLAR, "-", "acc")
    return b.build("s", ["acc"])


b = Builder("twin", "nfa", BITS, queries=[BITS, BITS], oracle="ktt", k=2)
b.rule("s", CENT, "-", "r")
for a in BITS:
    b.rule("r", a, "-", "r", emit=(a, a))
b.rule("r", DOLLAR, "-", "acc")
twin = b.build("s", ["acc"])
for x in ["0011", "0101"]:
    print("ktt", x, bool(decide_ktt(twin, table_dfa("11"), Machine(catalog.anbn()), tuple(x))))
