"""Constructions as machine-to-machine functions, checked on short inputs."""

from opda import catalog
from opda.oracles import Decider, Machine, ManyOne, format_expr
from opda.symbols import words_upto
from opda.transforms import (absorb_dpda_oracle, dyck_dpda, dyckify, guess_answers,
                             guessed_oracle, product_reducer, reverse_m, star_m)

d = Decider()
BITS = ("0", "1")
M = catalog.anbn()

# a stackless reducer writing stack histories, checked by a Dyck oracle
N, D = dyckify(M)
print("dyckify:", N.name, "states", len(N.states), "oracle", D)
same = all(d.member(ManyOne(N, D), w) == d.member(Machine(M), w) for w in words_upto(BITS, 8))
print("language preserved up to length 8:", same)

# and back: folding a deterministic Dyck recognizer into the reducer
back = absorb_dpda_oracle(N, dyck_dpda(D.opens))
print("round trip agrees:", all(d.member(Machine(back), w) == d.member(Machine(M), w)
                                for w in words_upto(BITS, 8)))

# two machines in lockstep give the intersection {0^n 1^n 0^n}
P, DE = product_reducer([catalog.anbn_tail(), catalog.head_bn0n()])
print([("".join(w)) for w in words_upto(BITS, 9) if d.member(ManyOne(P, DE), w)])

# guessing answers turns a Turing reducer into a many-one reducer
G = guess_answers(catalog.turing_copy())
print("guessed reducer writes to", G.query_alphabets[0])
print(format_expr(guessed_oracle(Machine(catalog.evenpal()))))

S = star_m(catalog.anbn())
print("star:", [("".join(w)) for w in words_upto(BITS, 4) if d.member(Machine(S), w)])
R = reverse_m(catalog.anbn())
print("reverse:", [("".join(w)) for w in words_upto(BITS, 4) if d.member(Machine(R), w)])
