"""Level expressions, the quantified characterization and query circuits."""

import random

from opda import catalog
from opda.hierarchy import (LinearPoly, build_query_circuit, chain_expr, decompose_cfl_k,
                            dual_circuit, eval_circuit, eval_quantified, format_circuit,
                            level_expr, random_finite_oracle)
from opda.oracles import Decider, format_expr
from opda.transforms import replay_machine

d = Decider()
BITS = ("0", "1")

print(format_expr(level_expr("sigma", 2, [catalog.turing_split(), catalog.evenpal()])))
for k in (2, 4, 5):
    print(k, decompose_cfl_k(k).shape())

# x is accepted iff some path encoding replays to acceptance
M = catalog.evenpal()
A = replay_machine(M)
for x in ["", "0", "01", "0110"]:
    print(repr(x), eval_quantified(A, LinearPoly(1, 2), 1, tuple(x), d))

C = build_query_circuit([catalog.turing_split()], tuple("01"))
print(format_circuit(C), end="")
print("depth", C.depth, "variables", len(C.variables))
rng = random.Random(1)
for _ in range(3):
    O = random_finite_oracle(rng, BITS, 2)
    print(sorted("".join(w) for w in O.strings), eval_circuit(C, O, d),
          d.member(chain_expr([catalog.turing_split()], O), tuple("01")),
          eval_circuit(dual_circuit(C), O, d))
