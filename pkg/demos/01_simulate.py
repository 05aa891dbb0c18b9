"""Simulating machines: verdicts, computation paths and valid outputs."""

from opda import catalog
from opda.machine import format_machine
from opda.simulate import RunBounds, accepts, run_paths, valid_outputs
from opda.symbols import format_word

M = catalog.anbn()
print(format_machine(M))

for w in ["", "01", "0011", "0101"]:
    res = accepts(M, tuple(w))
    print("%-6r %s (%d configurations)" % (w, res.verdict, res.paths_explored))

# a tight step bound turns the verdict into resource_exceeded, never reject
print(accepts(M, tuple("000111"), RunBounds(4, 4, 4)).verdict)

# the split reverser writes x^R <natural> y for every split of its input
R = catalog.dup2_red()
for (tape,) in sorted(valid_outputs(R, tuple("011"))):
    print("output", format_word(tape))

for p in run_paths(R, tuple("01")):
    print("path", p.indices, p.status)
