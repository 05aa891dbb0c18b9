"""Example languages: layered constructions against direct predicates."""

import sys

from opda import zoo

names = sys.argv[1:] or ["dup2", "match", "sq", "comp", "prim", "dyck1"]
for n in names:
    e = zoo.entry(n)
    print("%-8s %s" % (n, e.description))
    print("   ", zoo.crosscheck(n, max_len=min(e.test_max_len, 8)).summary())
