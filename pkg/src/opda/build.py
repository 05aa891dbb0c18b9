"""Programmatic machine construction used by the transforms and the zoo generator."""

from fractions import Fraction

from .machine import MachineSpec, Rule, check
from .symbols import LAMBDA


def state_name(*parts):
    """Join structured state components into one token."""
    out = []
    for p in parts:
        if isinstance(p, tuple):
            out.append("(" + ",".join(str(x) for x in p) + ")")
        else:
            out.append(str(p))
    return ".".join(out)


class Builder:
    def __init__(self, name, kind, input_alphabet, stack=(), queries=(), oracle="none", k=0):
        self.name = name
        self.kind = kind
        self.input = tuple(input_alphabet)
        self.stack = tuple(stack)
        self.queries = tuple(tuple(q) for q in queries)
        self.oracle = oracle
        self.k = k
        self.rules = []
        self._seen = set()

    def rule(self, src, read, top, dst, push=None, emit=None, group=None, weight=None):
        read = LAMBDA if read in ("-", None) else read
        top = None if top in ("-", None) else top
        if top is None:
            push = ()
        elif push is None:
            raise ValueError("rule with stack top %r needs push" % top)
        elif isinstance(push, str):
            push = tuple(push.split()) if push else ()
        else:
            push = tuple(push)
        ntapes = len(self.queries)
        if emit is None:
            emit = (None,) * ntapes
        elif isinstance(emit, str):
            emit = (emit,)
        emit = tuple(None if e in ("-", None) else e for e in emit)
        if weight is not None:
            weight = Fraction(weight)
        r = Rule(str(src), read, top, push, str(dst), emit, group, weight)
        # identical rules would only duplicate paths
        if r not in self._seen:
            self._seen.add(r)
            self.rules.append(r)
        return r

    def build(self, start, accept=(), reject=(), validate=True, query_state=None,
              yes_state=None, no_state=None, extra_states=()):
        spec = MachineSpec(
            name=self.name, kind=self.kind, input_alphabet=self.input, start=str(start),
            accept=tuple(accept), reject=tuple(reject), rules=tuple(self.rules),
            stack_alphabet=self.stack, query_alphabets=self.queries, oracle=self.oracle,
            k=self.k, query_state=query_state, yes_state=yes_state, no_state=no_state,
            extra_states=tuple(extra_states))
        return check(spec) if validate else spec
