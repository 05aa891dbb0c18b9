"""Machine descriptions and their text format.

    machine <name>
    kind npda              # dfa | nfa | npda | ppda
    oracle none            # none | many-one | turing | ktt <k>
    input 0 1
    stack Z A              # first token is the bottom marker
    query 0 1 ~            # one line per write-only tape
    start q0
    accept qf
    reject qr
    trans q0 0 Z -> q0 ; push A Z ; emit -
    end

A ``-`` in the read field is a lambda move, a ``-`` stack top means the rule
does not touch the stack.  ``push`` replaces the matched top; the first
listed symbol becomes the new top and ``push -`` pops.
"""

from dataclasses import dataclass, field, replace
from fractions import Fraction

from .symbols import CENT, DOLLAR, LAMBDA, is_valid_token

KINDS = ("dfa", "nfa", "npda", "ppda")
MODES = ("none", "many-one", "turing", "ktt")


class MachineParseError(ValueError):
    def __init__(self, line, msg):
        super().__init__("line %d: %s" % (line, msg))
        self.line = line
        self.msg = msg


class MachineError(ValueError):
    """A machine that does not satisfy its invariants."""


@dataclass(frozen=True)
class Rule:
    src: str
    read: str                 # input token, CENT, DOLLAR or LAMBDA
    top: object               # stack token, or None when the stack is untouched
    push: tuple               # replacement for top (first = new top); () when top is None
    dst: str
    emit: tuple = ()          # one entry per tape, None for lambda
    group: object = None
    weight: object = None

    @property
    def is_lambda(self):
        return self.read == LAMBDA


@dataclass(frozen=True)
class MachineSpec:
    name: str
    kind: str
    input_alphabet: tuple
    start: str
    accept: tuple = ()
    reject: tuple = ()
    rules: tuple = ()
    stack_alphabet: tuple = ()
    query_alphabets: tuple = ()
    oracle: str = "none"
    k: int = 0
    query_state: object = None
    yes_state: object = None
    no_state: object = None
    extra_states: tuple = ()
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __hash__(self):
        h = self._cache.get("hash")
        if h is None:
            h = hash((self.name, self.kind, self.input_alphabet, self.start, self.accept,
                      self.reject, self.rules, self.stack_alphabet, self.query_alphabets,
                      self.oracle, self.k, self.query_state, self.yes_state, self.no_state))
            self._cache["hash"] = h
        return h

    @property
    def bottom(self):
        return self.stack_alphabet[0] if self.stack_alphabet else None

    @property
    def tapes(self):
        return len(self.query_alphabets)

    @property
    def halting(self):
        h = self._cache.get("halting")
        if h is None:
            h = self._cache["halting"] = frozenset(self.accept) | frozenset(self.reject)
        return h

    @property
    def states(self):
        s = self._cache.get("states")
        if s is None:
            seen = dict.fromkeys([self.start, *self.extra_states, *self.accept, *self.reject])
            for st in (self.query_state, self.yes_state, self.no_state):
                if st is not None:
                    seen[st] = None
            for r in self.rules:
                seen[r.src] = None
                seen[r.dst] = None
            s = self._cache["states"] = tuple(seen)
        return s

    def rules_from(self, state):
        table = self._cache.get("by_src")
        if table is None:
            table = {}
            for i, r in enumerate(self.rules):
                table.setdefault(r.src, []).append((i, r))
            table = {q: tuple(v) for q, v in table.items()}
            self._cache["by_src"] = table
        return table.get(state, ())

    def with_rules(self, rules, **kw):
        return replace(self, rules=tuple(rules), _cache={}, **kw)

    def evolve(self, **kw):
        return replace(self, _cache={}, **kw)

    @property
    def mode_label(self):
        return "ktt %d" % self.k if self.oracle == "ktt" else self.oracle


def flip_halting(spec):
    """Swap accepting and rejecting states."""
    return spec.evolve(accept=spec.reject, reject=spec.accept)


# text format ----------------------------------------------------------------

def _split_clauses(tokens):
    clauses, cur = [], []
    for t in tokens:
        if t == ";":
            clauses.append(cur)
            cur = []
        else:
            cur.append(t)
    clauses.append(cur)
    return clauses


def _parse_weight(text, lineno):
    try:
        w = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise MachineParseError(lineno, "bad weight %r" % text)
    return w


def parse_machine(text):
    """Parse one machine description; errors carry line numbers."""
    header = {}
    rules = []
    queries = []
    extra = []
    ended = False
    name_line = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = _strip_comment(raw).split()
        if not toks:
            continue
        if ended:
            raise MachineParseError(lineno, "text after 'end'")
        key, args = toks[0], toks[1:]
        if key == "machine":
            if len(args) != 1:
                raise MachineParseError(lineno, "expected 'machine <name>'")
            header["name"] = args[0]
            name_line = lineno
        elif key == "kind":
            if len(args) != 1 or args[0] not in KINDS:
                raise MachineParseError(lineno, "kind must be one of %s" % ", ".join(KINDS))
            header["kind"] = args[0]
        elif key == "oracle":
            if not args or args[0] not in MODES:
                raise MachineParseError(lineno, "oracle must be none, many-one, turing or ktt <k>")
            if args[0] == "ktt":
                if len(args) != 2 or not args[1].isdigit() or int(args[1]) < 1:
                    raise MachineParseError(lineno, "expected 'oracle ktt <k>' with k >= 1")
                header["k"] = int(args[1])
            elif len(args) != 1:
                raise MachineParseError(lineno, "unexpected tokens after oracle mode")
            header["oracle"] = args[0]
        elif key == "input":
            header["input"] = tuple(args)
        elif key == "stack":
            if not args:
                raise MachineParseError(lineno, "stack line needs a bottom marker")
            header["stack"] = tuple(args)
        elif key == "query":
            queries.append(tuple(args))
        elif key == "states":
            extra.extend(args)
        elif key in ("start", "query-state", "yes-state", "no-state"):
            if len(args) != 1:
                raise MachineParseError(lineno, "expected '%s <state>'" % key)
            header[key] = args[0]
        elif key in ("accept", "reject"):
            header[key] = tuple(args)
        elif key == "trans":
            rules.append(_parse_rule(args, lineno, len(queries)))
        elif key == "end":
            ended = True
        else:
            raise MachineParseError(lineno, "unknown keyword %r" % key)
    if name_line is None:
        raise MachineParseError(1, "missing 'machine <name>' line")
    for req in ("kind", "start"):
        if req not in header:
            raise MachineParseError(name_line, "missing '%s' line" % req)
    if "input" not in header:
        raise MachineParseError(name_line, "missing 'input' line")
    if not ended:
        raise MachineParseError(len(text.splitlines()) or 1, "missing 'end'")
    ntapes = len(queries)
    fixed = []
    for lineno, r in rules:
        emit = r.emit
        if not emit:
            emit = (None,) * ntapes
        elif len(emit) != ntapes:
            raise MachineParseError(lineno, "emit has %d entries but %d query tapes are declared"
                                    % (len(emit), ntapes))
        fixed.append(replace(r, emit=emit))
    return MachineSpec(
        name=header["name"],
        kind=header["kind"],
        input_alphabet=header["input"],
        start=header["start"],
        accept=header.get("accept", ()),
        reject=header.get("reject", ()),
        rules=tuple(fixed),
        stack_alphabet=header.get("stack", ()),
        query_alphabets=tuple(queries),
        oracle=header.get("oracle", "none"),
        k=header.get("k", 0),
        query_state=header.get("query-state"),
        yes_state=header.get("yes-state"),
        no_state=header.get("no-state"),
        extra_states=tuple(extra),
    )


def _strip_comment(raw):
    out = []
    for tok in raw.split():
        if tok.startswith("#"):
            break
        out.append(tok)
    return " ".join(out)


def _parse_rule(args, lineno, ntapes):
    clauses = _split_clauses(args)
    head = clauses[0]
    if len(head) != 5 or head[3] != "->":
        raise MachineParseError(lineno, "expected 'trans <state> <read> <top> -> <state>'")
    src, read, top, _, dst = head
    read = LAMBDA if read == "-" else read
    top = None if top == "-" else top
    push = None
    emit = ()
    group = weight = None
    for cl in clauses[1:]:
        if not cl:
            raise MachineParseError(lineno, "empty clause")
        word, rest = cl[0], cl[1:]
        if word == "push":
            if rest == ["-"]:
                push = ()
            else:
                if "-" in rest:
                    raise MachineParseError(lineno, "'-' may only appear alone in push")
                push = tuple(rest)
        elif word == "emit":
            emit = tuple(None if t == "-" else t for t in rest)
            if not emit:
                raise MachineParseError(lineno, "emit needs one entry per tape")
        elif word == "group":
            if len(rest) != 3 or rest[1] != "weight":
                raise MachineParseError(lineno, "expected 'group <id> weight <p>/<q>'")
            group = rest[0]
            weight = _parse_weight(rest[2], lineno)
        else:
            raise MachineParseError(lineno, "unknown clause %r" % word)
    if top is None:
        if push is not None:
            raise MachineParseError(lineno, "push needs a stack top")
        push = ()
    elif push is None:
        raise MachineParseError(lineno, "rule reading stack top %r needs a push clause" % top)
    return lineno, Rule(src, read, top, push, dst, emit, group, weight)


def format_rule(r):
    read = "-" if r.read == LAMBDA else r.read
    parts = ["trans", r.src, read, "-" if r.top is None else r.top, "->", r.dst]
    if r.top is not None:
        parts += [";", "push"] + (list(r.push) if r.push else ["-"])
    if r.emit and any(e is not None for e in r.emit):
        parts += [";", "emit"] + ["-" if e is None else e for e in r.emit]
    if r.group is not None:
        parts += [";", "group", r.group, "weight", str(r.weight)]
    return " ".join(parts)


def format_machine(spec):
    lines = ["machine %s" % spec.name, "kind %s" % spec.kind, "oracle %s" % spec.mode_label]
    lines.append("input" + "".join(" " + t for t in spec.input_alphabet))
    if spec.stack_alphabet:
        lines.append("stack " + " ".join(spec.stack_alphabet))
    for q in spec.query_alphabets:
        lines.append("query" + "".join(" " + t for t in q))
    if spec.extra_states:
        lines.append("states " + " ".join(spec.extra_states))
    lines.append("start %s" % spec.start)
    lines.append("accept" + "".join(" " + s for s in spec.accept))
    lines.append("reject" + "".join(" " + s for s in spec.reject))
    for key, st in (("query-state", spec.query_state), ("yes-state", spec.yes_state),
                    ("no-state", spec.no_state)):
        if st is not None:
            lines.append("%s %s" % (key, st))
    lines.extend(format_rule(r) for r in spec.rules)
    lines.append("end")
    return "\n".join(lines) + "\n"


def load_machine(path):
    with open(path, encoding="utf-8") as fh:
        return parse_machine(fh.read())


def save_machine(spec, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_machine(spec))


# validation -----------------------------------------------------------------

def validate(spec):
    """List every invariant breach; an empty list means the machine is well formed."""
    v = []
    if spec.kind not in KINDS:
        v.append("kind: unknown kind %r" % spec.kind)
    if spec.oracle not in MODES:
        v.append("oracle: unknown mode %r" % spec.oracle)
    for label, alpha in [("input", spec.input_alphabet), ("stack", spec.stack_alphabet)] + [
            ("query %d" % (i + 1), q) for i, q in enumerate(spec.query_alphabets)]:
        seen = set()
        for t in alpha:
            if not is_valid_token(t):
                v.append("alphabet: %s alphabet contains reserved or malformed token %r" % (label, t))
            if t in seen:
                v.append("alphabet: %s alphabet repeats %r" % (label, t))
            seen.add(t)
    both = set(spec.accept) & set(spec.reject)
    for q in sorted(both):
        v.append("halting: state %s is both accepting and rejecting" % q)
    sigma = set(spec.input_alphabet)
    gamma = set(spec.stack_alphabet)
    z0 = spec.bottom
    for i, r in enumerate(spec.rules, 1):
        tag = "rule %d (%s)" % (i, format_rule(r))
        if r.src in spec.halting:
            v.append("halting: %s leaves halting state %s" % (tag, r.src))
        if r.read not in sigma and r.read not in (CENT, DOLLAR, LAMBDA):
            v.append("read: %s reads %r outside the input alphabet" % (tag, r.read))
        if r.top is not None:
            if spec.kind in ("dfa", "nfa"):
                v.append("stack: %s uses the stack in a %s" % (tag, spec.kind))
            elif r.top not in gamma:
                v.append("stack: %s has unknown stack top %r" % (tag, r.top))
            for j, s in enumerate(r.push):
                if s not in gamma:
                    v.append("stack: %s pushes unknown symbol %r" % (tag, s))
                elif s == z0 and not (r.top == z0 and j == len(r.push) - 1):
                    v.append("bottom: %s pushes %s above the stack bottom" % (tag, z0))
        if len(r.emit) != spec.tapes:
            v.append("tapes: %s emits on %d tapes, machine has %d" % (tag, len(r.emit), spec.tapes))
        else:
            for t, (e, alpha) in enumerate(zip(r.emit, spec.query_alphabets), 1):
                if e is not None and e not in alpha:
                    v.append("tapes: %s writes %r outside query alphabet %d" % (tag, e, t))
        if spec.kind == "dfa" and r.read == LAMBDA:
            v.append("determinism: %s is a lambda move in a dfa" % tag)
        if (r.group is None) != (r.weight is None):
            v.append("weights: %s has a group without weight" % tag)
        if r.weight is not None and not (0 < r.weight <= 1):
            v.append("weights: %s has weight %s outside (0, 1]" % (tag, r.weight))
        if r.group is not None and spec.kind != "ppda":
            v.append("weights: %s carries a probability group in a %s" % (tag, spec.kind))
    if spec.kind == "dfa":
        reads = list(spec.input_alphabet) + [CENT, DOLLAR]
        for q in spec.states:
            if q in spec.halting:
                continue
            for a in reads:
                succ = [r for _, r in spec.rules_from(q) if r.read == a]
                if len(succ) != 1:
                    v.append("determinism: dfa has %d successors for (%s, %s)" % (len(succ), q, a))
    if spec.kind in ("npda", "ppda") and not spec.stack_alphabet:
        v.append("stack: %s needs a stack alphabet" % spec.kind)
    if spec.kind == "ppda":
        groups = {}
        for r in spec.rules:
            if r.group is not None:
                groups.setdefault(r.group, []).append(r)
        for g, rs in sorted(groups.items()):
            total = sum(r.weight for r in rs)
            if total != 1:
                v.append("weights: group %s sums to %s, not 1" % (g, total))
            if len({(r.src, r.read, r.top) for r in rs}) != 1:
                v.append("weights: group %s mixes rule left-hand sides" % g)
    if spec.oracle == "turing":
        trio = (spec.query_state, spec.yes_state, spec.no_state)
        if None in trio:
            v.append("turing: query-state, yes-state and no-state are required")
        elif len(set(trio)) != 3:
            v.append("turing: query, yes and no states must be distinct")
        else:
            if spec.rules_from(spec.query_state):
                v.append("turing: query state %s has outgoing rules" % spec.query_state)
            for st in trio:
                if st in spec.halting:
                    v.append("turing: %s must not be a halting state" % st)
        if spec.tapes != 1:
            v.append("turing: needs exactly one query tape, found %d" % spec.tapes)
    elif spec.query_state or spec.yes_state or spec.no_state:
        v.append("turing: query states given but oracle mode is %s" % spec.oracle)
    if spec.oracle == "many-one" and spec.tapes != 1:
        v.append("tapes: many-one mode needs exactly one query tape, found %d" % spec.tapes)
    if spec.oracle == "ktt" and spec.tapes != spec.k:
        v.append("tapes: ktt %d mode needs exactly %d query tapes, found %d"
                 % (spec.k, spec.k, spec.tapes))
    return v


def check(spec):
    problems = validate(spec)
    if problems:
        raise MachineError("machine %s is invalid: %s" % (spec.name, "; ".join(problems)))
    return spec
