"""Hierarchy levels, the quantified characterization and query circuits.

Level expressions are ordinary oracle expressions, so every level is
decided by the same engine.  Circuits are kept as immutable trees of gates
and leaves; identical subtrees are shared when written out.
"""

from dataclasses import dataclass
import itertools
import shlex

from .machine import MachineSpec
from .oracles import (Complement, Decider, FiniteSet, Intersect, Machine, Turing, Union,
                      split_answer_blocks)
from .simulate import RunBounds, valid_outputs
from .symbols import NATURAL, WordError, column, format_word, parse_word, split_column
from .transforms import guess_answers, natural_extensions

BUDGET = 1 << 20


class BudgetError(RuntimeError):
    """An enumeration would exceed its budget; no answer is given."""


@dataclass(frozen=True)
class LinearPoly:
    a: int
    b: int

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise ValueError("coefficients must be non-negative")

    def __call__(self, n):
        return self.a * n + self.b

    def dominates_identity(self):
        return self.a >= 1


def _as_expr(c):
    if isinstance(c, MachineSpec):
        return Machine(c)
    return c


# level expressions -------------------------------------------------------------------

def level_expr(kind, k, components):
    """The defining pattern of a level.

    sigma/pi: k - 1 Turing reducers followed by one oracle-free machine.
    cfl_k: k components, alternately intersected with a complement and unioned.
    cfl(k): intersection of k components.
    """
    comps = [_as_expr(c) for c in components]
    if k < 1:
        raise ValueError("level must be at least 1")
    if len(comps) != k:
        raise ValueError("%s level %d needs %d components, got %d" % (kind, k, k, len(comps)))
    if kind in ("sigma", "pi"):
        e = comps[-1]
        for red in reversed(comps[:-1]):
            spec = red.spec if isinstance(red, Machine) else red
            e = Turing(spec, Complement(e))
        return e if kind == "sigma" else Complement(e)
    if kind == "cfl_k":
        e = comps[0]
        for i, c in enumerate(comps[1:], 2):
            e = Intersect(e, Complement(c)) if i % 2 == 0 else Union(e, c)
        return e
    if kind == "cfl(k)":
        e = comps[0]
        for c in comps[1:]:
            e = Intersect(e, c)
        return e
    raise ValueError("unknown level kind %r" % kind)


@dataclass(frozen=True)
class Template:
    """Union of ``pairs`` cfl_2 slots, plus one CFL slot when ``odd``."""
    level: int
    pairs: int
    odd: bool

    def shape(self):
        parts = ["cfl_2"] * self.pairs + (["CFL"] if self.odd else [])
        s = parts[0]
        for p in parts[1:]:
            s = "Union(%s, %s)" % (s, p)
        return s

    def fill(self, slots):
        """slots: (positive, negative) pairs, then one expression when odd."""
        slots = list(slots)
        want = self.pairs + (1 if self.odd else 0)
        if len(slots) != want:
            raise ValueError("template for level %d takes %d slots" % (self.level, want))
        terms = [Intersect(_as_expr(a), Complement(_as_expr(b))) for a, b in slots[:self.pairs]]
        if self.odd:
            terms.append(_as_expr(slots[-1]))
        e = terms[0]
        for t in terms[1:]:
            e = Union(e, t)
        return e

    def fill_from_chain(self, components):
        """Slots equivalent to the nested cfl_k pattern over the same components.

        Expanding the nesting gives, for each odd component A_(2i-1), the term
        A_(2i-1) minus the union of every later even component.
        """
        comps = [_as_expr(c) for c in components]
        if len(comps) != self.level:
            raise ValueError("level %d needs %d components" % (self.level, self.level))
        slots = []
        for i in range(0, 2 * self.pairs, 2):
            later = [comps[j] for j in range(i + 1, self.level, 2)]
            neg = later[0]
            for c in later[1:]:
                neg = Union(neg, c)
            slots.append((comps[i], neg))
        if self.odd:
            slots.append(comps[-1])
        return self.fill(slots)


def decompose_cfl_k(level):
    if level < 1:
        raise ValueError("level must be at least 1")
    return Template(level, level // 2, level % 2 == 1)


# quantified characterization -----------------------------------------------------------

def _tracks(spec, width):
    alph = [set() for _ in range(width)]
    for c in spec.input_alphabet:
        try:
            parts = split_column(c)
        except WordError:
            raise ValueError("input symbol %r of %s is not a track column" % (c, spec.name))
        if len(parts) != width:
            raise ValueError("column %r of %s has width %d, expected %d"
                             % (c, spec.name, len(parts), width))
        for i, p in enumerate(parts):
            alph[i].add(p)
    return [sorted(a) for a in alph]


def eval_quantified(A, p, k, x, decider=None, budget=BUDGET):
    """Exists x~ exists y1 forall y2 ... Q_k y_k: [x~, y1, ..., yk] in A, with x = Ext(x~).

    Track words range over the symbols that occur on that track in A's
    columns and share the length of x~, which is at most p(|x|).  The
    innermost block walks its track column by column and stops as soon as
    the recognizer's verdict no longer depends on the rest.
    """
    spec = A.spec if isinstance(A, Machine) else A
    if spec.oracle != "none":
        raise ValueError("%s must be oracle-free" % spec.name)
    if k < 1:
        raise ValueError("k must be at least 1")
    x = tuple(x)
    decider = decider or Decider()
    alph = _tracks(spec, k + 1)
    cols = set(spec.input_alphabet)
    top = p(len(x))
    if top < len(x):
        return False
    rec = decider.recognizer(Machine(spec), RunBounds.default(top).max_stack_height)
    spent = [0]

    def charge(n=1):
        spent[0] += n
        if spent[0] > budget:
            raise BudgetError("quantifier enumeration passed %d steps" % budget)

    def inner(fixed, m, exists):
        def walk(j, r):
            charge()
            f = rec.fixed(r)
            if f is not None:
                return f
            if j == m:
                return rec.finish(r)
            for s in alph[k]:
                c = column([t[j] for t in fixed] + [s])
                nr = rec.feed(r, c) if c in cols else 0
                if walk(j + 1, nr) == exists:
                    return exists
            return not exists
        return walk(0, rec.start())

    def block(i, fixed, m):
        exists = i % 2 == 1
        if i == k:
            return inner(fixed, m, exists)
        size = len(alph[i]) ** m
        if size > budget:
            raise BudgetError("track %d has %d candidates of length %d" % (i, size, m))
        for y in itertools.product(alph[i], repeat=m):
            charge()
            if block(i + 1, fixed + [y], m) == exists:
                return exists
        return not exists

    for m in range(len(x), top + 1):
        exts = sorted(e for e in natural_extensions(x, m) if len(e) == m)
        charge(len(exts))
        for xt in exts:
            if any(t not in alph[0] for t in xt):
                continue
            if block(1, [xt], m):
                return True
    return False


def replay_track(spec, x, indices):
    """[x~, indices] for a path of spec given by 1-based rule indices, padded past an early accept."""
    x = tuple(x)
    sigma = set(spec.input_alphabet)
    xs, used = [], 0
    for i in indices:
        r = spec.rules[int(i) - 1]
        if r.read in sigma:
            xs.append(r.read)
            used += 1
        else:
            xs.append(NATURAL)
    cols = [column((a, i)) for a, i in zip(xs, indices)]
    cols += [column((a, NATURAL)) for a in x[used:]]
    return tuple(cols)


# circuits --------------------------------------------------------------------------------

@dataclass(frozen=True)
class Leaf:
    positive: bool
    word: tuple


@dataclass(frozen=True)
class Gate:
    op: str              # OR | AND
    children: tuple


TRUE = Gate("AND", ())
FALSE = Gate("OR", ())


class CircuitError(ValueError):
    pass


@dataclass(frozen=True)
class Circuit:
    top: Gate

    def nodes(self):
        """Distinct nodes, children before parents, in first-visit order."""
        seen = {}

        def visit(n):
            if n in seen:
                return
            if isinstance(n, Gate):
                for c in n.children:
                    visit(c)
            seen[n] = None
        visit(self.top)
        return list(seen)

    @property
    def depth(self):
        memo = {}

        def d(n):
            if isinstance(n, Leaf):
                return 0
            if n not in memo:
                memo[n] = 1 + max((d(c) for c in n.children), default=0)
            return memo[n]
        return d(self.top)

    @property
    def leaves(self):
        return sorted({n for n in self.nodes() if isinstance(n, Leaf)},
                      key=lambda l: (len(l.word), l.word, not l.positive))

    @property
    def variables(self):
        return sorted({l.word for l in self.leaves}, key=lambda w: (len(w), w))

    @property
    def bottom_fanin(self):
        bottoms = [n for n in self.nodes() if isinstance(n, Gate)
                   and any(isinstance(c, Leaf) for c in n.children)]
        return max((len(g.children) for g in bottoms), default=0)

    def problems(self):
        """Breaches of: OR on top, alternating gate types, all leaves on one level."""
        v = []
        if self.top.op != "OR":
            v.append("top gate is %s, not OR" % self.top.op)
        levels = set()

        def walk(n, depth):
            if isinstance(n, Leaf):
                levels.add(depth)
                return
            for c in n.children:
                if isinstance(c, Gate) and c.op == n.op:
                    v.append("%s gate directly under %s gate" % (c.op, n.op))
                walk(c, depth + 1)
        walk(self.top, 0)
        if len(levels) > 1:
            v.append("leaves sit on levels %s" % sorted(levels))
        return sorted(set(v))


def _member_fn(A, decider):
    if isinstance(A, (set, frozenset)):
        words = {parse_word(w) if isinstance(w, str) else tuple(w) for w in A}
        return lambda y: y in words
    decider = decider or Decider()
    return lambda y: decider.member(A, y)


def eval_circuit(C, A, decider=None):
    """Value of C when each leaf reads the characteristic bit of its word in A."""
    ask = _member_fn(A, decider)
    bits = {}
    memo = {}

    def ev(n):
        if isinstance(n, Leaf):
            if n.word not in bits:
                bits[n.word] = bool(ask(n.word))
            return bits[n.word] == n.positive
        hit = memo.get(n)
        if hit is None:
            if n.op == "OR":
                hit = any(ev(c) for c in n.children)
            else:
                hit = all(ev(c) for c in n.children)
            memo[n] = hit
        return hit
    top = C.top if isinstance(C, Circuit) else C
    return ev(top)


def _dual(n, memo):
    hit = memo.get(n)
    if hit is None:
        if isinstance(n, Leaf):
            hit = Leaf(not n.positive, n.word)
        else:
            hit = Gate("AND" if n.op == "OR" else "OR", tuple(_dual(c, memo) for c in n.children))
        memo[n] = hit
    return hit


def dual_circuit(C):
    """Swap gate types and leaf signs; the result computes the negation."""
    if isinstance(C, Circuit):
        return Circuit(_dual(C.top, {}))
    return _dual(C, {})


def _guessed_blocks(M, x, bounds):
    G = guess_answers(M)
    outs = valid_outputs(G, x, bounds)
    blocks = set()
    for (tape,) in outs:
        b = split_answer_blocks(tape)
        if b is None:
            raise CircuitError("guessed output %r is malformed" % format_word(tape))
        blocks.add(tuple((bit == "1", y) for bit, y in b))
    return sorted(blocks)


def _sort_children(children):
    def key(n):
        if isinstance(n, Leaf):
            return (0, len(n.word), n.word, not n.positive)
        return (1, n.op, len(n.children), repr(n.children))
    return tuple(sorted(set(children), key=key))


def _depth1(M, x, bounds):
    """Accepting guessed-answer blocks of a Turing reducer, as an OR of ANDs."""
    terms = []
    for blocks in _guessed_blocks(M, x, bounds):
        terms.append(Gate("AND", _sort_children(Leaf(b, y) for b, y in blocks)))
    return Gate("OR", _sort_children(terms))


MAX_TERMS = 200000


def build_query_circuit(chain, x, k=None, bounds=None):
    """Circuit over oracle words deciding x for any oracle.

    With one reducer M the language is Turing(M, A).  With two reducers
    (M1, M2) it is Turing(M1, Complement(Turing(M2, A))).  The result has
    depth k + 1 with an OR on top.
    """
    chain = list(chain)
    k = len(chain) if k is None else k
    if k not in (1, 2):
        raise CircuitError("circuit extraction is implemented for k = 1 and k = 2, not %d" % k)
    if len(chain) != k:
        raise CircuitError("chain has %d machines, expected %d" % (len(chain), k))
    for M in chain:
        if M.oracle != "turing":
            raise CircuitError("%s is not a Turing reducer" % M.name)
    x = tuple(x)
    if k == 1:
        return Circuit(_depth1(chain[0], x, bounds))
    M1, M2 = chain
    sub = {}

    def inner(y):
        # the OR of ANDs deciding y in Turing(M2, A)
        if y not in sub:
            sub[y] = _depth1(M2, y, None)
        return sub[y]

    terms = []
    for blocks in _guessed_blocks(M1, x, bounds):
        # a yes-answer means y is outside Turing(M2, A): every path's AND fails
        clauses = []
        choices = []
        for yes, y in blocks:
            D = inner(y)
            if yes:
                clauses.extend(_dual(a, {}) for a in D.children)
            else:
                choices.append(D.children)
        if any(not c for c in choices):
            continue
        # a no-answer is witnessed by one accepting path; the witnesses join the OR
        for pick in itertools.product(*choices):
            lits = [Gate("OR", (l,)) for a in pick for l in a.children]
            terms.append(Gate("AND", _sort_children(clauses + lits)))
            if len(terms) > MAX_TERMS:
                raise CircuitError("more than %d terms" % MAX_TERMS)
    return Circuit(Gate("OR", _sort_children(terms)))


def chain_expr(chain, A):
    """The relativized language a circuit chain decides, as an expression."""
    chain = list(chain)
    if len(chain) == 1:
        return Turing(chain[0], A)
    if len(chain) == 2:
        return Turing(chain[0], Complement(Turing(chain[1], A)))
    raise CircuitError("chains of length 1 or 2 only")


# circuit text format -----------------------------------------------------------------------

def format_circuit(C):
    ids = {}
    lines = []
    for n in C.nodes():
        i = ids[n] = len(ids) + 1
        if isinstance(n, Leaf):
            lines.append('leaf %d %s "%s"' % (i, "+" if n.positive else "-", format_word(n.word)))
        else:
            lines.append(" ".join(["gate", str(i), n.op] + [str(ids[c]) for c in n.children]))
    lines.append("top %d" % ids[C.top])
    return "\n".join(lines) + "\n"


def parse_circuit(text):
    nodes = {}
    top = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        try:
            parts = shlex.split(line)
        except ValueError as exc:
            raise CircuitError("line %d: %s" % (lineno, exc))
        head = parts[0]
        try:
            if head == "leaf":
                _, i, sign, word = parts
                if sign not in "+-" or len(sign) != 1:
                    raise CircuitError("line %d: sign must be + or -" % lineno)
                nodes[int(i)] = Leaf(sign == "+", parse_word(word))
            elif head == "gate":
                i, op, kids = int(parts[1]), parts[2], parts[3:]
                if op not in ("OR", "AND"):
                    raise CircuitError("line %d: gate type must be OR or AND" % lineno)
                nodes[i] = Gate(op, tuple(nodes[int(c)] for c in kids))
            elif head == "top":
                top = nodes[int(parts[1])]
            else:
                raise CircuitError("line %d: unknown directive %r" % (lineno, head))
        except KeyError as exc:
            raise CircuitError("line %d: node %s used before it is defined" % (lineno, exc))
        except (ValueError, IndexError) as exc:
            if isinstance(exc, CircuitError):
                raise
            raise CircuitError("line %d: malformed line %r" % (lineno, line))
    if top is None:
        raise CircuitError("no top line")
    return Circuit(top)


def load_circuit(path):
    with open(path, encoding="utf-8") as fh:
        return parse_circuit(fh.read())


def save_circuit(C, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_circuit(C))


def random_finite_oracle(rng, alphabet, max_len, p=0.5):
    """Each word over alphabet up to max_len joins independently with probability p."""
    from .symbols import words_upto
    words = [w for w in words_upto(alphabet, max_len) if rng.random() < p]
    return FiniteSet(frozenset(words), frozenset(alphabet))
