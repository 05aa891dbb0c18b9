"""Oracle expressions and recursive bounded membership.

An expression tree mixes machines, Boolean operators, Dyck languages and
reduction nodes.  ``member`` decides a word by recursion; every oracle
query is a fresh bounded run sized by the query word.

Many-one nodes are decided by a joint search over the reducer's
configurations and an online recognizer for the oracle, so the reducer's
outputs are never listed one by one.  ``decide_many_one(method="enumerate")``
keeps the literal definition for cross-checking.
"""

from dataclasses import dataclass, field
import os

from .machine import MachineError, load_machine
from .simulate import (Pool, ResourceExceeded, RunBounds, accepts, bounds_for,
                       check_word, explore, initial_stack, moves, tape_of, valid_outputs)
from .symbols import (CENT, DOLLAR, HASH, LAMBDA, NATURAL, WordError, column_alphabet,
                      delete_natural, format_word, parse_word, split_column, words_upto)


class QueryAlphabetError(ValueError):
    pass


class ExprError(ValueError):
    pass


# expression nodes -------------------------------------------------------------

@dataclass(frozen=True)
class Machine:
    spec: object
    source: object = field(default=None, compare=False)


@dataclass(frozen=True)
class Builtin:
    name: str
    params: tuple = ()


@dataclass(frozen=True)
class FiniteSet:
    strings: frozenset
    alphabet: object = None


@dataclass(frozen=True)
class Complement:
    e: object


@dataclass(frozen=True)
class Intersect:
    a: object
    b: object


@dataclass(frozen=True)
class Union:
    a: object
    b: object


@dataclass(frozen=True)
class Reverse:
    e: object


@dataclass(frozen=True)
class Dyck:
    opens: tuple

    @property
    def closes(self):
        return tuple(o + "'" for o in self.opens)


@dataclass(frozen=True)
class DyckExt:
    tracks: tuple          # one tuple of opening symbols per track


@dataclass(frozen=True)
class ManyOne:
    reducer: object
    e: object


@dataclass(frozen=True)
class Turing:
    reducer: object
    e: object


@dataclass(frozen=True)
class Ktt:
    reducer: object
    table: object
    e: object


def dyck(d):
    return Dyck(tuple("a%d" % i for i in range(1, d + 1)))


def dyck_ext(d, opens=("a1",)):
    return DyckExt(tuple(tuple(opens) for _ in range(d)))


def finite(words, alphabet=None):
    return FiniteSet(frozenset(parse_word(w) for w in words),
                     frozenset(alphabet) if alphabet is not None else None)


def intersect_all(exprs):
    exprs = list(exprs)
    out = exprs[0]
    for e in exprs[1:]:
        out = Intersect(out, e)
    return out


def union_all(exprs):
    exprs = list(exprs)
    out = exprs[0]
    for e in exprs[1:]:
        out = Union(out, e)
    return out


# builtins ---------------------------------------------------------------------

@dataclass(frozen=True)
class BuiltinDef:
    name: str
    alphabet: object       # callable(params) -> frozenset
    predicate: object      # callable(word, params, decider) -> bool


BUILTINS = {}


def register_builtin(name, alphabet, predicate):
    BUILTINS[name] = BuiltinDef(name, alphabet, predicate)


def _builtin(name):
    if name not in BUILTINS:
        from . import zoo  # noqa: F401  registers the reference predicates
    try:
        return BUILTINS[name]
    except KeyError:
        raise ExprError("unknown builtin %r" % name)


def _answers_alphabet(params):
    bit, e = params
    return alphabet(e) | {"0", "1", NATURAL}


def split_answer_blocks(word):
    """Cut b1 y1 <natural> b2 y2 <natural> ... into (bit, query) pairs; None if malformed."""
    blocks, cur = [], []
    for t in word:
        if t == NATURAL:
            if not cur or cur[0] not in ("0", "1"):
                return None
            blocks.append((cur[0], tuple(cur[1:])))
            cur = []
        else:
            cur.append(t)
    if cur:
        return None
    return blocks


def _answers_predicate(word, params, decider):
    bit, e = params
    blocks = split_answer_blocks(word)
    if blocks is None:
        return False
    return all(decider.member(e, y) for b, y in blocks if b == bit)


register_builtin("answers", _answers_alphabet, _answers_predicate)


# alphabets --------------------------------------------------------------------

def alphabet(e):
    """The alphabet an expression is defined over, or None when it is open."""
    if isinstance(e, Machine):
        return frozenset(e.spec.input_alphabet)
    if isinstance(e, FiniteSet):
        if e.alphabet is not None:
            return e.alphabet
        return None
    if isinstance(e, (Complement, Reverse)):
        return alphabet(e.e)
    if isinstance(e, (Intersect, Union)):
        a, b = alphabet(e.a), alphabet(e.b)
        if a is None:
            return b
        if b is None:
            return a
        return a | b
    if isinstance(e, Dyck):
        return frozenset(e.opens) | frozenset(e.closes)
    if isinstance(e, DyckExt):
        return column_alphabet([set(t) | {o + "'" for o in t} | {NATURAL} for t in e.tracks])
    if isinstance(e, (ManyOne, Turing, Ktt)):
        return frozenset(e.reducer.input_alphabet)
    if isinstance(e, Builtin):
        return frozenset(_builtin(e.name).alphabet(e.params))
    raise ExprError("not an expression: %r" % (e,))


def check_expr(e):
    """Structural problems: reducer modes and query alphabets at reduction boundaries."""
    problems = []

    def walk(x):
        if isinstance(x, Machine):
            if x.spec.oracle != "none":
                problems.append("machine %s inside an expression must be oracle-free" % x.spec.name)
        elif isinstance(x, (ManyOne, Turing, Ktt)):
            want = {ManyOne: "many-one", Turing: "turing", Ktt: "ktt"}[type(x)]
            if x.reducer.oracle != want:
                problems.append("reducer %s has mode %s, node needs %s"
                                % (x.reducer.name, x.reducer.oracle, want))
            inner = alphabet(x.e)
            for q in x.reducer.query_alphabets:
                if inner is not None and frozenset(q) != inner:
                    problems.append("reducer %s writes over {%s} but its oracle is over {%s}"
                                    % (x.reducer.name, " ".join(sorted(q)), " ".join(sorted(inner))))
            walk(x.e)
        elif isinstance(x, (Complement, Reverse)):
            walk(x.e)
        elif isinstance(x, (Intersect, Union)):
            walk(x.a)
            walk(x.b)
    walk(e)
    return problems


# direct predicates --------------------------------------------------------------

def is_dyck(word, opens):
    closes = {o + "'": o for o in opens}
    opens = set(opens)
    stack = []
    for t in word:
        if t in opens:
            stack.append(t)
        elif t in closes:
            if not stack or stack[-1] != closes[t]:
                return False
            stack.pop()
        else:
            return False
    return not stack


# online recognizers -----------------------------------------------------------------
#
# A recognizer reads a word symbol by symbol.  States are small ints; 0 and 1
# are reserved in each recognizer's own numbering for "rejected whatever
# follows" and "accepted whatever follows".

REJECT, ACCEPT = 0, 1


class Recognizer:
    def __init__(self):
        self.table = [None, None]
        self.ids = {}
        self.steps = {}

    def intern(self, content):
        i = self.ids.get(content)
        if i is None:
            i = len(self.table)
            self.ids[content] = i
            self.table.append(content)
        return i

    def fixed(self, r):
        if r == ACCEPT:
            return True
        if r == REJECT:
            return False
        return None

    def feed(self, r, sym):
        if r < 2:
            return r
        key = (r, sym)
        out = self.steps.get(key)
        if out is None:
            out = self.steps[key] = self._feed(self.table[r], sym)
        return out


class NegatedRecognizer:
    def __init__(self, child):
        self.child = child

    def start(self):
        return self.child.start()

    def feed(self, r, sym):
        return self.child.feed(r, sym)

    def fixed(self, r):
        f = self.child.fixed(r)
        return None if f is None else not f

    def finish(self, r):
        return not self.child.finish(r)


class PairRecognizer(Recognizer):
    def __init__(self, a, b, conj):
        super().__init__()
        self.a, self.b, self.conj = a, b, conj

    def make(self, ra, rb):
        fa, fb = self.a.fixed(ra), self.b.fixed(rb)
        if self.conj:
            if fa is False or fb is False:
                return REJECT
            if fa is True and fb is True:
                return ACCEPT
        else:
            if fa is True or fb is True:
                return ACCEPT
            if fa is False and fb is False:
                return REJECT
        return self.intern((ra, rb))

    def start(self):
        return self.make(self.a.start(), self.b.start())

    def _feed(self, content, sym):
        ra, rb = content
        return self.make(self.a.feed(ra, sym), self.b.feed(rb, sym))

    def finish(self, r):
        if r < 2:
            return r == ACCEPT
        ra, rb = self.table[r]
        first = _try_finish(self.a, ra)
        if first is not None and first != self.conj:
            return first
        second = _try_finish(self.b, rb)
        if second is not None and second != self.conj:
            return second
        if first is None or second is None:
            raise ResourceExceeded("operand of a Boolean node hit its bounds")
        return self.conj


def _try_finish(rec, r):
    try:
        return rec.finish(r)
    except ResourceExceeded:
        return None


class FiniteRecognizer(Recognizer):
    def __init__(self, words):
        super().__init__()
        self.words = frozenset(words)
        self.prefixes = {w[:i] for w in self.words for i in range(len(w) + 1)}

    def start(self):
        return self.intern(()) if () in self.prefixes else REJECT

    def _feed(self, prefix, sym):
        p = prefix + (sym,)
        return self.intern(p) if p in self.prefixes else REJECT

    def finish(self, r):
        return r >= 2 and self.table[r] in self.words


class DyckRecognizer(Recognizer):
    def __init__(self, tracks, ext=False):
        super().__init__()
        self.tracks = tracks
        self.ext = ext
        self.width = len(tracks)
        self.opens = [set(t) for t in tracks]
        self.closes = [{o + "'": o for o in t} for t in tracks]

    def start(self):
        return self.intern(((),) * self.width)

    def _feed(self, stacks, sym):
        if self.ext:
            try:
                parts = split_column(sym)
            except WordError:
                return REJECT
        else:
            parts = (sym,)
        if len(parts) != self.width:
            return REJECT
        out = []
        for i, t in enumerate(parts):
            st = stacks[i]
            if t == NATURAL and self.ext:
                pass
            elif t in self.opens[i]:
                st = st + (t,)
            elif t in self.closes[i]:
                if not st or st[-1] != self.closes[i][t]:
                    return REJECT
                st = st[:-1]
            else:
                return REJECT
            out.append(st)
        return self.intern(tuple(out))

    def finish(self, r):
        return r >= 2 and all(not s for s in self.table[r])


class MachineRecognizer(Recognizer):
    """Subset simulation of an oracle-free machine over its input stream."""

    def __init__(self, spec, cap):
        super().__init__()
        self.spec = spec
        self.cap = cap
        self.pool = Pool()
        self.accept = set(spec.accept)
        self.halting = spec.halting
        self.lam = {}
        self.by_read = {}
        for q in spec.states:
            for idx, r in spec.rules_from(q):
                if r.read == LAMBDA:
                    self.lam.setdefault(q, []).append(r)
                else:
                    self.by_read.setdefault((q, r.read), []).append(r)

    def _apply(self, r, sid):
        pool = self.pool
        if r.top is None:
            return sid
        if not sid or pool.sym[sid] != r.top:
            return None
        return pool.push_all(pool.parent[sid], r.push) if r.push else pool.parent[sid]

    def _close(self, configs, exceeded):
        seen = set()
        todo = list(configs)
        out = []
        while todo:
            c = todo.pop()
            if c in seen:
                continue
            seen.add(c)
            q, sid = c
            if q in self.halting:
                if q in self.accept:
                    return ACCEPT
                continue
            out.append(c)
            for r in self.lam.get(q, ()):
                n = self._apply(r, sid)
                if n is None:
                    continue
                if self.pool.height[n] > self.cap:
                    exceeded = True
                    continue
                todo.append((r.dst, n))
        if not out and not exceeded:
            return REJECT
        return self.intern((frozenset(out), exceeded))

    def _step(self, configs, sym, exceeded):
        nxt = []
        for q, sid in configs:
            for r in self.by_read.get((q, sym), ()):
                n = self._apply(r, sid)
                if n is None:
                    continue
                if self.pool.height[n] > self.cap:
                    exceeded = True
                    continue
                nxt.append((r.dst, n))
        return self._close(nxt, exceeded)

    def start(self):
        init = self._close([(self.spec.start, initial_stack(self.spec, self.pool))], False)
        if init < 2:
            return init
        configs, exc = self.table[init]
        return self._step(configs, CENT, exc)

    def _feed(self, content, sym):
        configs, exc = content
        return self._step(configs, sym, exc)

    def finish(self, r):
        if r < 2:
            return r == ACCEPT
        configs, exc = self.table[r]
        end = self._step(configs, DOLLAR, exc)
        if end == ACCEPT:
            return True
        if end >= 2:
            # configurations left after the right endmarker: only lambda moves
            # remain and none of them reaches acceptance
            if self.table[end][1]:
                raise ResourceExceeded("oracle machine %s hit its stack bound" % self.spec.name)
        if exc:
            raise ResourceExceeded("oracle machine %s hit its stack bound" % self.spec.name)
        return False


class ManyOneRecognizer(Recognizer):
    """Reducer configurations paired with oracle recognizer states."""

    def __init__(self, spec, inner, cap):
        super().__init__()
        self.spec = spec
        self.inner = inner
        self.cap = cap
        self.pool = Pool()
        self.accept = set(spec.accept)
        self.halting = spec.halting
        self.lam = {}
        self.by_read = {}
        for q in spec.states:
            for idx, r in spec.rules_from(q):
                if r.read == LAMBDA:
                    self.lam.setdefault(q, []).append(r)
                else:
                    self.by_read.setdefault((q, r.read), []).append(r)

    def _apply(self, r, sid, ri):
        pool = self.pool
        if r.top is None:
            n = sid
        elif not sid or pool.sym[sid] != r.top:
            return None
        else:
            n = pool.push_all(pool.parent[sid], r.push) if r.push else pool.parent[sid]
        e = r.emit[0]
        if e is not None:
            ri = self.inner.feed(ri, e)
            if self.inner.fixed(ri) is False:
                return None
        return (r.dst, n, ri)

    def _close(self, configs, exceeded):
        seen = set()
        todo = list(configs)
        out = []
        while todo:
            c = todo.pop()
            if c in seen:
                continue
            seen.add(c)
            q, sid, ri = c
            if q in self.halting:
                if q in self.accept:
                    try:
                        if self.inner.finish(ri):
                            return ACCEPT
                    except ResourceExceeded:
                        exceeded = True
                continue
            out.append(c)
            for r in self.lam.get(q, ()):
                n = self._apply(r, sid, ri)
                if n is None:
                    continue
                if self.pool.height[n[1]] > self.cap:
                    exceeded = True
                    continue
                todo.append(n)
        if not out and not exceeded:
            return REJECT
        return self.intern((frozenset(out), exceeded))

    def _step(self, configs, sym, exceeded):
        nxt = []
        for q, sid, ri in configs:
            for r in self.by_read.get((q, sym), ()):
                n = self._apply(r, sid, ri)
                if n is None:
                    continue
                if self.pool.height[n[1]] > self.cap:
                    exceeded = True
                    continue
                nxt.append(n)
        return self._close(nxt, exceeded)

    def start(self):
        init = self._close([(self.spec.start, initial_stack(self.spec, self.pool),
                             self.inner.start())], False)
        if init < 2:
            return init
        configs, exc = self.table[init]
        return self._step(configs, CENT, exc)

    def _feed(self, content, sym):
        configs, exc = content
        return self._step(configs, sym, exc)

    def finish(self, r):
        if r < 2:
            return r == ACCEPT
        configs, exc = self.table[r]
        end = self._step(configs, DOLLAR, exc)
        if end == ACCEPT:
            return True
        if exc or (end >= 2 and self.table[end][1]):
            raise ResourceExceeded("reducer %s hit its stack bound" % self.spec.name)
        return False


class BufferRecognizer(Recognizer):
    """Fallback: remember the word and decide it at the end."""

    def __init__(self, expr, decider):
        super().__init__()
        self.expr = expr
        self.decider = decider

    def start(self):
        return self.intern(())

    def _feed(self, prefix, sym):
        return self.intern(prefix + (sym,))

    def finish(self, r):
        return self.decider.member(self.expr, self.table[r])


# decisions ----------------------------------------------------------------------

@dataclass
class KttDecision:
    value: bool
    acc_empty: bool
    outputs: int

    def __bool__(self):
        return self.value


class Decider:
    """Membership with caches shared across calls; expressions are immutable."""

    def __init__(self, coeff=64):
        self.coeff = coeff
        self.cache = {}
        self.recognizers = {}
        self.diagnostics = []

    def bounds(self, word):
        return RunBounds.default(len(word), self.coeff)

    # recognizers

    def recognizer(self, e, cap):
        key = (e, cap)
        rec = self.recognizers.get(key)
        if rec is None:
            rec = self.recognizers[key] = self._make(e, cap)
        return rec

    def _make(self, e, cap):
        if isinstance(e, Machine):
            return MachineRecognizer(e.spec, cap)
        if isinstance(e, Complement):
            return NegatedRecognizer(self.recognizer(e.e, cap))
        if isinstance(e, Intersect):
            return PairRecognizer(self.recognizer(e.a, cap), self.recognizer(e.b, cap), True)
        if isinstance(e, Union):
            return PairRecognizer(self.recognizer(e.a, cap), self.recognizer(e.b, cap), False)
        if isinstance(e, FiniteSet):
            return FiniteRecognizer(e.strings)
        if isinstance(e, Dyck):
            return DyckRecognizer((e.opens,))
        if isinstance(e, DyckExt):
            return DyckRecognizer(e.tracks, ext=True)
        if isinstance(e, ManyOne) and e.reducer.kind != "ppda":
            return ManyOneRecognizer(e.reducer, self.recognizer(e.e, cap), cap)
        return BufferRecognizer(e, self)

    # membership

    def member(self, e, w, bounds=None):
        w = parse_word(w) if isinstance(w, str) else tuple(w)
        key = (e, w, bounds)
        hit = self.cache.get(key)
        if hit is None:
            hit = self.cache[key] = self._member(e, w, bounds)
        return hit

    def _member(self, e, w, bounds):
        if isinstance(e, Machine):
            if e.spec.oracle == "turing":
                raise ExprError("Turing reducer %s used without an oracle" % e.spec.name)
            res = accepts(e.spec, w, bounds_for(w, bounds, self.coeff))
            if res.verdict == "resource_exceeded":
                raise ResourceExceeded("machine %s on %r: %d paths hit the run bounds"
                                       % (e.spec.name, format_word(w), res.exceeded_paths))
            return res.accepted
        if isinstance(e, FiniteSet):
            self._check_alpha(e, w)
            return w in e.strings
        if isinstance(e, Complement):
            self._check_alpha(e, w)
            return not self.member(e.e, w, bounds)
        if isinstance(e, Intersect):
            return self.member(e.a, w, bounds) and self.member(e.b, w, bounds)
        if isinstance(e, Union):
            return self.member(e.a, w, bounds) or self.member(e.b, w, bounds)
        if isinstance(e, Reverse):
            return self.member(e.e, tuple(reversed(w)), bounds)
        if isinstance(e, Dyck):
            return is_dyck(w, e.opens)
        if isinstance(e, DyckExt):
            return dyck_ext_member(e, w)
        if isinstance(e, ManyOne):
            return self.decide_many_one(e.reducer, e.e, w, bounds)
        if isinstance(e, Turing):
            return self.decide_turing(e.reducer, e.e, w, bounds)
        if isinstance(e, Ktt):
            return self.decide_ktt(e.reducer, e.table, e.e, w, bounds).value
        if isinstance(e, Builtin):
            d = _builtin(e.name)
            return bool(d.predicate(w, e.params, self))
        raise ExprError("not an expression: %r" % (e,))

    def _check_alpha(self, e, w):
        a = alphabet(e)
        if a is not None:
            for t in w:
                if t not in a:
                    raise WordError("symbol %r is outside the expression alphabet" % t)

    def _query(self, e):
        alpha = alphabet(e)

        def ask(y):
            if alpha is not None:
                bad = [t for t in y if t not in alpha]
                if bad:
                    raise QueryAlphabetError("query %r uses %r outside the oracle alphabet"
                                             % (format_word(y), bad[0]))
            return self.member(e, y)
        return ask

    def decide_many_one(self, M, A, x, bounds=None, method="product"):
        if M.oracle != "many-one" or M.tapes != 1:
            raise MachineError("%s is not a one-tape many-one reducer" % M.name)
        x = tuple(x)
        bounds = bounds_for(x, bounds, self.coeff)
        if method == "enumerate":
            ask = self._query(A)
            outs = valid_outputs(M, x, bounds)
            return any(ask(y[0]) for y in sorted(outs))
        return self._product(M, A, x, bounds)

    def _product(self, M, A, x, bounds):
        check_word(M, x)
        cap = RunBounds.default(bounds.max_tape_len, self.coeff).max_stack_height
        rec = self.recognizer(A, cap)
        alpha = alphabet(A)
        tape = tape_of(x)
        pool = Pool()
        accept = set(M.accept)
        halting = M.halting
        start = (M.start, 0, initial_stack(M, pool), rec.start())
        seen = {start}
        frontier = [start]
        exceeded = 0
        depth = 0
        while frontier:
            nxt = []
            at_limit = depth >= bounds.max_steps
            for cfg in frontier:
                state, head, sid, ri = cfg
                if state in halting:
                    if state in accept:
                        try:
                            if rec.finish(ri):
                                return True
                        except ResourceExceeded:
                            exceeded += 1
                    continue
                succ = []
                for idx, r, nh, nsid in moves(M, tape, state, head, sid, pool):
                    if pool.height[nsid] > bounds.max_stack_height:
                        exceeded += 1
                        continue
                    e = r.emit[0]
                    nri = ri
                    if e is not None:
                        if alpha is not None and e not in alpha:
                            raise QueryAlphabetError("reducer %s writes %r outside the oracle alphabet"
                                                     % (M.name, e))
                        nri = rec.feed(ri, e)
                        if rec.fixed(nri) is False:
                            continue
                    succ.append((r.dst, nh, nsid, nri))
                if succ and at_limit:
                    exceeded += 1
                    continue
                for c in succ:
                    if c not in seen:
                        seen.add(c)
                        nxt.append(c)
            frontier = nxt
            depth += 1
        if exceeded:
            raise ResourceExceeded("many-one decision for %s on %r: %d paths hit the bounds"
                                   % (M.name, format_word(x), exceeded))
        return False

    def decide_turing(self, M, A, x, bounds=None):
        if M.oracle != "turing":
            raise MachineError("%s is not a Turing reducer" % M.name)
        x = tuple(x)
        bounds = bounds_for(x, bounds, self.coeff)
        ex, _, _ = explore(M, x, bounds, with_tapes=True, query=self._query(A),
                           stop_on_accept=True)
        if ex.accepting:
            return True
        if ex.exceeded:
            raise ResourceExceeded("Turing reducer %s on %r: %d paths hit the bounds"
                                   % (M.name, format_word(x), ex.exceeded))
        return False

    def decide_ktt(self, M, B, A, x, bounds=None):
        if M.oracle != "ktt":
            raise MachineError("%s is not a truth-table reducer" % M.name)
        x = tuple(x)
        bounds = bounds_for(x, bounds, self.coeff)
        outs = valid_outputs(M, x, bounds)
        ask = self._query(A)
        value = False
        for ys in sorted(outs):
            z = tuple("1" if ask(y) else "0" for y in ys)
            enc = x + (HASH,) + z
            res = accepts(B, enc, bounds_for(enc, None, self.coeff))
            if res.verdict == "resource_exceeded":
                raise ResourceExceeded("truth table %s hit its bounds" % B.name)
            if res.accepted:
                value = True
                break
        if not outs:
            self.diagnostics.append(("ktt-empty-acc", M.name, format_word(x)))
        return KttDecision(value, not outs, len(outs))

    def table(self, e, alpha, max_len, bounds=None):
        alpha = sorted(alpha)
        if len(alpha) > 1 and sum(len(alpha) ** n for n in range(max_len + 1)) >= 2 ** 20:
            raise ValueError("table would exceed 2^20 rows")
        return [(w, self.member(e, w, bounds)) for w in words_upto(alpha, max_len)]


def dyck_ext_member(e, w):
    width = len(e.tracks)
    rows = [[] for _ in range(width)]
    for tok in w:
        try:
            parts = split_column(tok)
        except WordError:
            return False
        if len(parts) != width:
            return False
        for i, p in enumerate(parts):
            rows[i].append(p)
    return all(is_dyck(delete_natural(tuple(r)), t) for r, t in zip(rows, e.tracks))


_default = None


def default_decider():
    global _default
    if _default is None:
        _default = Decider()
    return _default


def member(e, w, bounds=None, decider=None):
    return (decider or Decider()).member(e, w, bounds)


def decide_many_one(M, A, x, bounds=None, method="product", decider=None):
    return (decider or Decider()).decide_many_one(M, A, x, bounds, method)


def decide_turing(M, A, x, bounds=None, decider=None):
    return (decider or Decider()).decide_turing(M, A, x, bounds)


def decide_ktt(M, B, A, x, bounds=None, decider=None):
    return (decider or Decider()).decide_ktt(M, B, A, x, bounds)


def table(e, alpha, max_len, bounds=None, decider=None):
    return (decider or Decider()).table(e, alpha, max_len, bounds)


# expression text format --------------------------------------------------------------

def _tokenize(text):
    out = []
    i = 0
    line = 1
    while i < len(text):
        c = text[i]
        if c == "\n":
            line += 1
            i += 1
        elif c.isspace():
            i += 1
        elif c == ";":
            while i < len(text) and text[i] != "\n":
                i += 1
        elif c in "()":
            out.append((c, line))
            i += 1
        elif c == '"':
            j = text.find('"', i + 1)
            if j < 0:
                raise ExprError("line %d: unterminated string" % line)
            out.append(('"' + text[i + 1:j], line))
            line += text.count("\n", i, j)
            i = j + 1
        else:
            j = i
            while j < len(text) and not text[j].isspace() and text[j] not in '()"':
                j += 1
            out.append((text[i:j], line))
            i = j
    return out


def _read_tree(tokens):
    pos = 0

    def read():
        nonlocal pos
        if pos >= len(tokens):
            raise ExprError("unexpected end of expression")
        tok, line = tokens[pos]
        pos += 1
        if tok == "(":
            items = []
            while True:
                if pos >= len(tokens):
                    raise ExprError("line %d: unbalanced parenthesis" % line)
                if tokens[pos][0] == ")":
                    pos += 1
                    return ("list", items, line)
                items.append(read())
        if tok == ")":
            raise ExprError("line %d: unexpected ')'" % line)
        if tok.startswith('"'):
            return ("str", tok[1:], line)
        return ("atom", tok, line)

    tree = read()
    if pos != len(tokens):
        raise ExprError("line %d: text after the expression" % tokens[pos][1])
    return tree


def parse_expr(text, base_dir=".", loader=None):
    """Parse the parenthesized expression format; file names resolve against base_dir."""
    loader = loader or load_machine
    tree = _read_tree(_tokenize(text))

    def mach(node):
        kind, val, line = node
        if kind != "str":
            raise ExprError("line %d: expected a quoted machine file name" % line)
        path = os.path.join(base_dir, val)
        try:
            return loader(path), val
        except OSError as exc:
            raise ExprError("line %d: cannot read %s: %s" % (line, val, exc))

    def num(node):
        kind, val, line = node
        if kind != "atom" or not val.isdigit():
            raise ExprError("line %d: expected a number" % line)
        return int(val)

    def build(node):
        kind, val, line = node
        if kind != "list" or not val or val[0][0] != "atom":
            raise ExprError("line %d: expected (operator ...)" % line)
        op, args = val[0][1], val[1:]

        def arity(n):
            if len(args) != n:
                raise ExprError("line %d: %s takes %d arguments" % (line, op, n))
        if op == "machine":
            arity(1)
            spec, src = mach(args[0])
            return Machine(spec, src)
        if op in ("finite", "finite-over"):
            alpha = None
            if op == "finite-over":
                if not args or args[0][0] != "str":
                    raise ExprError("line %d: finite-over needs an alphabet string" % line)
                alpha = frozenset(args[0][1].split())
                args = args[1:]
            words = []
            for a in args:
                if a[0] != "str":
                    raise ExprError("line %d: finite takes quoted strings" % line)
                words.append(parse_word(a[1], alpha))
            return FiniteSet(frozenset(words), alpha)
        if op == "complement":
            arity(1)
            return Complement(build(args[0]))
        if op == "reverse":
            arity(1)
            return Reverse(build(args[0]))
        if op in ("intersect", "union"):
            if len(args) < 2:
                raise ExprError("line %d: %s needs at least two operands" % (line, op))
            parts = [build(a) for a in args]
            return intersect_all(parts) if op == "intersect" else union_all(parts)
        if op == "dyck":
            if len(args) == 1 and args[0][0] == "atom":
                return dyck(num(args[0]))
            return Dyck(tuple(a[1] for a in args))
        if op == "dyck-ext":
            if len(args) == 1 and args[0][0] == "atom":
                return dyck_ext(num(args[0]))
            tracks = []
            for a in args:
                d = build(a)
                if not isinstance(d, Dyck):
                    raise ExprError("line %d: dyck-ext tracks must be dyck forms" % line)
                tracks.append(d.opens)
            return DyckExt(tuple(tracks))
        if op == "many-one":
            arity(2)
            spec, _ = mach(args[0])
            return ManyOne(spec, build(args[1]))
        if op == "turing":
            arity(2)
            spec, _ = mach(args[0])
            return Turing(spec, build(args[1]))
        if op == "ktt":
            arity(3)
            spec, _ = mach(args[0])
            tab, _ = mach(args[1])
            return Ktt(spec, tab, build(args[2]))
        if op == "builtin":
            if not args or args[0][0] != "atom":
                raise ExprError("line %d: builtin needs a name" % line)
            params = []
            for a in args[1:]:
                if a[0] == "list":
                    params.append(build(a))
                elif a[0] == "atom" and a[1].isdigit():
                    params.append(int(a[1]))
                else:
                    params.append(a[1])
            _builtin(args[0][1])
            return Builtin(args[0][1], tuple(params))
        raise ExprError("line %d: unknown operator %r" % (line, op))

    return build(tree)


def load_expr(path):
    with open(path, encoding="utf-8") as fh:
        return parse_expr(fh.read(), os.path.dirname(os.path.abspath(path)))


def _quote(s):
    if '"' in s:
        raise ExprError("string %r cannot be quoted" % s)
    return '"%s"' % s


def format_expr(e, name_of=None):
    """Render an expression; name_of maps a machine spec to its file name."""
    name_of = name_of or (lambda spec: spec.name + ".m")

    def fmt(x):
        if isinstance(x, Machine):
            return "(machine %s)" % _quote(name_of(x.spec))
        if isinstance(x, FiniteSet):
            words = " ".join(_quote(format_word(w)) for w in sorted(x.strings))
            if x.alphabet is not None:
                head = "(finite-over %s" % _quote(" ".join(sorted(x.alphabet)))
                return head + (" " + words if words else "") + ")"
            return "(finite" + (" " + words if words else "") + ")"
        if isinstance(x, Complement):
            return "(complement %s)" % fmt(x.e)
        if isinstance(x, Reverse):
            return "(reverse %s)" % fmt(x.e)
        if isinstance(x, Intersect):
            return "(intersect %s %s)" % (fmt(x.a), fmt(x.b))
        if isinstance(x, Union):
            return "(union %s %s)" % (fmt(x.a), fmt(x.b))
        if isinstance(x, Dyck):
            if x == dyck(len(x.opens)):
                return "(dyck %d)" % len(x.opens)
            return "(dyck %s)" % " ".join(_quote(o) for o in x.opens)
        if isinstance(x, DyckExt):
            if x == dyck_ext(len(x.tracks)):
                return "(dyck-ext %d)" % len(x.tracks)
            return "(dyck-ext %s)" % " ".join(fmt(Dyck(t)) for t in x.tracks)
        if isinstance(x, ManyOne):
            return "(many-one %s %s)" % (_quote(name_of(x.reducer)), fmt(x.e))
        if isinstance(x, Turing):
            return "(turing %s %s)" % (_quote(name_of(x.reducer)), fmt(x.e))
        if isinstance(x, Ktt):
            return "(ktt %s %s %s)" % (_quote(name_of(x.reducer)), _quote(name_of(x.table)),
                                       fmt(x.e))
        if isinstance(x, Builtin):
            parts = [x.name]
            for p in x.params:
                parts.append(fmt(p) if not isinstance(p, (int, str)) else str(p))
            return "(builtin %s)" % " ".join(parts)
        raise ExprError("not an expression: %r" % (x,))

    return fmt(e)


def machines_in(e):
    """Every machine spec an expression refers to, in first-use order."""
    out = []

    def add(s):
        if s not in out:
            out.append(s)

    def walk(x):
        if isinstance(x, Machine):
            add(x.spec)
        elif isinstance(x, (ManyOne, Turing)):
            add(x.reducer)
            walk(x.e)
        elif isinstance(x, Ktt):
            add(x.reducer)
            add(x.table)
            walk(x.e)
        elif isinstance(x, (Complement, Reverse)):
            walk(x.e)
        elif isinstance(x, (Intersect, Union)):
            walk(x.a)
            walk(x.b)
        elif isinstance(x, Builtin):
            for p in x.params:
                if not isinstance(p, (int, str)):
                    walk(p)
    walk(e)
    return out


def save_expr(e, path):
    """Write an expression file plus one machine file per referenced machine."""
    from .machine import save_machine
    d = os.path.dirname(os.path.abspath(path))
    names = {}
    for spec in machines_in(e):
        base = spec.name
        name = base + ".m"
        k = 2
        while name in names.values():
            name = "%s_%d.m" % (base, k)
            k += 1
        names[spec] = name
        save_machine(spec, os.path.join(d, name))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_expr(e, lambda s: names[s]) + "\n")
    return sorted(names.values())
