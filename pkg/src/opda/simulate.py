"""Exact bounded simulation of one-way machines.

Configurations are explored breadth first over hash-consed stacks and
tapes, so set semantics holds: a configuration seen twice is explored once,
and a path that revisits a configuration is a non-halting path.
"""

from dataclasses import dataclass, field

from .machine import MachineError
from .symbols import CENT, DOLLAR, LAMBDA


class InputAlphabetError(ValueError):
    pass


class ResourceExceeded(RuntimeError):
    """A run hit its bounds before any accepting path was found."""


@dataclass(frozen=True)
class RunBounds:
    max_steps: int
    max_stack_height: int
    max_tape_len: int

    def __post_init__(self):
        if min(self.max_steps, self.max_stack_height, self.max_tape_len) <= 0:
            raise ValueError("run bounds must be strictly positive")

    @classmethod
    def default(cls, n, coeff=64):
        steps = coeff * (n + 2) + coeff
        return cls(steps, steps, steps)


def bounds_for(word, bounds=None, coeff=64):
    return bounds if bounds is not None else RunBounds.default(len(word), coeff)


class Pool:
    """Hash-consed linked sequences; id 0 is the empty sequence, last pushed first."""

    __slots__ = ("sym", "parent", "height", "index")

    def __init__(self):
        self.sym = [None]
        self.parent = [0]
        self.height = [0]
        self.index = {}

    def cons(self, s, rest):
        key = (s, rest)
        i = self.index.get(key)
        if i is None:
            i = len(self.sym)
            self.index[key] = i
            self.sym.append(s)
            self.parent.append(rest)
            self.height.append(self.height[rest] + 1)
        return i

    def push_all(self, rest, syms):
        """Push syms so that syms[0] ends on top."""
        for s in reversed(syms):
            rest = self.cons(s, rest)
        return rest

    def from_seq(self, seq):
        """Build from a sequence listed oldest first (stack bottom first)."""
        i = 0
        for s in seq:
            i = self.cons(s, i)
        return i

    def to_seq(self, i):
        out = []
        while i:
            out.append(self.sym[i])
            i = self.parent[i]
        out.reverse()
        return tuple(out)


@dataclass(frozen=True)
class Configuration:
    state: str
    head_pos: int
    stack: tuple          # bottom at index 0
    tapes: tuple          # one word per tape
    steps: int = 0


@dataclass
class RunResult:
    verdict: str
    valid_outputs: frozenset = frozenset()
    paths_explored: int = 0
    exceeded_paths: int = 0
    repeats: int = 0
    accepting_configs: int = 0
    diagnostics: dict = field(default_factory=dict)

    @property
    def accepted(self):
        return self.verdict == "accept"


def check_word(spec, word):
    alpha = set(spec.input_alphabet)
    for i, t in enumerate(word):
        if t not in alpha:
            raise InputAlphabetError("symbol %r at position %d is not in the input alphabet of %s"
                                     % (t, i, spec.name))


def tape_of(word):
    return (CENT,) + tuple(word) + (DOLLAR,)


def initial_stack(spec, pool):
    return pool.cons(spec.bottom, 0) if spec.bottom is not None else 0


def moves(spec, tape, state, head, sid, pool):
    """Yield (rule index, rule, next head, next stack id) for every applicable rule."""
    n = len(tape)
    sym = tape[head] if head < n else None
    top = pool.sym[sid] if sid else None
    for idx, r in spec.rules_from(state):
        read = r.read
        if read == LAMBDA:
            nh = head
        elif read == sym:
            nh = head + 1
        else:
            continue
        if r.top is None:
            nsid = sid
        elif r.top == top:
            nsid = pool.push_all(pool.parent[sid], r.push) if r.push else pool.parent[sid]
        else:
            continue
        yield idx, r, nh, nsid


class Exploration:
    """Outcome of a breadth-first search over configurations."""

    def __init__(self):
        self.accepting = []
        self.seen = 0
        self.exceeded = 0
        self.repeats = 0
        self.stuck = 0


def explore(spec, word, bounds, with_tapes=True, query=None, stop_on_accept=False):
    """Search every configuration reachable within bounds.

    With ``query`` given, entering the query state of a Turing machine asks
    ``query(word)`` and resumes in the yes or no state with a blank tape.
    """
    check_word(spec, word)
    tape = tape_of(word)
    pool = Pool()
    tpool = Pool()
    ntapes = spec.tapes if with_tapes else 0
    start = (spec.start, 0, initial_stack(spec, pool), (0,) * ntapes)
    seen = {start}
    frontier = [start]
    ex = Exploration()
    accept = set(spec.accept)
    halting = spec.halting
    qstate = spec.query_state if query is not None else None
    depth = 0
    while frontier:
        nxt = []
        at_limit = depth >= bounds.max_steps
        for cfg in frontier:
            state, head, sid, tids = cfg
            if state in halting:
                if state in accept:
                    ex.accepting.append(cfg)
                    if stop_on_accept:
                        ex.seen = len(seen)
                        return ex, pool, tpool
                continue
            if state == qstate:
                if at_limit:
                    ex.exceeded += 1
                    continue
                answer = query(tpool.to_seq(tids[0]))
                succ = [(spec.yes_state if answer else spec.no_state, head, sid, (0,) * ntapes)]
            else:
                succ = []
                for idx, r, nh, nsid in moves(spec, tape, state, head, sid, pool):
                    if pool.height[nsid] > bounds.max_stack_height:
                        ex.exceeded += 1
                        continue
                    if ntapes:
                        nt = list(tids)
                        over = False
                        for t, e in enumerate(r.emit):
                            if e is not None:
                                nt[t] = tpool.cons(e, nt[t])
                                if tpool.height[nt[t]] > bounds.max_tape_len:
                                    over = True
                        if over:
                            ex.exceeded += 1
                            continue
                        nt = tuple(nt)
                    else:
                        nt = tids
                    succ.append((r.dst, nh, nsid, nt))
                if not succ:
                    ex.stuck += 1
                    continue
                if at_limit:
                    ex.exceeded += 1
                    continue
            for c in succ:
                if c in seen:
                    ex.repeats += 1
                else:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
        depth += 1
    ex.seen = len(seen)
    return ex, pool, tpool


def _result(ex, tpool, ntapes):
    outs = frozenset(tuple(tpool.to_seq(t) for t in cfg[3]) for cfg in ex.accepting) \
        if ntapes else frozenset()
    if ex.accepting:
        verdict = "accept"
    elif ex.exceeded:
        verdict = "resource_exceeded"
    else:
        verdict = "reject"
    return RunResult(verdict, outs, ex.seen, ex.exceeded, ex.repeats, len(ex.accepting),
                     {"stuck": ex.stuck})


def accepts(spec, word, bounds=None, query=None):
    """Run spec on word; verdict is accept, reject or resource_exceeded."""
    word = tuple(word)
    bounds = bounds_for(word, bounds)
    ex, pool, tpool = explore(spec, word, bounds, with_tapes=spec.tapes > 0, query=query)
    return _result(ex, tpool, spec.tapes)


def reachable_accept(spec, word, bounds=None, query=None):
    """Acceptance by memoized reachability over configurations without tapes."""
    word = tuple(word)
    bounds = bounds_for(word, bounds)
    ex, _, _ = explore(spec, word, bounds, with_tapes=False, query=query, stop_on_accept=True)
    if ex.accepting:
        return True
    if ex.exceeded:
        raise ResourceExceeded("%s on %r: %d paths hit the run bounds"
                               % (spec.name, " ".join(word), ex.exceeded))
    return False


def valid_outputs(spec, word, bounds=None):
    """Tape contents left on accepting paths, one tuple of words per path."""
    if spec.tapes == 0:
        raise MachineError("machine %s has no query tape" % spec.name)
    if spec.oracle == "turing":
        raise MachineError("valid outputs are undefined for Turing reducers")
    word = tuple(word)
    bounds = bounds_for(word, bounds)
    ex, pool, tpool = explore(spec, word, bounds, with_tapes=True)
    if not ex.accepting and ex.exceeded:
        raise ResourceExceeded("%s on %r: %d paths hit the run bounds"
                               % (spec.name, " ".join(word), ex.exceeded))
    return _result(ex, tpool, spec.tapes).valid_outputs


# path enumeration -------------------------------------------------------------

@dataclass(frozen=True)
class Path:
    indices: tuple        # 1-based rule indices in file order
    final: Configuration
    accepted: bool
    status: str           # accept | reject | stuck | loop | exceeded


def run_paths(spec, word, bounds=None, query=None):
    """Enumerate every maximal computation path depth first.

    A path that would revisit a configuration already on it is cut there
    with status ``loop``; it never halts, so it counts as rejecting.
    """
    word = tuple(word)
    check_word(spec, word)
    bounds = bounds_for(word, bounds)
    tape = tape_of(word)
    pool = Pool()
    tpool = Pool()
    ntapes = spec.tapes
    accept = set(spec.accept)
    halting = spec.halting
    qstate = spec.query_state if query is not None else None
    results = []
    path = []
    frames = []
    on_path = set()

    def emit(cfg, status):
        state, head, sid, tids = cfg
        conf = Configuration(state, head, pool.to_seq(sid),
                             tuple(tpool.to_seq(t) for t in tids), len(path))
        results.append(Path(tuple(path), conf, status == "accept", status))

    def successors(cfg):
        state, head, sid, tids = cfg
        if state == qstate:
            answer = query(tpool.to_seq(tids[0]))
            return [(0, (spec.yes_state if answer else spec.no_state, head, sid, (0,) * ntapes))]
        out = []
        for idx, r, nh, nsid in moves(spec, tape, state, head, sid, pool):
            nt = list(tids)
            for t, e in enumerate(r.emit):
                if e is not None:
                    nt[t] = tpool.cons(e, nt[t])
            out.append((idx + 1, (r.dst, nh, nsid, tuple(nt))))
        return out

    def enter(cfg):
        if cfg[0] in halting:
            emit(cfg, "accept" if cfg[0] in accept else "reject")
            return False
        succ = successors(cfg)
        if not succ:
            emit(cfg, "stuck")
            return False
        if len(path) >= bounds.max_steps:
            emit(cfg, "exceeded")
            return False
        frames.append([cfg, succ, 0])
        on_path.add(cfg)
        return True

    enter((spec.start, 0, initial_stack(spec, pool), (0,) * ntapes))
    while frames:
        f = frames[-1]
        cfg, succ, pos = f
        if pos == len(succ):
            frames.pop()
            on_path.discard(cfg)
            if path:
                path.pop()
            continue
        f[2] = pos + 1
        idx, c = succ[pos]
        assert c[1] >= cfg[1], "input head moved backwards"
        # tapes only grow, except that a query answer blanks them
        assert idx == 0 or all(tpool.height[a] >= tpool.height[b] for a, b in zip(c[3], cfg[3]))
        path.append(idx)
        if pool.height[c[2]] > bounds.max_stack_height or any(
                tpool.height[t] > bounds.max_tape_len for t in c[3]):
            emit(c, "exceeded")
            path.pop()
        elif c in on_path:
            emit(c, "loop")
            path.pop()
        elif not enter(c):
            path.pop()
    return results


def replay(spec, word, indices, query=None):
    """Apply a sequence of 1-based rule indices deterministically."""
    word = tuple(word)
    check_word(spec, word)
    tape = tape_of(word)
    state, head = spec.start, 0
    stack = [spec.bottom] if spec.bottom is not None else []
    tapes = [[] for _ in range(spec.tapes)]
    steps = 0
    for idx in indices:
        if idx == 0:
            if state != spec.query_state or query is None:
                raise MachineError("index 0 only answers a query")
            answer = query(tuple(tapes[0]))
            state = spec.yes_state if answer else spec.no_state
            tapes = [[] for _ in range(spec.tapes)]
            steps += 1
            continue
        if not 1 <= idx <= len(spec.rules):
            raise MachineError("rule index %d out of range" % idx)
        r = spec.rules[idx - 1]
        if r.src != state or state in spec.halting:
            raise MachineError("rule %d does not apply in state %s" % (idx, state))
        if r.read != LAMBDA:
            if head >= len(tape) or tape[head] != r.read:
                raise MachineError("rule %d reads %s but the head scans %s"
                                   % (idx, r.read, tape[head] if head < len(tape) else "nothing"))
            head += 1
        if r.top is not None:
            if not stack or stack[-1] != r.top:
                raise MachineError("rule %d needs stack top %s" % (idx, r.top))
            stack.pop()
            stack.extend(reversed(r.push))
        for t, e in enumerate(r.emit):
            if e is not None:
                tapes[t].append(e)
        state = r.dst
        steps += 1
    return Configuration(state, head, tuple(stack), tuple(tuple(t) for t in tapes), steps)
