"""Machine-to-machine constructions.

Every function here takes machine descriptions and returns new ones; the
tests check each against the semantics it is meant to realize on all short
inputs.  States of composite machines are named by joining component state
names, so the output stays readable in the text format.
"""

from collections import deque
import itertools

from .build import Builder, state_name
from .machine import MachineError
from .oracles import Builtin, Complement, Dyck, DyckExt, Intersect, Machine
from .symbols import CENT, DOLLAR, LAMBDA, NATURAL, column


class NormalizationError(MachineError):
    pass


class PreconditionError(MachineError):
    pass


# padding ---------------------------------------------------------------------------

def natural_extensions(x, max_len):
    """Every word over x's symbols and the padding symbol that shrinks to x, up to max_len."""
    x = tuple(x)
    if max_len < len(x):
        raise ValueError("max_len must be at least |x|")
    out = set()
    for n in range(len(x), max_len + 1):
        for pos in itertools.combinations(range(n), len(x)):
            w = [NATURAL] * n
            for p, a in zip(pos, x):
                w[p] = a
            out.add(tuple(w))
    return out


# phases and normalization -------------------------------------------------------------

def phases(spec):
    """States reachable before the right endmarker is read, and after."""
    pre, post = set(), set()
    todo = [spec.start]
    pre.add(spec.start)
    while todo:
        q = todo.pop()
        for _, r in spec.rules_from(q):
            if r.read == DOLLAR:
                if r.dst not in post:
                    post.add(r.dst)
            elif r.dst not in pre:
                pre.add(r.dst)
                todo.append(r.dst)
    todo = list(post)
    while todo:
        q = todo.pop()
        for _, r in spec.rules_from(q):
            if r.read == LAMBDA and r.dst not in post:
                post.add(r.dst)
                todo.append(r.dst)
    return pre, post


def check_normalized(spec):
    """Violations of: no lambda move before the right endmarker, only lambda moves
    after it, and every accepting entry pops the bottom marker."""
    v = []
    if spec.oracle != "none":
        v.append("machine %s has oracle mode %s" % (spec.name, spec.oracle))
    if spec.bottom is None:
        v.append("machine %s has no stack" % spec.name)
        return v
    pre, post = phases(spec)
    for q in sorted(pre & post):
        v.append("state %s is used both before and after the right endmarker" % q)
    acc = set(spec.accept)
    for i, r in enumerate(spec.rules, 1):
        if r.src in pre and r.src not in spec.halting and r.read == LAMBDA:
            v.append("rule %d: lambda move from %s before the right endmarker" % (i, r.src))
        if r.src in post and r.src not in pre and r.read != LAMBDA:
            v.append("rule %d: reads %s after the right endmarker" % (i, r.read))
        if r.dst in acc and not (r.top == spec.bottom and r.push == ()):
            v.append("rule %d: enters accepting state %s without popping %s"
                     % (i, r.dst, spec.bottom))
    return v


def as_npda(spec, bottom="_Z"):
    """Give a stackless machine a stack holding only a bottom marker."""
    if spec.bottom is not None:
        return spec
    return spec.evolve(kind="npda", stack_alphabet=(bottom,))


def normalize_end(spec):
    """Route every acceptance through: read the rest of the input, then drain the stack.

    Only the end of a run is rewritten.  Lambda moves before the right
    endmarker are left alone, so check_normalized still reports them.
    """
    spec = as_npda(spec)
    pre, post = phases(spec)
    z0 = spec.bottom
    names = set(spec.states)

    def fresh(base):
        n = base
        while n in names:
            n += "_"
        names.add(n)
        return n
    skip, skip_e, drain, acc = fresh("skip"), fresh("skip_e"), fresh("drain"), fresh("acc_n")
    acc_set = set(spec.accept)
    rules = []
    used = set()
    for r in spec.rules:
        after = r.read == DOLLAR or r.src in post
        popped = r.top == z0 and r.push == ()
        if r.dst not in acc_set or (after and popped):
            rules.append(r)
            continue
        if after:
            dst = drain
        else:
            dst = skip_e if popped else skip
        used.add(dst)
        rules.append(r.__class__(r.src, r.read, r.top, r.push, dst, r.emit, r.group, r.weight))
    b = Builder(spec.name + "_norm", spec.kind, spec.input_alphabet, spec.stack_alphabet,
                spec.query_alphabets, spec.oracle, spec.k)
    for r in rules:
        b.rules.append(r)
    none = (None,) * spec.tapes
    # only the helper states something routes into, so reversal sees no spare moves
    for q, end in ((skip, drain), (skip_e, acc)):
        if q in used:
            for a in spec.input_alphabet:
                b.rule(q, a, "-", q, emit=none)
            b.rule(q, DOLLAR, "-", end, emit=none)
            used.add(end)
    if drain in used:
        for g in spec.stack_alphabet:
            if g != z0:
                b.rule(drain, "-", g, drain, push="", emit=none)
        b.rule(drain, "-", z0, acc, push="", emit=none)
    return b.build(spec.start, tuple(spec.accept) + (acc,), spec.reject,
                   extra_states=spec.extra_states)


def _require_normalized(spec):
    v = check_normalized(spec)
    if v:
        raise NormalizationError("machine %s is not normalized: %s" % (spec.name, "; ".join(v)))


# stack histories ---------------------------------------------------------------------------

def _history(r):
    """Dyck symbols for one rule: close the matched top, open the pushed word bottom first."""
    if r.top is None:
        return ()
    return (r.top + "'",) + tuple(reversed(r.push))


def _chain(b, src, read, top, push, dst, emits, tag, ntapes_emit=None):
    """One rule with several emissions, as a reading step followed by lambda steps."""
    if len(emits) <= 1:
        b.rule(src, read, top, dst, push=push, emit=emits[0] if emits else None)
        return
    cur = src
    for j, e in enumerate(emits):
        nxt = dst if j == len(emits) - 1 else "%s~%d" % (tag, j + 1)
        if j == 0:
            b.rule(cur, read, top, nxt, push=push, emit=e)
        else:
            b.rule(cur, "-", "-", nxt, emit=e)
        cur = nxt


def dyckify(spec):
    """Stackless reducer writing the stack history, plus the Dyck oracle checking it."""
    _require_normalized(spec)
    gamma = spec.stack_alphabet
    D = Dyck(tuple(gamma))
    qalpha = tuple(gamma) + tuple(g + "'" for g in gamma)
    b = Builder(spec.name + "_dyck", "nfa", spec.input_alphabet, queries=[qalpha],
                oracle="many-one")
    init = "init"
    while init in spec.states:
        init += "_"
    b.rule(init, "-", "-", spec.start, emit=spec.bottom)
    for i, r in enumerate(spec.rules, 1):
        _chain(b, r.src, r.read, "-", None, r.dst, _history(r), "%s~r%d" % (r.src, i))
    N = b.build(init, spec.accept, spec.reject)
    return N, D


def dyck_dpda(opens, name="dyck_dpda"):
    """Deterministic recognizer without lambda moves for the Dyck language over opens."""
    opens = tuple(opens)
    bottom = "_bot"
    stack = {o: "S_" + o for o in opens}
    b = Builder(name, "npda", opens + tuple(o + "'" for o in opens),
                stack=(bottom,) + tuple(stack[o] for o in opens))
    b.rule("s", CENT, bottom, "r", push=bottom)
    tops = (bottom,) + tuple(stack[o] for o in opens)
    for o in opens:
        for t in tops:
            b.rule("r", o, t, "r", push=(stack[o], t))
        b.rule("r", o + "'", stack[o], "r", push="")
    b.rule("r", DOLLAR, bottom, "acc", push="")
    return b.build("s", ["acc"])


def _deterministic_no_lambda(D):
    seen = {}
    for r in D.rules:
        if r.read == LAMBDA:
            return "rule %s %s is a lambda move" % (r.src, r.dst)
        key = (r.src, r.read)
        seen.setdefault(key, []).append(r.top)
    for (q, a), tops in seen.items():
        if len(tops) != len(set(tops)) or (None in tops and len(tops) > 1):
            return "two rules apply in state %s on %s" % (q, a)
    return None


def _dstate(D, d):
    if d in D.accept:
        return "ACC"
    if d in D.reject:
        return None
    return d


def absorb_dpda_oracle(N, D):
    """Run a stackless reducer and a deterministic oracle machine on one stack."""
    if N.oracle != "many-one" or N.tapes != 1:
        raise PreconditionError("%s is not a one-tape many-one reducer" % N.name)
    if any(r.top is not None for r in N.rules):
        raise PreconditionError("reducer %s uses a stack" % N.name)
    bad = _deterministic_no_lambda(D)
    if bad:
        raise PreconditionError("oracle %s is not deterministic without lambda moves: %s"
                                % (D.name, bad))
    if set(N.query_alphabets[0]) != set(D.input_alphabet):
        raise PreconditionError("query alphabet of %s differs from the input alphabet of %s"
                                % (N.name, D.name))
    b = Builder(N.name + "_x_" + D.name, "npda", N.input_alphabet, stack=D.stack_alphabet)
    d_by = {}
    for r in D.rules:
        d_by.setdefault((r.src, r.read), []).append(r)
    n_acc = set(N.accept)

    def name(n, d):
        return state_name(n, d)

    start = "init"
    todo = deque()
    seen = set()

    def visit(n, d):
        if (n, d) not in seen:
            seen.add((n, d))
            todo.append((n, d))

    for r in d_by.get((D.start, CENT), ()):
        d1 = _dstate(D, r.dst)
        if d1 is not None:
            b.rule(start, "-", r.top, name(N.start, d1), push=r.push if r.top else None)
            visit(N.start, d1)
    while todo:
        n, d = todo.popleft()
        here = name(n, d)
        if n in n_acc:
            if d == "ACC":
                b.rule(here, "-", "-", "acc")
            else:
                for r in d_by.get((d, DOLLAR), ()):
                    if r.dst in D.accept:
                        b.rule(here, "-", r.top, "acc", push=r.push if r.top else None)
            continue
        if n in N.halting:
            continue
        for _, r in N.rules_from(n):
            e = r.emit[0]
            if e is None or d == "ACC":
                b.rule(here, r.read, "-", name(r.dst, d))
                visit(r.dst, d)
                continue
            for dr in d_by.get((d, e), ()):
                d1 = _dstate(D, dr.dst)
                if d1 is None:
                    continue
                b.rule(here, r.read, dr.top, name(r.dst, d1), push=dr.push if dr.top else None)
                visit(r.dst, d1)
    return b.build(start, ["acc"])


# composing reducers ---------------------------------------------------------------------

def absorb_nfa(outer, inner):
    """Feed the outer reducer's query symbols straight into a stackless inner reducer."""
    if outer.oracle != "many-one" or inner.oracle != "many-one":
        raise PreconditionError("both machines must be many-one reducers")
    if any(r.top is not None for r in inner.rules):
        raise PreconditionError("inner reducer %s uses a stack" % inner.name)
    if set(outer.query_alphabets[0]) != set(inner.input_alphabet):
        raise PreconditionError("query alphabet of %s differs from the input alphabet of %s"
                                % (outer.name, inner.name))
    b = Builder(outer.name + "_o_" + inner.name, "npda" if outer.bottom else "nfa",
                outer.input_alphabet, stack=outer.stack_alphabet,
                queries=[inner.query_alphabets[0]], oracle="many-one")
    i_by = {}
    for r in inner.rules:
        i_by.setdefault((r.src, r.read), []).append(r)
    o_acc = set(outer.accept)
    seen = set()
    todo = deque()

    def visit(key):
        if key not in seen:
            seen.add(key)
            todo.append(key)

    def nm(key):
        return state_name(*key)

    def inner_move(i):
        """Inner state after it halts: 'ACC', None (dead) or i itself."""
        if i in inner.accept:
            return "ACC"
        if i in inner.reject:
            return None
        return i

    start = ("pre", outer.start, inner.start)
    visit(start)
    while todo:
        key = todo.popleft()
        phase = key[0]
        here = nm(key)
        if phase == "done":
            o = key[1]
            if o in o_acc:
                b.rule(here, "-", "-", "acc")
                continue
            if o in outer.halting:
                continue
            for _, r in outer.rules_from(o):
                b.rule(here, r.read, r.top or "-", nm(("done", r.dst)),
                       push=r.push if r.top else None)
                visit(("done", r.dst))
            continue
        if phase == "post":
            i = key[1]
            for r in i_by.get((i, LAMBDA), ()):
                j = inner_move(r.dst)
                if j == "ACC":
                    b.rule(here, "-", "-", "acc", emit=r.emit[0])
                elif j is not None:
                    b.rule(here, "-", "-", nm(("post", j)), emit=r.emit[0])
                    visit(("post", j))
            continue
        _, o, i = key
        if i == "ACC":
            b.rule(here, "-", "-", nm(("done", o)))
            visit(("done", o))
            continue
        # inner lambda moves are always available
        for r in i_by.get((i, LAMBDA), ()):
            j = inner_move(r.dst)
            if j is not None:
                b.rule(here, "-", "-", nm((phase, o, j)), emit=r.emit[0])
                visit((phase, o, j))
        if phase == "pre":
            for r in i_by.get((i, CENT), ()):
                j = inner_move(r.dst)
                if j is not None:
                    b.rule(here, "-", "-", nm(("mid", o, j)), emit=r.emit[0])
                    visit(("mid", o, j))
            continue
        if o in o_acc:
            for r in i_by.get((i, DOLLAR), ()):
                j = inner_move(r.dst)
                if j == "ACC":
                    b.rule(here, "-", "-", "acc", emit=r.emit[0])
                elif j is not None:
                    b.rule(here, "-", "-", nm(("post", j)), emit=r.emit[0])
                    visit(("post", j))
            continue
        if o in outer.halting:
            continue
        for _, r in outer.rules_from(o):
            e = r.emit[0]
            push = r.push if r.top else None
            if e is None:
                b.rule(here, r.read, r.top or "-", nm(("mid", r.dst, i)), push=push)
                visit(("mid", r.dst, i))
                continue
            for ir in i_by.get((i, e), ()):
                j = inner_move(ir.dst)
                if j is None:
                    continue
                b.rule(here, r.read, r.top or "-", nm(("mid", r.dst, j)), push=push,
                       emit=ir.emit[0])
                visit(("mid", r.dst, j))
    return b.build(nm(start), ["acc"])


def _dfa_step(R, r, sym):
    """Next state of a total dfa, or 'ACC'/'REJ' once it has halted."""
    if r in ("ACC", "REJ"):
        return r
    for _, rule in R.rules_from(r):
        if rule.read == sym:
            d = rule.dst
            if d in R.accept:
                return "ACC"
            if d in R.reject:
                return "REJ"
            return d
    return "REJ"


def _check_dfa(R):
    if R.kind != "dfa":
        raise PreconditionError("%s is not a dfa" % R.name)
    v = [p for p in check_validate(R) if p.startswith("determinism")]
    if v:
        raise PreconditionError("dfa %s is not total and deterministic: %s" % (R.name, v[0]))


def check_validate(spec):
    from .machine import validate
    return validate(spec)


def absorb_regular_oracle(M, R, mode, table=None):
    """Track a dfa oracle in the finite control; the result needs no query tape.

    ``mode`` must match M's oracle mode.  For ``ktt`` the truth table dfa
    reads the input alongside M and then ``<hash>`` and the answer bits.
    """
    if mode != M.oracle:
        raise PreconditionError("mode %s does not match %s's oracle mode %s"
                                % (mode, M.name, M.oracle))
    _check_dfa(R)
    for q in M.query_alphabets:
        if not set(q) <= set(R.input_alphabet):
            raise PreconditionError("query alphabet of %s is not inside the input alphabet of %s"
                                    % (M.name, R.name))
    r0 = _dfa_step(R, R.start, CENT)
    if mode == "ktt":
        if table is None:
            raise PreconditionError("ktt mode needs the truth-table dfa")
        _check_dfa(table)
        return _absorb_ktt(M, R, table, r0)
    if mode not in ("many-one", "turing"):
        raise PreconditionError("mode %s has no query tape to absorb" % mode)
    b = Builder(M.name + "_reg", M.kind if M.kind != "dfa" else "nfa", M.input_alphabet,
                stack=M.stack_alphabet)
    seen = set()
    todo = deque()

    def visit(key):
        if key not in seen:
            seen.add(key)
            todo.append(key)

    visit((M.start, r0))
    m_acc = set(M.accept)
    while todo:
        m, r = todo.popleft()
        here = state_name(m, r)
        if m in m_acc:
            if mode == "turing" or _dfa_step(R, r, DOLLAR) == "ACC":
                b.rule(here, "-", "-", "acc")
            continue
        if m in M.halting:
            continue
        if mode == "turing" and m == M.query_state:
            ans = _dfa_step(R, r, DOLLAR) == "ACC"
            nxt = (M.yes_state if ans else M.no_state, r0)
            b.rule(here, "-", "-", state_name(*nxt))
            visit(nxt)
            continue
        for _, rule in M.rules_from(m):
            e = rule.emit[0]
            r1 = r if e is None else _dfa_step(R, r, e)
            if r1 == "REJ" and mode == "many-one":
                continue
            push = rule.push if rule.top else None
            b.rule(here, rule.read, rule.top or "-", state_name(rule.dst, r1), push=push)
            visit((rule.dst, r1))
    return b.build(state_name(M.start, r0), ["acc"])


def _absorb_ktt(M, R, B, r0):
    from .symbols import HASH
    k = M.k
    b = Builder(M.name + "_reg", M.kind if M.kind != "dfa" else "nfa", M.input_alphabet,
                stack=M.stack_alphabet)
    t0 = _dfa_step(B, B.start, CENT)
    start = (M.start, (r0,) * k, t0, False)
    seen = {start}
    todo = deque([start])
    m_acc = set(M.accept)

    def nm(key):
        m, rs, t, done = key
        return state_name(m, rs, t, "e" if done else "i")

    def finish(rs, t):
        t = _dfa_step(B, t, HASH)
        for r in rs:
            t = _dfa_step(B, t, "1" if _dfa_step(R, r, DOLLAR) == "ACC" else "0")
        return _dfa_step(B, t, DOLLAR) == "ACC"

    while todo:
        key = todo.popleft()
        m, rs, t, done = key
        here = nm(key)
        if m in m_acc:
            # read the rest of the input for the table, then decide
            if done:
                if finish(rs, t):
                    b.rule(here, "-", "-", "acc")
                continue
            for a in M.input_alphabet + (DOLLAR,):
                t1 = _dfa_step(B, t, a) if a != DOLLAR else t
                nk = (m, rs, t1, a == DOLLAR)
                b.rule(here, a, "-", nm(nk))
                if nk not in seen:
                    seen.add(nk)
                    todo.append(nk)
            continue
        if m in M.halting:
            continue
        for _, rule in M.rules_from(m):
            rs1 = tuple(r if e is None else _dfa_step(R, r, e) for r, e in zip(rs, rule.emit))
            if rule.read in (LAMBDA, CENT):
                t1, d1 = t, done
            elif rule.read == DOLLAR:
                t1, d1 = t, True
            else:
                t1, d1 = _dfa_step(B, t, rule.read), done
            nk = (rule.dst, rs1, t1, d1)
            push = rule.push if rule.top else None
            b.rule(here, rule.read, rule.top or "-", nm(nk), push=push)
            if nk not in seen:
                seen.add(nk)
                todo.append(nk)
    return b.build(nm(start), ["acc"])


# parallel simulation -----------------------------------------------------------------------

def product_reducer(specs):
    """Run d machines in lockstep on the input, writing their stack histories on d tracks."""
    specs = list(specs)
    if not specs:
        raise ValueError("need at least one machine")
    sigma = set(specs[0].input_alphabet)
    if any(set(s.input_alphabet) != sigma for s in specs):
        raise PreconditionError("machines must share the input alphabet")
    comps = [dyckify(s)[0] for s in specs]
    d = len(comps)
    tracks = tuple(tuple(s.stack_alphabet) for s in specs)
    track_alpha = [set(t) | {g + "'" for g in t} | {NATURAL} for t in tracks]
    from .symbols import column_alphabet
    qalpha = tuple(sorted(column_alphabet(track_alpha)))
    b = Builder("product_" + "_".join(s.name for s in specs), "nfa", specs[0].input_alphabet,
                queries=[qalpha], oracle="many-one")

    def status(c, q):
        if q in c.accept:
            return "ACC"
        if q in c.reject:
            return None
        return q

    start = tuple(status(c, c.start) for c in comps)
    seen = {start}
    todo = deque([start])

    def nm(st):
        return state_name(*["ACC" if s == "ACC" else s for s in st])

    def col(i, e):
        parts = [NATURAL] * d
        parts[i] = e
        return column(parts)

    def add(here, read, nxt, emit):
        if any(s is None for s in nxt):
            return
        b.rule(here, read, "-", nm(nxt), emit=emit)
        if nxt not in seen:
            seen.add(nxt)
            todo.append(nxt)

    while todo:
        st = todo.popleft()
        here = nm(st)
        if all(s == "ACC" for s in st):
            b.rule(here, "-", "-", "acc")
            continue
        # one component's lambda move
        for i, (c, q) in enumerate(zip(comps, st)):
            if q == "ACC":
                continue
            for _, r in c.rules_from(q):
                if r.read != LAMBDA:
                    continue
                nxt = list(st)
                nxt[i] = status(c, r.dst)
                e = r.emit[0]
                add(here, "-", tuple(nxt), None if e is None else col(i, e))
        # every running component reads the same symbol
        for a in sorted(sigma) + [CENT, DOLLAR]:
            options = []
            for c, q in zip(comps, st):
                if q == "ACC":
                    options.append([("ACC", None)])
                else:
                    options.append([(status(c, r.dst), r.emit[0])
                                    for _, r in c.rules_from(q) if r.read == a])
            for combo in itertools.product(*options):
                nxt = tuple(s for s, _ in combo)
                es = [e for _, e in combo]
                emit = None if all(e is None for e in es) else column(
                    [NATURAL if e is None else e for e in es])
                add(here, a, nxt, emit)
    N = b.build(nm(start), ["acc"])
    return N, DyckExt(tracks)


def copy_input_reducer(spec):
    """Reducer that runs spec and writes its input on the query tape."""
    acc = set(spec.accept)
    pre, post = phases(spec)
    for i, r in enumerate(spec.rules, 1):
        if r.dst in acc and r.read != DOLLAR and r.src not in post:
            raise PreconditionError("rule %d of %s accepts before the right endmarker"
                                    % (i, spec.name))
    if spec.start in acc:
        raise PreconditionError("%s accepts in its start state" % spec.name)
    b = Builder(spec.name + "_copy", spec.kind if spec.kind != "dfa" else "nfa",
                spec.input_alphabet, stack=spec.stack_alphabet,
                queries=[spec.input_alphabet], oracle="many-one")
    for r in spec.rules:
        e = r.read if r.read in spec.input_alphabet else None
        b.rule(r.src, r.read, r.top or "-", r.dst, push=r.push if r.top else None, emit=e)
    return b.build(spec.start, spec.accept, spec.reject, extra_states=spec.extra_states)


# Turing reducers ---------------------------------------------------------------------------

def flip_answers(spec):
    """Swap where a Turing reducer resumes after a yes and after a no."""
    if spec.oracle != "turing":
        raise PreconditionError("%s is not a Turing reducer" % spec.name)
    return spec.evolve(yes_state=spec.no_state, no_state=spec.yes_state)


def guess_answers(spec):
    """Many-one reducer writing b1 y1 # b2 y2 # ... with each answer bit guessed."""
    if spec.oracle != "turing":
        raise PreconditionError("%s is not a Turing reducer" % spec.name)
    theta = tuple(spec.query_alphabets[0])
    qalpha = tuple(dict.fromkeys(theta + ("0", "1", NATURAL)))
    b = Builder(spec.name + "_guess", spec.kind if spec.kind != "dfa" else "nfa",
                spec.input_alphabet, stack=spec.stack_alphabet, queries=[qalpha],
                oracle="many-one")

    def nm(q, g):
        return q if g is None else "%s.b%s" % (q, g)

    for q in spec.states:
        if q in spec.halting:
            continue
        for g in ("0", "1"):
            b.rule(nm(q, None), "-", "-", nm(q, g), emit=g)
        for g in (None, "0", "1"):
            if q == spec.query_state:
                continue
            for _, r in spec.rules_from(q):
                e = r.emit[0]
                if e is not None and g is None:
                    continue
                b.rule(nm(q, g), r.read, r.top or "-", nm(r.dst, g if e is not None else g),
                       push=r.push if r.top else None, emit=e)
    for g, resume in (("1", spec.yes_state), ("0", spec.no_state)):
        b.rule(nm(spec.query_state, g), "-", "-", resume, emit=NATURAL)
    return b.build(spec.start, spec.accept, spec.reject)


def answer_verifiers(A):
    """Oracle for guess_answers: yes-blocks in A and no-blocks outside A."""
    return Builtin("answers", ("1", A)), Builtin("answers", ("0", Complement(A)))


def guessed_oracle(A):
    pos, neg = answer_verifiers(A)
    return Intersect(pos, neg)


def verifier_machines(MA):
    """Machines for the two verifier languages when the oracle is given by an npda.

    The positive machine runs MA on every block whose bit is 1; the witness
    machine guesses one block with bit 0 and accepts when MA accepts it.  The
    guessed oracle is Intersect(positive, Complement(witness)).
    """
    if MA.oracle != "none":
        raise PreconditionError("oracle machine %s must be oracle-free" % MA.name)
    MA = as_npda(MA)
    theta = tuple(MA.input_alphabet)
    alpha = tuple(dict.fromkeys(theta + ("0", "1", NATURAL)))
    bottom = "_vb"
    stack = (bottom,) + tuple(g for g in MA.stack_alphabet)
    return _positive_verifier(MA, alpha, stack, bottom), _witness_verifier(MA, alpha, stack, bottom)


def _simulate_block(b, MA, tag, after_acc):
    """MA's rules run over one block; the padding symbol plays the right endmarker."""
    def nm(q, ph):
        return "%s.%s.%s" % (tag, ph, q)
    for r in MA.rules:
        ph_src = ("pre", "post")
        for ph in ph_src:
            src = nm(r.src, ph)
            if r.src in MA.halting:
                continue
            if r.read == CENT:
                continue
            if r.read == DOLLAR:
                if ph == "pre":
                    b.rule(src, NATURAL, r.top or "-", nm(r.dst, "post"),
                           push=r.push if r.top else None)
                continue
            if r.read == LAMBDA:
                b.rule(src, "-", r.top or "-", nm(r.dst, ph), push=r.push if r.top else None)
            elif ph == "pre":
                b.rule(src, r.read, r.top or "-", nm(r.dst, ph), push=r.push if r.top else None)
    for q in MA.accept:
        for ph in ("pre", "post"):
            b.rule(nm(q, ph), "-", "-", after_acc[ph])
    # the endmarker read that starts MA
    entry = "%s.entry" % tag
    for _, r in MA.rules_from(MA.start):
        if r.read == CENT:
            b.rule(entry, "-", r.top or "-", nm(r.dst, "pre"), push=r.push if r.top else None)
    return entry


def _drain(b, state, stack, bottom, dst):
    for g in stack:
        if g != bottom:
            b.rule(state, "-", g, state, push="")
    b.rule(state, "-", bottom, dst, push=bottom)


def _positive_verifier(MA, alpha, stack, bottom):
    b = Builder(MA.name + "_yes", "npda", alpha, stack=stack)
    b.rule("s", CENT, bottom, "blk", push=bottom)
    b.rule("blk", DOLLAR, bottom, "acc", push=bottom)
    b.rule("blk", "0", "-", "skip0")
    for a in alpha:
        if a != NATURAL:
            b.rule("skip0", a, "-", "skip0")
    b.rule("skip0", NATURAL, "-", "blk")
    b.rule("blk", "1", bottom, "push", push=(MA.bottom, bottom))
    b.rule("push", "-", MA.bottom, "m.entry", push=MA.bottom)
    entry = _simulate_block(b, MA, "m", {"pre": "rest", "post": "clear"})
    assert entry == "m.entry"
    for a in alpha:
        if a != NATURAL:
            b.rule("rest", a, "-", "rest")
    b.rule("rest", NATURAL, "-", "clear")
    _drain(b, "clear", stack, bottom, "blk")
    return b.build("s", ["acc"])


def _witness_verifier(MA, alpha, stack, bottom):
    b = Builder(MA.name + "_no_witness", "npda", alpha, stack=stack)
    b.rule("s", CENT, bottom, "blk", push=bottom)
    for g in ("0", "1"):
        b.rule("blk", g, "-", "skip")
    for a in alpha:
        if a != NATURAL:
            b.rule("skip", a, "-", "skip")
    b.rule("skip", NATURAL, "-", "blk")
    b.rule("blk", "0", bottom, "push", push=(MA.bottom, bottom))
    b.rule("push", "-", MA.bottom, "m.entry", push=MA.bottom)
    _simulate_block(b, MA, "m", {"pre": "acc", "post": "acc"})
    return b.build("s", ["acc"])


def machine_guessed_oracle(MA):
    pos, wit = verifier_machines(MA)
    return Intersect(Machine(pos), Complement(Machine(wit)))


# path encodings ---------------------------------------------------------------------------

def encode_path_reducer(spec):
    """(N1, N2): N1 writes the rule indices of its path; N2 replays a track [x~, indices].

    Columns pair an input symbol with the rule reading it, or the padding
    symbol with a lambda rule or an endmarker rule.  After an early
    acceptance the remaining input appears in columns with a padded index.
    """
    K = len(spec.rules)
    idx = tuple(str(i) for i in range(1, K + 1))
    N1 = Builder(spec.name + "_paths", spec.kind if spec.kind != "dfa" else "nfa",
                 spec.input_alphabet, stack=spec.stack_alphabet, queries=[idx],
                 oracle="many-one")
    for i, r in enumerate(spec.rules, 1):
        N1.rule(r.src, r.read, r.top or "-", r.dst, push=r.push if r.top else None, emit=str(i))
    n1 = N1.build(spec.start, spec.accept, spec.reject, extra_states=spec.extra_states)
    return n1, replay_machine(spec)


def replay_machine(spec):
    """Deterministic machine over columns [x~, index] replaying spec's path."""
    sigma = tuple(spec.input_alphabet)
    cols = set()
    for i, r in enumerate(spec.rules, 1):
        x = r.read if r.read in sigma else NATURAL
        cols.add(column((x, str(i))))
    for a in sigma:
        cols.add(column((a, NATURAL)))
    cols = tuple(sorted(cols))
    bottom = "_rb"
    stack = (bottom,) + tuple(spec.stack_alphabet)
    tapes = spec.query_alphabets if spec.oracle == "many-one" else ()
    b = Builder(spec.name + "_replay", "npda", cols, stack=stack, queries=tapes,
                oracle="many-one" if tapes else "none")
    none = (None,) * len(tapes)
    # phase 0: endmarker not yet read by the replayed machine, 1: reading, 2: after $
    init = state_name(spec.start, 0)
    start = "s"
    if spec.bottom is not None:
        b.rule(start, CENT, bottom, init, push=(spec.bottom, bottom), emit=none)
    else:
        b.rule(start, CENT, bottom, init, push=bottom, emit=none)
    acc = set(spec.accept)
    for q in spec.states:
        if q in acc:
            # accepted: the rest of the input may follow only if $ was not read
            b.rule(state_name(q, 1), "-", "-", "tail", emit=none)
            b.rule(state_name(q, 2), "-", "-", "done", emit=none)
            b.rule(state_name(q, 0), "-", "-", "tail", emit=none)
    for a in sigma:
        b.rule("tail", column((a, NATURAL)), "-", "tail", emit=none)
    b.rule("tail", DOLLAR, "-", "acc", emit=none)
    b.rule("done", DOLLAR, "-", "acc", emit=none)
    for i, r in enumerate(spec.rules, 1):
        if r.src in spec.halting:
            continue
        if r.read == CENT:
            moves = [(0, 1)]
        elif r.read == DOLLAR:
            moves = [(1, 2)]
        elif r.read == LAMBDA:
            moves = [(0, 0), (1, 1), (2, 2)]
        else:
            moves = [(1, 1)]
        x = r.read if r.read in sigma else NATURAL
        c = column((x, str(i)))
        emit = r.emit if tapes else none
        for p0, p1 in moves:
            b.rule(state_name(r.src, p0), c, r.top or "-", state_name(r.dst, p1),
                   push=r.push if r.top else None, emit=emit)
    return b.build(start, ["acc"])


# closure constructions -------------------------------------------------------------------

def _ns(spec, tag):
    """Rename states and stack symbols of spec under a prefix."""
    st = lambda q: "%s.%s" % (tag, q)
    sy = lambda g: "%s.%s" % (tag, g)
    rules = []
    for r in spec.rules:
        rules.append((st(r.src), r.read, sy(r.top) if r.top else None,
                      tuple(sy(g) for g in r.push), st(r.dst)))
    return {
        "rules": rules, "start": st(spec.start), "accept": [st(q) for q in spec.accept],
        "reject": [st(q) for q in spec.reject], "stack": [sy(g) for g in spec.stack_alphabet],
        "bottom": sy(spec.bottom) if spec.bottom else None,
    }


def _oracle_free(*specs):
    for s in specs:
        if s.oracle != "none" or s.tapes:
            raise PreconditionError("%s must be an oracle-free machine" % s.name)


def _add(b, rule, read=None):
    src, r_read, top, push, dst = rule
    b.rule(src, r_read if read is None else read, top or "-", dst,
           push=push if top else None)


def union_m(M1, M2):
    _oracle_free(M1, M2)
    if set(M1.input_alphabet) != set(M2.input_alphabet):
        raise PreconditionError("union needs equal input alphabets")
    M1, M2 = as_npda(M1), as_npda(M2)
    a, c = _ns(M1, "1"), _ns(M2, "2")
    bottom = "_U"
    b = Builder("union_%s_%s" % (M1.name, M2.name), "npda", M1.input_alphabet,
                stack=[bottom] + a["stack"] + c["stack"])
    for part in (a, c):
        b.rule("s", "-", bottom, part["start"], push=(part["bottom"], bottom))
        for r in part["rules"]:
            _add(b, r)
    return b.build("s", a["accept"] + c["accept"])


def _as_segment(b, part, done, input_reads=True):
    """Embed a normalized machine whose endmarkers are guessed: both become lambda moves."""
    for r in part["rules"]:
        if r[1] in (CENT, DOLLAR):
            _add(b, r, read="-")
        else:
            _add(b, r)
    for q in part["accept"]:
        b.rule(q, "-", "-", done)


def concat_m(M1, M2):
    """L1 L2: the first machine's right endmarker is guessed inside the input."""
    _oracle_free(M1, M2)
    if set(M1.input_alphabet) != set(M2.input_alphabet):
        raise PreconditionError("concatenation needs equal input alphabets")
    a = _ns(normalize_end(M1), "1")
    c = _ns(as_npda(M2), "2")
    bottom = "_C"
    b = Builder("concat_%s_%s" % (M1.name, M2.name), "npda", M1.input_alphabet,
                stack=[bottom] + a["stack"] + c["stack"])
    b.rule("s", CENT, bottom, "go", push=bottom)
    b.rule("go", "-", bottom, a["start"], push=(a["bottom"], bottom))
    _as_segment(b, a, "mid")
    b.rule("mid", "-", bottom, "mid2", push=(c["bottom"], bottom))
    b.rule("mid2", "-", "-", c["start"])
    for r in c["rules"]:
        if r[1] == CENT:
            _add(b, r, read="-")
        else:
            _add(b, r)
    return b.build("s", c["accept"])


def star_m(M):
    """L*: repeat a normalized copy of M on consecutive segments."""
    _oracle_free(M)
    a = _ns(normalize_end(M), "1")
    bottom = "_S"
    b = Builder("star_%s" % M.name, "npda", M.input_alphabet, stack=[bottom] + a["stack"])
    b.rule("s", CENT, bottom, "loop", push=bottom)
    b.rule("loop", "-", bottom, a["start"], push=(a["bottom"], bottom))
    _as_segment(b, a, "loop")
    b.rule("loop", DOLLAR, bottom, "acc", push="")
    return b.build("s", ["acc"])


def homomorphism_m(M, h):
    """h(L): each read of a becomes reads of the symbols of h(a)."""
    _oracle_free(M)
    out_alpha = tuple(dict.fromkeys(t for a in M.input_alphabet for t in h[a]))
    b = Builder("hom_%s" % M.name, M.kind, out_alpha, stack=M.stack_alphabet)
    for i, r in enumerate(M.rules, 1):
        push = r.push if r.top else None
        if r.read not in M.input_alphabet:
            b.rule(r.src, r.read, r.top or "-", r.dst, push=push)
            continue
        word = tuple(h[r.read])
        if not word:
            b.rule(r.src, "-", r.top or "-", r.dst, push=push)
            continue
        cur = r.src
        for j, t in enumerate(word):
            nxt = r.dst if j == len(word) - 1 else "%s~h%d.%d" % (r.src, i, j + 1)
            if j == 0:
                b.rule(cur, t, r.top or "-", nxt, push=push)
            else:
                b.rule(cur, t, "-", nxt)
            cur = nxt
    return b.build(M.start, M.accept, M.reject, extra_states=M.extra_states)


def inv_homomorphism_m(M, h, alphabet_in=None):
    """h^-1(L): read b, then feed h(b) to M from a buffer in the finite control."""
    _oracle_free(M)
    delta = tuple(alphabet_in or h.keys())
    for b_ in delta:
        if any(t not in M.input_alphabet for t in h[b_]):
            raise PreconditionError("h(%s) leaves the input alphabet of %s" % (b_, M.name))
    bld = Builder("invhom_%s" % M.name, M.kind if M.kind != "dfa" else "nfa", delta,
                  stack=M.stack_alphabet)

    def nm(q, buf):
        return q if not buf else "%s|%s" % (q, ".".join(buf))

    seen = set()
    todo = deque()

    def visit(q, buf):
        if (q, buf) not in seen:
            seen.add((q, buf))
            todo.append((q, buf))

    visit(M.start, ())
    acc = set(M.accept)
    accept_names = set()
    while todo:
        q, buf = todo.popleft()
        here = nm(q, buf)
        if q in M.halting:
            if q in acc:
                accept_names.add(here)
            continue
        for _, r in M.rules_from(q):
            push = r.push if r.top else None
            if r.read == LAMBDA:
                bld.rule(here, "-", r.top or "-", nm(r.dst, buf), push=push)
                visit(r.dst, buf)
            elif buf:
                if r.read == buf[0]:
                    bld.rule(here, "-", r.top or "-", nm(r.dst, buf[1:]), push=push)
                    visit(r.dst, buf[1:])
            elif r.read in (CENT, DOLLAR):
                bld.rule(here, r.read, r.top or "-", nm(r.dst, ()), push=push)
                visit(r.dst, ())
        if not buf:
            for b_ in delta:
                nb = tuple(h[b_])
                bld.rule(here, b_, "-", nm(q, nb))
                visit(q, nb)
    return bld.build(nm(M.start, ()), sorted(accept_names))


def reverse_m(M):
    """L^R by running a normalized machine backwards; the endmarkers swap roles."""
    _oracle_free(M)
    return _reverse(M)


def reverse_reducer(M, e):
    """(R, oracle) with R relative to oracle deciding the reversal of M relative to e.

    A many-one reducer run backwards writes its query reversed, so the
    oracle becomes Reverse(e).  A Turing reducer first has its answers
    guessed, which turns it into a many-one reducer to the verifier pair.
    """
    from .oracles import Reverse
    if M.oracle == "turing":
        M, e = guess_answers(M), guessed_oracle(e)
    if M.oracle != "many-one":
        raise PreconditionError("%s must be a many-one or Turing reducer" % M.name)
    return _reverse(M), Reverse(e)


def _reverse(M):
    N = normalize_end(M)
    _require_accept_after_end(N)
    # a lambda pop runs backwards as a lambda push of a guessed symbol, and
    # chains of those make the reversed search exponential in the stack bound
    for i, r in enumerate(N.rules, 1):
        if r.read == LAMBDA and r.top is not None and not r.push and r.top != N.bottom:
            raise PreconditionError("rule %d of %s pops on a lambda move; reversal needs "
                                    "every non-final pop to read a symbol" % (i, N.name))
    if any(r.dst == N.start for r in N.rules):
        raise PreconditionError("%s re-enters its start state" % M.name)
    bottom = "_R"
    gamma = tuple(N.stack_alphabet)
    b = Builder("rev_%s" % M.name, "npda", N.input_alphabet, stack=(bottom,) + gamma,
                queries=N.query_alphabets, oracle=N.oracle)
    swap = {CENT: DOLLAR, DOLLAR: CENT}
    tops = (bottom,) + gamma

    def st(q):
        return "r." + q
    for q in N.accept:
        b.rule("s", "-", "-", st(q))
    for i, r in enumerate(N.rules, 1):
        read = swap.get(r.read, r.read)
        if r.top is None:
            b.rule(st(r.dst), read, "-", st(r.src), emit=r.emit)
            continue
        # undo "top -> push": pop the pushed word, then restore the top
        cur = st(r.dst)
        for j, g in enumerate(r.push):
            nxt = "v%d.%d" % (i, j + 1)
            b.rule(cur, read if j == 0 else "-", g, nxt, push="", emit=r.emit if j == 0 else None)
            cur = nxt
        for t in tops:
            if r.push:
                b.rule(cur, "-", t, st(r.src), push=(r.top, t))
            else:
                b.rule(cur, read, t, st(r.src), push=(r.top, t), emit=r.emit)
    # the original start configuration holds only its bottom marker
    b.rule(st(N.start), "-", N.bottom, "fin", push="")
    b.rule("fin", "-", bottom, "acc", push="")
    return b.build("s", ["acc"])


def _require_accept_after_end(N):
    pre, post = phases(N)
    for r in N.rules:
        if r.src not in pre and r.src not in post:
            continue
        if r.dst in N.accept and not (r.read == DOLLAR or r.src in post):
            raise NormalizationError("rule into %s accepts before the right endmarker" % r.dst)


def substitute_m(M, subs):
    """s(L): each read of a runs the machine for s(a) on a guessed segment of the input."""
    _oracle_free(M, *subs.values())
    alpha = tuple(dict.fromkeys(t for a in M.input_alphabet for t in subs[a].input_alphabet))
    parts = {a: _ns(normalize_end(subs[a]), "s%d" % k)
             for k, a in enumerate(M.input_alphabet)}
    M = as_npda(M)
    stack = list(M.stack_alphabet)
    for p in parts.values():
        stack += p["stack"]
    b = Builder("subst_%s" % M.name, "npda", alpha, stack=stack)
    for i, r in enumerate(M.rules, 1):
        push = r.push if r.top else None
        if r.read not in M.input_alphabet:
            b.rule(r.src, r.read, r.top or "-", r.dst, push=push)
            continue
        p = parts[r.read]
        enter = "%s~s%d" % (r.src, i)
        b.rule(r.src, "-", r.top or "-", enter, push=push)
        # the segment machine runs above the current stack
        for t in M.stack_alphabet:
            b.rule(enter, "-", t, "%s.in" % enter, push=(p["bottom"], t))
        b.rule("%s.in" % enter, "-", "-", "%s|%s" % (enter, p["start"]))
        for rr in p["rules"]:
            src, rd, top, pu, dst = rr
            b.rule("%s|%s" % (enter, src), "-" if rd in (CENT, DOLLAR) else rd, top or "-",
                   "%s|%s" % (enter, dst), push=pu if top else None)
        for q in p["accept"]:
            b.rule("%s|%s" % (enter, q), "-", "-", r.dst)
    return b.build(M.start, M.accept, M.reject, extra_states=M.extra_states)


def reference_substitution(member_L, member_sub, w, letters, pad=2):
    """Brute force: w is in s(L) iff w = v1..vn with each vi in s(ai) and a1..an in L.

    Letter words are tried up to length |w| + pad, so letters whose image
    contains the empty word are covered only that far.
    """
    w = tuple(w)
    top = len(w) + pad
    seen = set()

    def go(i, u):
        # u: letters chosen so far, covering w[:i]
        if (i, u) in seen:
            return False
        seen.add((i, u))
        if i == len(w) and member_L(u):
            return True
        if len(u) == top:
            return False
        for j in range(i, len(w) + 1):
            for a in letters:
                if member_sub(a, w[i:j]) and go(j, u + (a,)):
                    return True
        return False
    return go(0, ())
