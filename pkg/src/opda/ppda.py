"""Exact acceptance probabilities of probabilistic pushdown automata.

A ppda is a machine of kind ``ppda`` whose branching rules carry
``group <id> weight <p>/<q>`` clauses.  In every configuration the
applicable rules must form a single choice: one ungrouped rule, or the
members of one group.  Probabilities are Fractions throughout.
"""

from dataclasses import dataclass
from fractions import Fraction
import itertools

from .build import Builder
from .machine import MachineError
from .simulate import Pool, ResourceExceeded, RunBounds, bounds_for, check_word, initial_stack
from .symbols import CENT, DOLLAR, HASH, LAMBDA

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Probability:
    accept: Fraction
    reject: Fraction

    def __str__(self):
        return "%d/%d" % (self.accept.numerator, self.accept.denominator)


class ProbRunner:
    """Pushes a probability distribution over configurations through the input."""

    def __init__(self, spec, max_steps):
        if spec.kind != "ppda":
            raise MachineError("%s is a %s, not a ppda" % (spec.name, spec.kind))
        self.spec = spec
        self.max_steps = max_steps
        self.pool = Pool()
        self.accept = set(spec.accept)
        self.halting = spec.halting
        self.cache = {}

    def _choice(self, state, sid, sym):
        """Weighted successors (weight, state, sid) for a read of sym, or of lambda when sym is None."""
        key = (state, sid, sym)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        pool = self.pool
        top = pool.sym[sid] if sid else None
        lam, read = [], []
        for _, r in self.spec.rules_from(state):
            if r.top is not None and r.top != top:
                continue
            if r.read == LAMBDA:
                lam.append(r)
            elif r.read == sym:
                read.append(r)
        rules = lam if lam else read
        groups = {r.group for r in rules}
        if len(groups) > 1 or (None in groups and len(rules) > 1):
            raise MachineError("%s has more than one probabilistic choice in state %s"
                               % (self.spec.name, state))
        out = []
        for r in rules:
            nsid = sid
            if r.top is not None:
                nsid = pool.push_all(pool.parent[sid], r.push) if r.push else pool.parent[sid]
            out.append((r.weight if r.group is not None else Fraction(1), r.dst, nsid,
                        r.read == LAMBDA))
        hit = self.cache[key] = tuple(out)
        return hit

    def run(self, word):
        """Return (accept, reject) masses after reading cent word dollar."""
        acc = Fraction(0)
        rej = Fraction(0)
        dist = {(self.spec.start, initial_stack(self.spec, self.pool)): Fraction(1)}
        steps = 0
        for sym in (CENT,) + tuple(word) + (DOLLAR,):
            dist, a, r, steps = self.feed(dist, sym, steps)
            acc += a
            rej += r
        # after the right endmarker only lambda moves are possible
        dist, a, r, steps = self.feed(dist, None, steps)
        acc += a
        rej += r + sum(dist.values())
        return acc, rej

    def feed(self, dist, sym, steps):
        """Close under lambda moves, then read sym; configs that cannot read it are stuck."""
        acc = rej = Fraction(0)
        waiting = {}
        active = dist
        while active:
            nxt = {}
            moved = False
            for (q, sid), m in active.items():
                if q in self.halting:
                    if q in self.accept:
                        acc += m
                    else:
                        rej += m
                    continue
                succ = self._choice(q, sid, sym)
                lam = [s for s in succ if s[3]]
                if not lam:
                    waiting[(q, sid)] = waiting.get((q, sid), 0) + m
                    continue
                moved = True
                for w, p, nsid, _ in lam:
                    k = (p, nsid)
                    nxt[k] = nxt.get(k, 0) + m * w
            if moved:
                steps += 1
                if steps > self.max_steps:
                    raise ResourceExceeded("ppda %s exceeded %d steps" % (self.spec.name,
                                                                          self.max_steps))
            active = nxt
        if sym is None:
            return waiting, acc, rej, steps
        out = {}
        for (q, sid), m in waiting.items():
            succ = self._choice(q, sid, sym)
            if not succ:
                rej += m
                continue
            for w, p, nsid, _ in succ:
                k = (p, nsid)
                out[k] = out.get(k, 0) + m * w
        steps += 1
        if steps > self.max_steps and out:
            raise ResourceExceeded("ppda %s exceeded %d steps" % (self.spec.name, self.max_steps))
        return out, acc, rej, steps


def exact_acceptance_probability(spec, word, bounds=None):
    """Exact (accept, reject) probabilities; raises ResourceExceeded on runaway paths."""
    word = tuple(word)
    check_word(spec, word)
    bounds = bounds_for(word, bounds)
    acc, rej = ProbRunner(spec, bounds.max_steps).run(word)
    return Probability(acc, rej)


# the six-counter machine ---------------------------------------------------------------

EQUAL6_SYMBOLS = ("a1", "a2", "a3", "a4", "a5", "a6")


def equal6_coefficients(x, y, variant="corrected"):
    """Signed stack contribution of each symbol for the draw (x, y)."""
    base = [1, x, y, -1, -x, -y]
    if variant == "literal":
        return base
    if variant != "corrected":
        raise ValueError("variant must be 'literal' or 'corrected'")
    # the extra terms make the acceptance polynomial vanish only on members
    return [1 + x * y, x - x * y + x * x, y - x * x, -1, -x, -y]


def equal6_machine(N=5, variant="corrected"):
    """Draw (x, y) uniformly from [N]^2 and keep a signed counter on the stack.

    Each symbol adds its coefficient; ``P`` cells hold a surplus, ``M``
    cells a deficit, and a unit added over the opposite sign annihilates
    one cell.  The input is accepted iff the counter is zero at the end.
    """
    if N < 2:
        raise ValueError("N must be at least 2")
    b = Builder("equal6_%s_%d" % (variant, N), "ppda", EQUAL6_SYMBOLS + (HASH,),
                stack=("Z", "P", "M"))
    b.rule("s", CENT, "Z", "g", push="Z")
    w = Fraction(1, N * N)
    for x in range(1, N + 1):
        for y in range(1, N + 1):
            r = "r%d_%d" % (x, y)
            b.rule("g", "-", "Z", r, push="Z", group="draw", weight=w)
            b.rule(r, HASH, "-", r)
            need = set()
            for sym, c in zip(EQUAL6_SYMBOLS, equal6_coefficients(x, y, variant)):
                if c == 0:
                    b.rule(r, sym, "-", r)
                else:
                    b.rule(r, sym, "-", "%s_%s%d" % (r, "+" if c > 0 else "-", abs(c)))
                    need.add((c > 0, abs(c)))
            for pos, k in sorted(need):
                _pending(b, r, pos, k)
            b.rule(r, DOLLAR, "Z", "acc", push="")
            b.rule(r, DOLLAR, "P", "rej", push="P")
            b.rule(r, DOLLAR, "M", "rej", push="M")
    return b.build("s", ["acc"], ["rej"])


def _pending(b, r, pos, k):
    """States r_+k / r_-k: add k signed units, one annihilation per step."""
    while k > 0:
        here = "%s_%s%d" % (r, "+" if pos else "-", k)
        same, other = ("P", "M") if pos else ("M", "P")
        after = r if k == 1 else "%s_%s%d" % (r, "+" if pos else "-", k - 1)
        b.rule(here, "-", other, after, push="")
        b.rule(here, "-", "Z", r, push=(same,) * k + ("Z",))
        b.rule(here, "-", same, r, push=(same,) * k + (same,))
        k -= 1


def equal6_word(counts):
    return tuple(s for s, n in zip(EQUAL6_SYMBOLS, counts) for _ in range(n))


_machines = {}


def _equal6(N, variant):
    key = (N, variant)
    if key not in _machines:
        _machines[key] = equal6_machine(N, variant)
    return _machines[key]


def equal6_probability(word, N=5, variant="corrected"):
    spec = _equal6(N, variant)
    return exact_acceptance_probability(spec, word)


def equal6_majority(word, N=5, variant="corrected"):
    return equal6_probability(word, N, variant).accept > HALF


@dataclass
class ScanReport:
    variant: str
    N: int
    count_range: tuple
    vectors: int
    members: int
    members_exact_one: bool
    total_one: bool
    max_nonmember: Fraction
    argmax: tuple
    over_third: list
    probabilities: dict

    @property
    def within_12_25(self):
        return self.max_nonmember <= Fraction(12, 25)

    @property
    def within_third(self):
        return self.max_nonmember <= Fraction(1, 3)

    def summary(self):
        return ("%s N=%d counts %d..%d: %d vectors, %d members (prob 1: %s), accept+reject=1: %s, "
                "max non-member %s at %s, <= 12/25: %s, <= 1/3: %s (%d vectors above 1/3)" % (
                    self.variant, self.N, self.count_range[0], self.count_range[1], self.vectors,
                    self.members, self.members_exact_one, self.total_one, self.max_nonmember,
                    self.argmax, self.within_12_25, self.within_third, len(self.over_third)))


def error_scan(count_range=(6, 8), N=5, variant="corrected"):
    """Acceptance probability of every count vector a1^c1 ... a6^c6 with ci in count_range.

    Canonical words share prefixes, so the distribution after each prefix is
    computed once and extended symbol by symbol.
    """
    lo, hi = count_range
    spec = _equal6(N, variant)
    steps = RunBounds.default(6 * hi).max_steps
    runner = ProbRunner(spec, steps)
    start = {(spec.start, initial_stack(spec, runner.pool)): Fraction(1)}
    dist, a0, r0, s0 = runner.feed(start, CENT, 0)
    probs = {}
    totals_ok = True

    def walk(i, dist, acc, rej, steps, counts):
        nonlocal totals_ok
        if i == 6:
            d, a, r, s = runner.feed(dist, DOLLAR, steps)
            d, a2, r2, s = runner.feed(d, None, s)
            A = acc + a + a2
            R = rej + r + r2 + sum(d.values())
            if A + R != 1:
                totals_ok = False
            probs[counts] = A
            return
        sym = EQUAL6_SYMBOLS[i]
        for _ in range(lo):
            dist, a, r, steps = runner.feed(dist, sym, steps)
            acc += a
            rej += r
        for c in range(lo, hi + 1):
            walk(i + 1, dist, acc, rej, steps, counts + (c,))
            if c < hi:
                dist, a, r, steps = runner.feed(dist, sym, steps)
                acc += a
                rej += r

    walk(0, dist, a0, r0, s0, ())
    members = [v for v in probs if len(set(v)) == 1]
    non = {v: p for v, p in probs.items() if len(set(v)) > 1}
    argmax = max(sorted(non), key=lambda v: non[v]) if non else None
    third = Fraction(1, 3)
    return ScanReport(
        variant=variant, N=N, count_range=(lo, hi), vectors=len(probs), members=len(members),
        members_exact_one=all(probs[v] == 1 for v in members), total_one=totals_ok,
        max_nonmember=non[argmax] if non else Fraction(0), argmax=argmax,
        over_third=sorted(v for v, p in non.items() if p > third), probabilities=probs)


def count_vectors(lo, hi):
    return list(itertools.product(range(lo, hi + 1), repeat=6))
