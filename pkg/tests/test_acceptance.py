"""Acceptance suite: one test per criterion.

Each test records a detail line; the conftest prints a PASS/FAIL line per
criterion in the terminal summary.  Run directly with ``python3
tests/test_acceptance.py`` to get the same report.
"""

import functools
import os
import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from opda import catalog, ppda, zoo
from opda.hierarchy import (LinearPoly, build_query_circuit, chain_expr, dual_circuit,
                            eval_circuit, eval_quantified, random_finite_oracle)
from opda.oracles import Complement, Decider, Machine, finite
from opda.symbols import words_upto
from opda.transforms import (absorb_dpda_oracle, concat_m, copy_input_reducer, dyck_dpda, dyckify,
                             flip_answers, guess_answers, guessed_oracle, homomorphism_m,
                             inv_homomorphism_m, product_reducer, replay_machine, reverse_m, star_m,
                             substitute_m)

from conftest import BITS, acc, s

SAMPLES = ("anbn", "evenpal", "dyck2")


def sample(name):
    return catalog.SAMPLE_MACHINES[name]()


# plain predicates, independent of every machine ----------------------------------------

def is_anbn(w):
    n = len(w) // 2
    return w == "0" * n + "1" * n


def is_evenpal(w):
    return len(w) % 2 == 0 and w == w[::-1]


def is_dyck2(w):
    stack = []
    for a in w.split():
        if a.endswith("'"):
            if not stack or stack.pop() != a[:-1]:
                return False
        else:
            stack.append(a)
    return not stack


def is_0n1n0n(w):
    n = len(w) // 3
    return len(w) % 3 == 0 and w == "0" * n + "1" * n + "0" * n


def spaced(w):
    return " ".join(w)


PRED = {"anbn": is_anbn, "evenpal": is_evenpal, "dyck2": is_dyck2}


def pred_of(name, w):
    return PRED[name](spaced(w) if name == "dyck2" else s(w))


# 1 -----------------------------------------------------------------------------------------

@pytest.mark.criterion(1, "zoo crosscheck")
def test_c01_zoo_crosscheck(detail):
    t0 = time.perf_counter()
    reports = [zoo.crosscheck(name) for name in zoo.names()]
    elapsed = time.perf_counter() - t0
    bad = [r.summary() for r in reports if not r.ok]
    total = sum(r.total for r in reports)
    exceeded = sum(r.exceeded for r in reports)
    detail("%d entries, %d strings, %d resource_exceeded, %.1fs" % (
        len(reports), total, exceeded, elapsed))
    by_name = {r.name: r.max_len for r in reports}
    # sample spaces named by the criterion
    assert by_name["dup2"] >= 10 and by_name["dup3"] >= 10
    assert by_name["match"] >= 8 and by_name["sq"] >= 30
    assert by_name["prim"] >= 30 and by_name["comp"] >= 30 and by_name["mulprim"] >= 40
    assert by_name["dyck1"] >= 8 and by_name["dyck2"] >= 8
    assert not bad, bad
    assert exceeded == 0
    assert elapsed <= 300


# 2 and 3 -------------------------------------------------------------------------------------

@pytest.mark.criterion(2, "dyckify preservation")
def test_c02_dyckify_preserves_acceptance(detail):
    d = Decider()
    counts = []
    for name in SAMPLES:
        M = sample(name)
        N, D = dyckify(M)
        n = bad = 0
        for w in words_upto(M.input_alphabet, 8):
            n += 1
            want = acc(M, w)
            assert want == pred_of(name, w)
            bad += d.decide_many_one(N, D, w) != want
        counts.append("%s %d/%d" % (name, n - bad, n))
        assert bad == 0, name
    detail(", ".join(counts))


@pytest.mark.criterion(3, "dyckify round trip")
def test_c03_absorb_round_trip(detail):
    counts = []
    for name in SAMPLES:
        M = sample(name)
        N, D = dyckify(M)
        R = absorb_dpda_oracle(N, dyck_dpda(D.opens))
        assert R.oracle == "none"
        n = bad = 0
        for w in words_upto(M.input_alphabet, 8):
            n += 1
            bad += acc(R, w) != acc(M, w)
        counts.append("%s %d/%d" % (name, n - bad, n))
        assert bad == 0, name
    detail(", ".join(counts))


# 4 and 5 -------------------------------------------------------------------------------------

FIN = finite(["", "0", "10", "011"], BITS)


def ref_copy(member, x):
    return member(x)


def ref_split(member, x):
    return any(member(x[:i]) and not member(x[i:][::-1]) for i in range(len(x) + 1))


def oracle_fn(A):
    if A is FIN:
        return lambda u: u in ("", "0", "10", "011")
    return is_anbn


@pytest.mark.criterion(4, "flipped answers against the complemented oracle")
def test_c04_flip_answers(detail):
    d = Decider()
    ref = {"turing_copy": ref_copy, "turing_split": ref_split}
    checked = 0
    for name in ("turing_copy", "turing_split"):
        M = sample(name)
        F = flip_answers(M)
        for A in (FIN, Machine(catalog.anbn())):
            member = oracle_fn(A)
            for x in words_upto(BITS, 8):
                a = d.decide_turing(M, A, x)
                assert a == ref[name](member, s(x)), (name, x)
                assert d.decide_turing(F, Complement(A), x) == a, (name, x)
                checked += 1
    detail("%d (machine, oracle, x) triples agree" % checked)


@pytest.mark.criterion(5, "guessed answers pipeline")
def test_c05_guess_answers(detail):
    d = Decider()
    M = sample("turing_split")
    G = guess_answers(M)
    checked = 0
    for A in (FIN, Machine(catalog.anbn())):
        V = guessed_oracle(A)
        member = oracle_fn(A)
        for x in words_upto(BITS, 7):
            a = d.decide_turing(M, A, x)
            assert a == ref_split(member, s(x))
            assert d.decide_many_one(G, V, x) == a, x
            checked += 1
    detail("turing_split, 2 oracles, %d inputs agree" % checked)


# 6 -------------------------------------------------------------------------------------------

@pytest.mark.criterion(6, "product reducer for 0^n 1^n 0^n")
def test_c06_product_reducer(detail):
    d = Decider()
    L1, L2 = sample("anbn_tail"), sample("head_bn0n")
    N, DE = product_reducer([L1, L2])
    C = copy_input_reducer(L1)
    n = members = 0
    for w in words_upto(BITS, 9):
        want = is_0n1n0n(s(w))
        assert d.decide_many_one(N, DE, w) == want, w
        assert d.decide_many_one(C, Machine(L2), w) == want, w
        n += 1
        members += want
    detail("%d words, %d members, product and copy-input agree" % (n, members))


# 7 -------------------------------------------------------------------------------------------

@pytest.mark.criterion(7, "query circuits")
def test_c07_circuits(detail):
    rng = random.Random(20240601)
    xs = list(words_upto(BITS, 4))
    M = sample("turing_split")
    circuits = {x: build_query_circuit([M], x) for x in xs}
    assert all(C.depth <= 2 and not C.problems() for C in circuits.values())
    for _ in range(100):
        A = random_finite_oracle(rng, BITS, 4)
        d = Decider()
        for x, C in circuits.items():
            want = d.decide_turing(M, A, x)
            assert eval_circuit(C, A, d) == want, x
            assert eval_circuit(dual_circuit(C), A, d) == (not want), x

    chain = [sample("turing_split"), sample("turing_copy")]
    circuits2 = {x: build_query_circuit(chain, x) for x in xs}
    assert all(C.depth <= 3 and not C.problems() for C in circuits2.values())
    for _ in range(30):
        A = random_finite_oracle(rng, BITS, 4)
        d = Decider()
        for x, C in circuits2.items():
            assert eval_circuit(C, A, d) == d.member(chain_expr(chain, A), x), x
    detail("k=1: 100 oracles x %d inputs; k=2 chain: 30 oracles x %d inputs" % (len(xs), len(xs)))


# 8 -------------------------------------------------------------------------------------------

@pytest.mark.criterion(8, "Equal6 probabilities")
def test_c08_equal6(detail):
    t0 = time.perf_counter()
    rep = ppda.error_scan((6, 8))
    elapsed = time.perf_counter() - t0
    detail(rep.summary())
    detail("1/3 threshold: %d non-member vectors above 1/3 (reported, not asserted)"
           % len(rep.over_third))
    assert rep.vectors == 729
    assert rep.members == 3 and rep.members_exact_one
    assert rep.total_one
    assert rep.max_nonmember <= Fraction(12, 25)
    assert elapsed <= 60


# 9 -------------------------------------------------------------------------------------------

@pytest.mark.criterion(9, "quantified characterization, k=1")
def test_c09_quantified(detail):
    d = Decider()
    M = sample("evenpal")
    A = replay_machine(M)
    n = members = 0
    for x in words_upto(BITS, 5):
        want = acc(M, x)
        assert eval_quantified(A, LinearPoly(1, 2), 1, x, d) == want, x
        n += 1
        members += want
    detail("evenpal, %d inputs (%d members)" % (n, members))


# 10 ------------------------------------------------------------------------------------------

def star_of(pred):
    @functools.lru_cache(maxsize=None)
    def f(w):
        return w == "" or any(pred(w[:i]) and f(w[i:]) for i in range(1, len(w) + 1))
    return f


def concat_of(p, q):
    return lambda w: any(p(w[:i]) and q(w[i:]) for i in range(len(w) + 1))


H = {"0": ("1", "1"), "1": ("0",)}
G = {"0": ("0", "1"), "1": ()}


def apply_map(m, w):
    return "".join("".join(m[a]) for a in w)


def in_image(pred, w):
    # every letter maps to a nonempty word, so preimages are no longer than w
    return any(pred(s(u)) and apply_map(H, u) == w for u in words_upto(BITS, len(w)))


def substituted(pred_L, subs, w):
    """w in s(L), by enumerating u in L and splitting w into |u| nonempty pieces."""

    @functools.lru_cache(maxsize=None)
    def splits(u, i):
        if not u:
            return i == len(w)
        return any(subs[u[0]](w[i:j]) and splits(u[1:], j) for j in range(i + 1, len(w) + 1))

    return any(pred_L(s(u)) and splits(s(u), 0) for u in words_upto(BITS, len(w)))


@pytest.mark.criterion(10, "closure constructions")
def test_c10_closures(detail):
    langs = {"anbn": is_anbn, "evenpal": is_evenpal}
    machines = {k: sample(k) for k in langs}
    cases = []
    for name, p in langs.items():
        M = machines[name]
        cases += [
            ("star " + name, star_m(M), star_of(p)),
            ("reverse " + name, reverse_m(M), lambda w, p=p: p(w[::-1])),
            ("hom " + name, homomorphism_m(M, H), lambda w, p=p: in_image(p, w)),
            ("invhom " + name, inv_homomorphism_m(M, G), lambda w, p=p: p(apply_map(G, w))),
            ("concat %s.%s" % (name, name), concat_m(M, M), concat_of(p, p)),
        ]
    cases.append(("concat anbn.evenpal", concat_m(machines["anbn"], machines["evenpal"]),
                  concat_of(is_anbn, is_evenpal)))
    for label, N, pred in cases:
        bad = [w for w in words_upto(BITS, 8) if acc(N, w) != pred(s(w))]
        assert not bad, (label, bad[:3])

    w01 = lambda u: u == "01"
    for M, p, subs, ref_subs in (
            (machines["evenpal"], is_evenpal,
             {"0": sample("anbn_pos"), "1": sample("w01")}, {"0": lambda u: u != "" and is_anbn(u), "1": w01}),
            (machines["anbn"], is_anbn,
             {"0": sample("w01"), "1": sample("anbn_pos")}, {"0": w01, "1": lambda u: u != "" and is_anbn(u)})):
        S = substitute_m(M, subs)
        bad = [w for w in words_upto(BITS, 8) if acc(S, w) != substituted(p, ref_subs, s(w))]
        assert not bad, ("substitution " + M.name, bad[:3])
    detail("%d closure cases and 2 substitutions agree on |w| <= 8" % len(cases))


# 11 ------------------------------------------------------------------------------------------

@pytest.mark.criterion(11, "deterministic table output")
def test_c11_table_bytes(tmp_path, detail):
    expr = zoo.data_path("dup2.expr")
    outs = []
    for i in range(3):
        p = tmp_path / ("t%d.csv" % i)
        r = subprocess.run([sys.executable, "-m", "opda.cli", "table", expr, "--max-len", "6",
                            "--out", str(p)], capture_output=True)
        assert r.returncode == 0, r.stderr
        outs.append(p.read_bytes())
    r = subprocess.run([sys.executable, "-m", "opda.cli", "table", expr, "--max-len", "6"],
                       capture_output=True)
    assert r.returncode == 0
    outs.append(r.stdout)
    assert len(set(outs)) == 1
    lines = outs[0].decode().split("\n")
    assert lines[0] == "string,member" and b"\r" not in outs[0]
    assert len(lines) - 2 == 127
    detail("4 runs, %d bytes each, identical" % len(outs[0]))


if __name__ == "__main__":
    sys.exit(pytest.main([os.path.abspath(__file__), "-q"]))
