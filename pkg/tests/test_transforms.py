import functools
import math
import re

import pytest
from hypothesis import given, strategies as st

from opda import catalog
from opda.build import Builder
from opda.hierarchy import replay_track
from opda.machine import parse_machine, validate
from opda.oracles import Decider, Machine, finite, is_dyck
from opda.simulate import accepts, run_paths, valid_outputs
from opda.symbols import CENT, DOLLAR, NATURAL, column, delete_natural, words_upto
from opda.transforms import (NormalizationError, PreconditionError, absorb_dpda_oracle, absorb_nfa,
                             absorb_regular_oracle, as_npda, check_normalized, concat_m,
                             copy_input_reducer, dyck_dpda, dyckify, encode_path_reducer,
                             flip_answers, guess_answers, guessed_oracle, homomorphism_m,
                             inv_homomorphism_m, machine_guessed_oracle, natural_extensions,
                             normalize_end, product_reducer, reference_substitution,
                             reverse_m, reverse_reducer, star_m, substitute_m,
                             union_m)

from conftest import BITS, acc, s

B3 = BITS + (NATURAL,)
d = Decider()


def is_anbn(w):
    n = len(w) // 2
    return w == "0" * n + "1" * n


def is_pal(w):
    return len(w) % 2 == 0 and w == w[::-1]


def copier(alpha, name="copier", flip=None):
    """Identity (or letter-renaming) many-one nfa over alpha."""
    flip = flip or {}
    b = Builder(name, "nfa", alpha, queries=[alpha], oracle="many-one")
    b.rule("s", CENT, "-", "r")
    for a in alpha:
        b.rule("r", a, "-", "r", emit=flip.get(a, a))
    b.rule("r", DOLLAR, "-", "acc")
    return b.build("s", ["acc"])


def silent(accepting=True):
    """Many-one nfa that reads its input and writes nothing."""
    b = Builder("silent", "nfa", BITS, queries=[BITS], oracle="many-one")
    b.rule("s", CENT, "-", "r")
    for a in BITS:
        b.rule("r", a, "-", "r")
    b.rule("r", DOLLAR, "-", "acc")
    return b.build("s", ["acc"] if accepting else [], ["acc"] if not accepting else [])


def dfa_all(accept=True):
    b = Builder("all" if accept else "none", "dfa", BITS)
    b.rule("s", CENT, "-", "r")
    for a in BITS + (CENT,):
        b.rule("r", a, "-", "r")
    b.rule("r", DOLLAR, "-", "acc" if accept else "rej")
    for a in BITS + (DOLLAR,):
        b.rule("s", a, "-", "rej")
    return b.build("s", ["acc"], ["rej"])


def turing_both():
    """Queries its input once and accepts on either answer."""
    b = Builder("both", "nfa", BITS, queries=[BITS], oracle="turing")
    b.rule("s", CENT, "-", "r")
    for a in BITS:
        b.rule("r", a, "-", "r", emit=a)
    b.rule("r", DOLLAR, "-", "ask")
    b.rule("ask", "-", "-", "qy")
    b.rule("yes", "-", "-", "acc")
    b.rule("no", "-", "-", "acc")
    return b.build("s", ["acc"], query_state="qy", yes_state="yes", no_state="no")


def turing_silent():
    """A Turing reducer that never asks; accepts words ending in 1."""
    b = Builder("noask", "nfa", BITS, queries=[BITS], oracle="turing")
    b.rule("s", CENT, "-", "r")
    b.rule("r", "0", "-", "z")
    b.rule("r", "1", "-", "o")
    for q in ("z", "o"):
        b.rule(q, "0", "-", "z")
        b.rule(q, "1", "-", "o")
    b.rule("o", DOLLAR, "-", "acc")
    return b.build("s", ["acc"], query_state="qy", yes_state="yes", no_state="no",
                   extra_states=("qy", "yes", "no"))


# natural extensions ---------------------------------------------------------------------

def test_natural_extensions_examples():
    assert natural_extensions(("0", "1"), 2) == {("0", "1")}
    assert natural_extensions(("0",), 2) == {("0",), (NATURAL, "0"), ("0", NATURAL)}


@given(st.lists(st.sampled_from(BITS), max_size=4).map(tuple), st.integers(0, 6))
def test_natural_extensions_property(x, m):
    if m < len(x):
        with pytest.raises(ValueError):
            natural_extensions(x, m)
        return
    ext = natural_extensions(x, m)
    assert all(delete_natural(e) == x and len(e) <= m for e in ext)
    assert len(ext) == sum(math.comb(k, len(x)) for k in range(len(x), m + 1))


# normalization ---------------------------------------------------------------------------

def test_check_normalized():
    for name in ("anbn", "evenpal", "dyck2", "anbn_tail", "head_bn0n"):
        assert check_normalized(catalog.SAMPLE_MACHINES[name]()) == []
    assert check_normalized(catalog.zeros_cover_ones())
    assert check_normalized(catalog.starts_one())


MID_LAMBDA = """machine midlam
kind npda
input 0 1
stack Z O
start s
accept acc
trans s <cent> Z -> a ; push Z
trans a 0 Z -> a ; push O Z
trans a - O -> a ; push -
trans a <dollar> Z -> acc ; push -
end
"""


def test_lambda_mid_input_refused():
    M = parse_machine(MID_LAMBDA)
    assert any("lambda" in v for v in check_normalized(M))
    with pytest.raises(NormalizationError):
        dyckify(M)
    # end rerouting does not remove lambda moves before the endmarker
    N = normalize_end(M)
    assert any("lambda" in v for v in check_normalized(N))
    with pytest.raises(NormalizationError):
        dyckify(N)


@pytest.mark.parametrize("name", ["zeros_cover_ones", "starts_one", "anbn", "evenpal"])
def test_normalize_end_preserves_language(name):
    M = catalog.SAMPLE_MACHINES[name]()
    N = normalize_end(M)
    assert check_normalized(N) == [] and validate(N) == []
    for w in words_upto(BITS, 8):
        assert acc(N, w) == acc(M, w)


def test_as_npda_adds_bottom():
    M = as_npda(catalog.one_zero_one())
    assert M.kind == "npda" and M.bottom == "_Z"
    for w in words_upto(BITS, 5):
        assert acc(M, w) == (s(w) == "01")


# dyckify ---------------------------------------------------------------------------------

@pytest.mark.parametrize("name, pred", [("anbn", is_anbn), ("evenpal", is_pal)])
def test_dyckify_samples(name, pred):
    M = catalog.SAMPLE_MACHINES[name]()
    N, D = dyckify(M)
    assert N.kind == "nfa" and N.oracle == "many-one"
    for w in words_upto(BITS, 8):
        assert d.decide_many_one(N, D, w) == pred(s(w))


def test_dyckify_stack_history_of_trivial_machine():
    b = Builder("lam", "npda", BITS, stack=("Z",))
    b.rule("s", CENT, "Z", "p", push="Z")
    b.rule("p", DOLLAR, "Z", "acc", push="")
    M = b.build("s", ["acc"])
    N, D = dyckify(M)
    outs = valid_outputs(N, ())
    # the bottom marker is pushed at the start and popped at the end
    assert outs == {(("Z", "Z'", "Z", "Z'"),)}
    assert all(is_dyck(y, D.opens) for (y,) in outs)
    assert valid_outputs(N, ("0",)) == frozenset()


def test_dyckify_outputs_balanced_exactly_on_real_paths():
    M = catalog.evenpal()
    N, D = dyckify(M)
    for w in words_upto(BITS, 5):
        balanced = [y for (y,) in valid_outputs(N, w) if is_dyck(y, D.opens)]
        assert bool(balanced) == acc(M, w)


# absorption ------------------------------------------------------------------------------

def test_absorb_round_trip_evenpal():
    M = catalog.evenpal()
    N, D = dyckify(M)
    R = absorb_dpda_oracle(N, dyck_dpda(D.opens))
    assert R.oracle == "none" and R.tapes == 0
    for w in words_upto(BITS, 8):
        assert acc(R, w) == acc(M, w)


def test_dyck_dpda_is_dyck():
    D = dyck_dpda(("a1", "a2"))
    for w in words_upto(D.input_alphabet, 5):
        assert acc(D, w) == is_dyck(w, ("a1", "a2"))
    assert not any(r.read == "<lambda>" for r in D.rules)


def test_absorb_dpda_trivial_cases():
    anbn = catalog.anbn()
    R = absorb_dpda_oracle(copier(BITS), anbn)
    for w in words_upto(BITS, 8):
        assert acc(R, w) == is_anbn(s(w))
    R = absorb_dpda_oracle(silent(), anbn)
    for w in words_upto(BITS, 4):
        assert acc(R, w)


def test_absorb_nfa_identities():
    dup, eq = catalog.dup2_red(), Machine(catalog.eqrev())
    R = absorb_nfa(dup, copier(B3, "cp3"))
    for w in words_upto(BITS, 8):
        assert d.decide_many_one(R, eq, w) == d.decide_many_one(dup, eq, w)
    fl, A = catalog.flip_bits(), Machine(catalog.anbn())
    R = absorb_nfa(catalog.copy_bits(), fl)
    for w in words_upto(BITS, 8):
        assert d.decide_many_one(R, A, w) == d.decide_many_one(fl, A, w)


def test_absorb_nfa_flip_then_dup():
    fl3 = copier(B3, "fl3", {"0": "1", "1": "0"})
    R = absorb_nfa(catalog.dup2_red(), fl3)
    eq = Machine(catalog.eqrev())
    for w in words_upto(BITS, 8):
        flipped = s(w).translate(str.maketrans("01", "10"))
        n = len(w) // 2
        assert d.decide_many_one(R, eq, w) == (len(w) % 2 == 0 and flipped[:n] == flipped[n:])


def test_absorb_regular_trivial_oracles():
    M = catalog.dup2_red()
    R = absorb_regular_oracle(M.evolve(query_alphabets=(B3,)), dfa_all_over(B3, True), "many-one")
    for w in words_upto(BITS, 6):
        assert acc(R, w)
    R = absorb_regular_oracle(M, dfa_all_over(B3, False), "many-one")
    for w in words_upto(BITS, 6):
        assert not acc(R, w)


def dfa_all_over(alpha, accept):
    b = Builder("all" if accept else "none", "dfa", alpha)
    b.rule("s", CENT, "-", "r")
    for a in alpha + (CENT,):
        b.rule("r", a, "-", "r")
    b.rule("r", DOLLAR, "-", "acc" if accept else "rej")
    for a in alpha + (DOLLAR,):
        b.rule("s", a, "-", "rej")
    return b.build("s", ["acc"], ["rej"])


@pytest.mark.parametrize("name", ["turing_copy", "turing_split"])
def test_absorb_regular_turing(name):
    M = catalog.SAMPLE_MACHINES[name]()
    E = catalog.even_ones()
    R = absorb_regular_oracle(M, E, "turing")
    assert R.oracle == "none"
    for w in words_upto(BITS, 8):
        assert acc(R, w) == d.decide_turing(M, Machine(E), w)


def test_absorb_regular_preconditions():
    with pytest.raises(PreconditionError):
        absorb_regular_oracle(catalog.turing_copy(), catalog.even_ones(), "many-one")
    with pytest.raises(PreconditionError):
        absorb_regular_oracle(catalog.copy_bits(), catalog.one_zero_one(), "many-one")


# parallel simulation -----------------------------------------------------------------------

def test_product_single_machine_agrees_with_dyckify():
    M = catalog.evenpal()
    N1, DE = product_reducer([M])
    N, D = dyckify(M)
    for w in words_upto(BITS, 7):
        assert d.decide_many_one(N1, DE, w) == d.decide_many_one(N, D, w)


def test_product_idempotent():
    M = catalog.anbn()
    N, DE = product_reducer([M, M])
    for w in words_upto(BITS, 8):
        assert d.decide_many_one(N, DE, w) == is_anbn(s(w))


def test_product_with_empty_language():
    empty = catalog.anbn().evolve(accept=())
    N, DE = product_reducer([catalog.anbn(), empty])
    for w in words_upto(BITS, 6):
        assert not d.decide_many_one(N, DE, w)


def test_copy_input_reducer():
    M1 = catalog.evenpal()
    C = copy_input_reducer(M1)
    everything = dfa_all()
    for w in words_upto(BITS, 7):
        assert d.decide_many_one(C, Machine(everything), w) == is_pal(s(w))
    C = copy_input_reducer(dfa_all())
    for w in words_upto(BITS, 7):
        assert d.decide_many_one(C, Machine(catalog.anbn()), w) == is_anbn(s(w))


# Turing reducers ------------------------------------------------------------------------

def test_flip_answers_involution_and_no_queries():
    for M in (catalog.turing_copy(), catalog.turing_split()):
        assert flip_answers(flip_answers(M)) == M
    M = turing_silent()
    A = finite(["1"], BITS)
    for x in words_upto(BITS, 5):
        assert d.decide_turing(flip_answers(M), A, x) == d.decide_turing(M, A, x) == s(x).endswith("1")


def test_guess_answers_outputs():
    x = ("0", "1")
    assert valid_outputs(guess_answers(turing_both()), x) == {
        (("0", "0", "1", NATURAL),), (("1", "0", "1", NATURAL),)}
    assert valid_outputs(guess_answers(catalog.turing_copy()), x) == {(("1", "0", "1", NATURAL),)}
    G = guess_answers(turing_silent())
    for w in words_upto(BITS, 4):
        outs = valid_outputs(G, w)
        assert outs == ({((),)} if s(w).endswith("1") else frozenset())


def test_guessed_oracle_machine_form():
    M = catalog.turing_split()
    G = guess_answers(M)
    for A in (Machine(catalog.anbn()), Machine(catalog.evenpal())):
        V1, V2 = guessed_oracle(A), machine_guessed_oracle(A.spec)
        for x in words_upto(BITS, 6):
            want = d.decide_turing(M, A, x)
            assert d.decide_many_one(G, V1, x) == want
            assert d.decide_many_one(G, V2, x) == want


# path encodings --------------------------------------------------------------------------

@pytest.mark.parametrize("name", ["anbn", "evenpal", "starts_one", "dup2_red"])
def test_encode_replay_round_trip(name):
    M = {**catalog.SAMPLE_MACHINES, **catalog.ZOO_MACHINES}[name]()
    N1, N2 = encode_path_reducer(M)
    for x in words_upto(BITS, 6):
        encs = {y for (y,) in valid_outputs(N1, x)}
        paths = [p for p in run_paths(M, x) if p.accepted]
        assert encs == {tuple(str(i) for i in p.indices) for p in paths}
        for p in paths:
            t = replay_track(M, x, [str(i) for i in p.indices])
            res = accepts(N2, t)
            assert res.accepted
            if M.tapes:
                assert res.valid_outputs == {p.final.tapes}


def test_deterministic_machine_single_encoding():
    N1, _ = encode_path_reducer(catalog.anbn())
    for x in words_upto(BITS, 6):
        assert len(valid_outputs(N1, x)) == (1 if is_anbn(s(x)) else 0)


def test_replay_rejects_invalid_indices():
    M = catalog.anbn()
    _, N2 = encode_path_reducer(M)
    path = [p for p in run_paths(M, ("0", "1")) if p.accepted][0]
    good = replay_track(M, ("0", "1"), [str(i) for i in path.indices])
    assert accepts(N2, good).accepted
    bad = good[:-1] + (column((NATURAL, "1")),)
    assert not accepts(N2, bad).accepted
    assert not accepts(N2, good[:-1]).accepted


# closures --------------------------------------------------------------------------------

def star_of(pred):
    @functools.lru_cache(maxsize=None)
    def f(w):
        return w == "" or any(pred(w[:i]) and f(w[i:]) for i in range(1, len(w) + 1))
    return f


def test_star_of_single_word():
    S = star_m(catalog.one_zero_one())
    for w in words_upto(BITS, 10):
        assert acc(S, w) == (re.fullmatch("(01)*", s(w)) is not None)


def test_reverse_anbn():
    R = reverse_m(catalog.anbn())
    for w in words_upto(BITS, 8):
        n = len(w) // 2
        assert acc(R, w) == (s(w) == "1" * n + "0" * n)


def test_union():
    U = union_m(catalog.anbn(), catalog.evenpal())
    for w in words_upto(BITS, 8):
        assert acc(U, w) == (is_anbn(s(w)) or is_pal(s(w)))


def test_concat_with_word():
    C = concat_m(catalog.anbn(), catalog.one_zero_one())
    for w in words_upto(BITS, 8):
        assert acc(C, w) == (s(w).endswith("01") and is_anbn(s(w)[:-2]))


def test_hom_and_inverse_hom_star():
    S = star_m(catalog.evenpal())
    h = {"0": ("1", "1"), "1": ("0",)}
    H = homomorphism_m(S, h)
    image = {"".join("".join(h[a]) for a in u) for u in words_upto(BITS, 8) if star_of(is_pal)(s(u))}
    for w in words_upto(BITS, 8):
        assert acc(H, w) == (s(w) in image)
    g = {"0": ("0", "1"), "1": ()}
    I = inv_homomorphism_m(catalog.anbn(), g)
    for w in words_upto(BITS, 8):
        assert acc(I, w) == is_anbn("".join("01" if a == "0" else "" for a in w))


def test_substitute_singleton():
    b = Builder("just_a", "nfa", ("a",))
    b.rule("s", CENT, "-", "p")
    b.rule("p", "a", "-", "q")
    b.rule("q", DOLLAR, "-", "acc")
    L = b.build("s", ["acc"])
    S = substitute_m(L, {"a": catalog.anbn()})
    for w in words_upto(BITS, 8):
        assert acc(S, w) == is_anbn(s(w))


def test_reference_substitution():
    L = lambda u: s(u) in ("", "00", "01")
    sub = lambda a, seg: s(seg) == ("x" if a == "0" else "yy")
    assert reference_substitution(L, sub, tuple("xx"), BITS)
    assert reference_substitution(L, sub, tuple("xyy"), BITS)
    assert not reference_substitution(L, sub, tuple("yyx"), BITS)
    assert reference_substitution(L, sub, (), BITS)


def test_reverse_reducers():
    A = Machine(catalog.anbn())
    for M in (catalog.copy_bits(), catalog.flip_bits(), catalog.turing_copy()):
        R, O = reverse_reducer(M, A)
        decide = d.decide_turing if M.oracle == "turing" else d.decide_many_one
        for w in words_upto(BITS, 7):
            assert d.decide_many_one(R, O, w) == decide(M, A, w[::-1])


def test_reverse_refusals():
    with pytest.raises(PreconditionError):
        reverse_reducer(catalog.dup2_red(), Machine(catalog.eqrev()))
    with pytest.raises(PreconditionError):
        reverse_m(catalog.zeros_cover_ones())
    with pytest.raises(PreconditionError):
        star_m(catalog.copy_bits())
