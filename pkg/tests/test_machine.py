import os

import pytest

from opda import catalog, zoo
from opda.machine import (MachineError, MachineParseError, check, flip_halting, format_machine,
                          load_machine, parse_machine, save_machine, validate)
from opda.ppda import equal6_machine
from opda.symbols import words_upto

from conftest import BITS, acc

ALL = {**catalog.ZOO_MACHINES, **catalog.SAMPLE_MACHINES, **catalog.SAMPLE_PPDAS}

DFA_TWO_SUCC = """
machine two
kind dfa
input 0
start q0
accept acc
reject rej
trans q0 <cent> - -> q
trans q0 0 - -> rej
trans q0 <dollar> - -> rej
trans q <cent> - -> rej
trans q 0 - -> q
trans q 0 - -> acc
trans q <dollar> - -> acc
end
"""


def dyck1():
    return load_machine(zoo.data_path("dyck1.m"))


@pytest.mark.parametrize("name", sorted(ALL))
def test_shipped_machines_validate(name):
    assert validate(ALL[name]()) == []


def test_dyck1_recognizer_valid():
    assert validate(dyck1()) == []


def test_state_both_accepting_and_rejecting():
    M = dyck1().evolve(reject=("rej", "acc"))
    v = validate(M)
    assert [x for x in v if x.startswith("halting: state")] == [
        "halting: state acc is both accepting and rejecting"]
    with pytest.raises(MachineError):
        check(M)


def test_dfa_determinism_violation():
    v = validate(parse_machine(DFA_TWO_SUCC))
    assert v == ["determinism: dfa has 2 successors for (q, 0)"]


def test_bottom_marker_only_at_bottom():
    M = parse_machine("""machine m
kind npda
input 0
stack Z A
start s
accept acc
trans s <cent> Z -> s ; push Z Z
trans s <dollar> Z -> acc ; push -
end""")
    assert any(v.startswith("bottom:") for v in validate(M))


def test_turing_mode_requirements():
    M = catalog.turing_copy()
    assert validate(M.evolve(no_state="yes"))
    assert validate(M.evolve(query_state=None))
    broken = M.with_rules(M.rules + (M.rules[0].__class__("qy", "-", None, (), "acc", (None,)),))
    assert any("outgoing" in v for v in validate(broken))


def test_ktt_tape_count():
    M = catalog.copy_bits().evolve(oracle="ktt", k=2)
    assert any("ktt 2" in v for v in validate(M))


def test_weight_outside_unit_interval():
    M = parse_machine("machine m\nkind ppda\ninput 0\nstack Z\nstart s\n"
                      "trans s 0 Z -> s ; push Z ; group g weight 3/2\nend\n")
    assert any("outside (0, 1]" in v for v in validate(M))


def test_ppda_group_sum():
    M = equal6_machine(N=2)
    bad = M.with_rules([r.__class__(*(r.src, r.read, r.top, r.push, r.dst, r.emit, r.group,
                                      r.weight / 2 if r.weight else r.weight)) for r in M.rules])
    assert any("sums to" in v for v in validate(bad))


@pytest.mark.parametrize("name", sorted(ALL))
def test_format_parse_round_trip(name):
    M = ALL[name]()
    text = format_machine(M)
    assert parse_machine(text) == M
    assert format_machine(parse_machine(text)) == text


def test_save_load(tmp_path):
    M = catalog.turing_split()
    p = tmp_path / "m.m"
    save_machine(M, str(p))
    assert load_machine(str(p)) == M


@pytest.mark.parametrize("text, line", [
    ("machine m\nkind npda\ninput 0\nstart s\ntrans s 0 Z -> s\nend\n", 5),
    ("machine m\nkind pda\n", 2),
    ("machine m\nkind nfa\ninput 0\nstart s\nbogus\nend\n", 5),
    ("machine m\nkind nfa\ninput 0\nstart s\n", 4),
    ("machine m\nkind nfa\ninput 0\nquery 0\nstart s\ntrans s 0 - -> s ; emit 0 0\nend\n", 6),
    ("machine m\nkind ppda\ninput 0\nstack Z\nstart s\ntrans s 0 Z -> s ; push Z ; group g\nend\n", 6),
    ("kind nfa\nend\n", 1),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(MachineParseError) as ei:
        parse_machine(text)
    assert ei.value.line == line
    assert str(ei.value).startswith("line %d:" % line)


def test_comments_are_ignored():
    text = format_machine(catalog.anbn()).replace("kind npda", "kind npda  # pushdown")
    assert parse_machine("# header\n" + text) == catalog.anbn()


def test_flip_halting_involution():
    for f in ALL.values():
        M = f()
        assert flip_halting(flip_halting(M)) == M


def test_flip_halting_complements_total_dfa():
    M = catalog.even_ones()
    F = flip_halting(M)
    for w in words_upto(BITS, 8):
        assert acc(F, w) == (not acc(M, w))
        assert acc(M, w) == (w.count("1") % 2 == 0)


def test_flip_halting_dyck1():
    F = flip_halting(dyck1())
    assert not acc(F, ("a1", "a1'"))
    assert acc(F, ("a1'",))


def test_machine_files_shipped():
    for sub, table in (("zoo", catalog.ZOO_MACHINES), ("samples", catalog.SAMPLE_MACHINES)):
        for name, f in table.items():
            path = os.path.join(os.path.dirname(zoo.DATA), sub, name + ".m")
            with open(path, encoding="utf-8") as fh:
                assert fh.read() == format_machine(f()), path
    for name, f in catalog.SAMPLE_PPDAS.items():
        path = os.path.join(os.path.dirname(zoo.DATA), "samples", name + ".ppda")
        assert load_machine(path) == f()
