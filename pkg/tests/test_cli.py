import os
import subprocess
import sys

import pytest

from opda import zoo
from opda.cli import main
from opda.machine import load_machine
from opda.oracles import load_expr, member

SAMPLES = os.path.join(os.path.dirname(zoo.DATA), "samples")


def z(name):
    return zoo.data_path(name)


def sample(name):
    return os.path.join(SAMPLES, name)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_decide(capsys):
    assert run(capsys, "decide", z("dup2.expr"), "0101") == (0, "true\n", "")
    assert run(capsys, "decide", z("dup2.expr"), "011")[:2] == (0, "false\n")
    assert run(capsys, "decide", z("dyck1.expr"), "a1 a1'")[1] == "true\n"


def test_broken_machine_reports_line(capsys, tmp_path):
    bad = tmp_path / "bad.m"
    bad.write_text("machine m\nkind nfa\ninput 0\nstart s\ntrans s 0 -> s\nend\n")
    code, _, err = run(capsys, "run", bad, "0")
    assert code == 2 and "line 5" in err


def test_step_bound_gives_resource_exit(capsys):
    code, _, err = run(capsys, "decide", z("dup2.expr"), "0101", "--max-steps", 2)
    assert code == 3 and err.startswith("resource_exceeded")
    code, out, _ = run(capsys, "run", sample("anbn.m"), "0011", "--max-steps", 2)
    assert code == 3 and out.splitlines()[0] == "resource_exceeded"


def test_env_step_coefficient(capsys, monkeypatch):
    monkeypatch.setenv("OPDA_MAX_STEPS", "0")
    assert run(capsys, "decide", z("dup2.expr"), "0101")[0] == 2
    monkeypatch.setenv("OPDA_MAX_STEPS", "many")
    assert run(capsys, "decide", z("dup2.expr"), "0101")[0] == 2
    monkeypatch.setenv("OPDA_MAX_STEPS", "1")
    assert run(capsys, "decide", z("dup2.expr"), "0011")[0] == 3
    assert run(capsys, "decide", z("dup2.expr"), "0011", "--bounds-coeff", 64)[:2] == (0, "false\n")
    monkeypatch.setenv("OPDA_MAX_STEPS", "64")
    assert run(capsys, "decide", z("dup2.expr"), "0011")[:2] == (0, "false\n")


def test_dyckify_precondition(capsys, tmp_path):
    code, _, err = run(capsys, "dyckify", sample("starts_one.m"), "--out", tmp_path)
    assert code == 4 and "not normalized" in err


def test_dyckify_normalized(capsys, tmp_path):
    code, out, _ = run(capsys, "dyckify", sample("starts_one.m"), "--normalize", "--out", tmp_path)
    assert code == 0
    written = [l.split(" ", 1)[1] for l in out.splitlines()]
    exprs = [p for p in written if p.endswith(".expr")]
    assert len(exprs) == 1 and all(os.path.exists(p) for p in written)
    e = load_expr(exprs[0])
    # the reducer's Dyck-bound outputs exist exactly on accepted inputs
    assert member(e, tuple("10")) and not member(e, tuple("01"))


def test_unknown_flag_and_verb(capsys):
    with pytest.raises(SystemExit) as ei:
        main(["decide", "--frob", z("dup2.expr"), "0"])
    assert ei.value.code == 2
    with pytest.raises(SystemExit) as ei:
        main(["frob"])
    assert ei.value.code == 2
    capsys.readouterr()


def test_table(capsys, tmp_path):
    code, out, _ = run(capsys, "table", z("dyck1.expr"), "--max-len", 2)
    assert code == 0
    assert out.splitlines() == ["string,member", ",true", "a1,false", "a1',false", "a1 a1,false",
                                "a1 a1',true", "a1' a1,false", "a1' a1',false"]
    target = tmp_path / "t.csv"
    run(capsys, "table", z("dyck1.expr"), "--max-len", 2, "--out", target)
    assert target.read_text() == out
    assert run(capsys, "table", z("dyck1.expr"))[0] == 4
    assert run(capsys, "table", z("dyck2.expr"), "--max-len", 12)[0] == 4


def test_run_outputs_and_oracle(capsys):
    assert run(capsys, "run", sample("turing_copy.m"), "01")[0] == 4
    code, out, _ = run(capsys, "run", sample("turing_copy.m"), "01", "--oracle", z("dup2.expr"))
    assert code == 0 and out.startswith("reject")
    code, out, _ = run(capsys, "run", sample("turing_copy.m"), "11", "--oracle", z("dup2.expr"),
                       "--paths")
    assert out.startswith("accept") and "path " in out
    code, out, _ = run(capsys, "outputs", z("dup2_red.m"), "01")
    assert code == 0 and len(out.splitlines()) == 3
    assert run(capsys, "run", sample("anbn.m"), "2")[0] == 2


def test_zoo_verbs(capsys):
    code, out, _ = run(capsys, "zoo", "list")
    assert code == 0 and len(out.splitlines()) == len(zoo.names())
    code, out, _ = run(capsys, "zoo", "crosscheck", "dup2", "prim", "--max-len", 5)
    assert code == 0 and out.count("agree") == 2
    assert run(capsys, "zoo", "crosscheck", "nope")[0] == 2


def test_prob(capsys):
    assert run(capsys, "prob", sample("coin.ppda"), "0101")[:2] == (0, "1/2\n")
    assert run(capsys, "prob", sample("equal6_n2.ppda"), "a1 a2 a3 a4 a5 a6")[1] == "1/1\n"
    assert run(capsys, "prob", sample("equal6_n2.ppda"), "a1 a1 a3 a4 a5 a6")[1] == "0/1\n"
    assert run(capsys, "prob")[0] == 2
    assert run(capsys, "prob", sample("anbn.m"), "01")[0] == 2


def test_circuit_extract_and_eval(capsys, tmp_path):
    code, out, _ = run(capsys, "circuit", sample("turing_copy.m"), "--word", "01")
    assert code == 0
    assert out == 'leaf 1 + "01"\ngate 2 AND 1\ngate 3 OR 2\ntop 3\n'
    c = tmp_path / "c.circ"
    run(capsys, "circuit", sample("turing_copy.m"), "--word", "0101", "--out", c)
    assert run(capsys, "circuit", "--eval", c, "--oracle", z("dup2.expr"))[1] == "true\n"
    assert run(capsys, "circuit", "--eval", c, "--oracle", z("empty.expr"))[1] == "false\n"
    assert run(capsys, "circuit", "--eval", c)[0] == 2
    assert run(capsys, "circuit", sample("anbn.m"), "--word", "0")[0] == 4
    code, out, _ = run(capsys, "parse", c)
    assert code == 0 and "depth 2" in out


def test_transform_outputs(capsys, tmp_path):
    code, out, _ = run(capsys, "transform", "reverse", sample("anbn.m"), "--out", tmp_path)
    assert code == 0
    path = out.split()[-1]
    M = load_machine(path)
    assert M.input_alphabet == ("0", "1")
    assert run(capsys, "decide", path, "1100")[1] == "true\n"
    assert run(capsys, "decide", path, "0011")[1] == "false\n"
    code, out, _ = run(capsys, "transform", "hom", sample("anbn.m"), "--map", "0=1 1",
                       "--map", "1=0", "--out", tmp_path)
    assert code == 0
    assert run(capsys, "transform", "frob", sample("anbn.m"))[0] == 2
    assert run(capsys, "transform", "union", sample("anbn.m"))[0] == 2
    assert run(capsys, "transform", "hom", sample("anbn.m"), "--map", "0")[0] == 2
    assert run(capsys, "transform", "reverse", z("dup2_red.m"), "--out", tmp_path)[0] == 4


def test_transform_product_writes_expression(capsys, tmp_path):
    code, out, _ = run(capsys, "transform", "product", sample("anbn_tail.m"),
                       sample("head_bn0n.m"), "--out", tmp_path)
    assert code == 0
    e = load_expr([l.split(" ", 1)[1] for l in out.splitlines() if l.endswith(".expr")][0])
    assert member(e, tuple("010")) and not member(e, tuple("0110"))


def test_parse_verb(capsys):
    code, out, _ = run(capsys, "parse", z("dup2.expr"), sample("anbn.m"), sample("coin.ppda"))
    assert code == 0 and len(out.splitlines()) == 3
    assert run(capsys, "parse", "/nonexistent.m")[0] == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "opda.cli", "decide", z("dup2.expr"), "0101"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "true\n"
