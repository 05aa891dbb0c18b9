"""Command-line entry point.

Exit status: 0 success, 1 a check found a disagreement, 2 parse or
validation error, 3 resource_exceeded (run bounds or enumeration budget),
4 precondition failure.
"""

import argparse
import csv
import io
import os
import sys

from . import transforms as T
from .hierarchy import (BudgetError, CircuitError, build_query_circuit, eval_circuit,
                        format_circuit, load_circuit)
from .machine import MachineError, MachineParseError, load_machine, save_machine
from .oracles import (Decider, ExprError, Machine, ManyOne, QueryAlphabetError, alphabet,
                      load_expr, save_expr)
from .simulate import (InputAlphabetError, ResourceExceeded, RunBounds, accepts, run_paths,
                       valid_outputs)
from .symbols import WordError, format_word, parse_word

EXIT_OK, EXIT_CHECK, EXIT_PARSE, EXIT_RESOURCE, EXIT_PRECONDITION = 0, 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, code, msg):
        super().__init__(msg)
        self.code = code


def default_coeff():
    raw = os.environ.get("OPDA_MAX_STEPS")
    if raw is None:
        return 64
    try:
        v = int(raw)
    except ValueError:
        raise CliError(EXIT_PARSE, "OPDA_MAX_STEPS must be a positive integer, got %r" % raw)
    if v <= 0:
        raise CliError(EXIT_PARSE, "OPDA_MAX_STEPS must be a positive integer, got %r" % raw)
    return v


class Settings:
    def __init__(self, args):
        self.coeff = args.bounds_coeff if args.bounds_coeff is not None else default_coeff()
        self.max_steps = args.max_steps
        self.decider = Decider(self.coeff)

    def bounds(self, word):
        b = RunBounds.default(len(word), self.coeff)
        if self.max_steps is not None:
            b = RunBounds(self.max_steps, b.max_stack_height, b.max_tape_len)
        return b

    def explicit(self, word):
        """Bounds for the top-level run only when a flag asks for them."""
        return self.bounds(word) if self.max_steps is not None else None


def positive(text):
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def natural(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def load_any(path):
    """Expression for a .expr file, Machine for anything else."""
    if path.endswith(".expr"):
        return load_expr(path)
    return Machine(load_machine(path))


def word_for(text, alpha):
    return parse_word(text, frozenset(alpha) if alpha else None)


def write_out(text, out):
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# verbs -----------------------------------------------------------------------------

def cmd_parse(args, st):
    for path in args.files:
        if path.endswith(".expr"):
            e = load_expr(path)
            print("%s: expression over %s" % (path, " ".join(sorted(alphabet(e) or ["(open)"]))))
        elif path.endswith(".circ"):
            C = load_circuit(path)
            print("%s: circuit of depth %d with %d variables" % (path, C.depth, len(C.variables)))
        else:
            m = load_machine(path)
            print("%s: %s %s (%s), %d states, %d rules" % (
                path, m.kind, m.name, m.mode_label, len(m.states), len(m.rules)))
    return EXIT_OK


def _oracle_query(st, spec, oracle_path):
    if spec.oracle != "turing":
        return None
    if not oracle_path:
        raise CliError(EXIT_PRECONDITION, "%s is a Turing reducer; pass --oracle" % spec.name)
    return st.decider._query(load_any(oracle_path))


def cmd_run(args, st):
    spec = load_machine(args.machine)
    w = word_for(args.word, spec.input_alphabet)
    query = _oracle_query(st, spec, args.oracle)
    res = accepts(spec, w, st.bounds(w), query=query)
    print(res.verdict)
    print("configurations explored: %d" % res.paths_explored)
    print("accepting configurations: %d" % res.accepting_configs)
    print("paths at the bounds: %d" % res.exceeded_paths)
    print("stuck configurations: %d" % res.diagnostics.get("stuck", 0))
    if args.paths:
        for p in run_paths(spec, w, st.bounds(w), query=query):
            print("path %s: %s" % (" ".join(str(i) for i in p.indices) or "-", p.status))
    return EXIT_RESOURCE if res.verdict == "resource_exceeded" else EXIT_OK


def cmd_outputs(args, st):
    spec = load_machine(args.machine)
    w = word_for(args.word, spec.input_alphabet)
    outs = valid_outputs(spec, w, st.bounds(w))
    for tapes in sorted(outs):
        print(" | ".join('"%s"' % format_word(t) for t in tapes))
    return EXIT_OK


def cmd_decide(args, st):
    e = load_any(args.expr)
    w = word_for(args.word, alphabet(e))
    print("true" if st.decider.member(e, w, st.explicit(w)) else "false")
    return EXIT_OK


def cmd_table(args, st):
    e = load_any(args.expr)
    alpha = args.alphabet.split() if args.alphabet else alphabet(e)
    if not alpha:
        raise CliError(EXIT_PRECONDITION, "expression alphabet is open; pass --alphabet")
    if args.max_len is None:
        raise CliError(EXIT_PRECONDITION, "table needs --max-len")
    try:
        rows = st.decider.table(e, alpha, args.max_len)
    except ValueError as exc:
        if isinstance(exc, (WordError, ExprError, MachineError)):
            raise
        raise CliError(EXIT_PRECONDITION, str(exc))
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["string", "member"])
    for w, m in rows:
        out.writerow([format_word(w), "true" if m else "false"])
    write_out(buf.getvalue(), args.out)
    return EXIT_OK


def _outdir(args):
    d = args.out or "."
    os.makedirs(d, exist_ok=True)
    return d


def _save_expr_report(e, d, name):
    path = os.path.join(d, name + ".expr")
    files = save_expr(e, path)
    print("wrote %s" % path)
    for f in files:
        print("wrote %s" % os.path.join(d, f))


def cmd_dyckify(args, st):
    spec = load_machine(args.machine)
    if args.normalize:
        spec = T.normalize_end(spec)
    N, D = T.dyckify(spec)
    _save_expr_report(ManyOne(N, D), _outdir(args), N.name)
    return EXIT_OK


def _maps(items, value=lambda s: tuple(s.split())):
    out = {}
    for item in items or ():
        if "=" not in item:
            raise CliError(EXIT_PARSE, "--map expects symbol=value, got %r" % item)
        k, v = item.split("=", 1)
        out[k.strip()] = value(v)
    return out


TRANSFORMS = {
    "normalize": (1, "make acceptance read the whole input and empty the stack"),
    "absorb-dpda": (2, "reducer N and deterministic oracle machine D into one npda"),
    "absorb-nfa": (2, "outer reducer and stackless inner reducer into one reducer"),
    "absorb-regular": (2, "reducer and dfa oracle into an oracle-free machine (--table for ktt)"),
    "product": (None, "d machines into a reducer to the d-track Dyck language"),
    "copy-input": (1, "machine into a reducer copying its input"),
    "flip": (1, "swap the yes and no states of a Turing reducer"),
    "guess": (1, "Turing reducer into a many-one reducer with guessed answers"),
    "encode": (1, "path-writing reducer and deterministic replayer"),
    "union": (2, "union"),
    "concat": (2, "concatenation"),
    "star": (1, "Kleene star"),
    "hom": (1, "homomorphic image, --map a=word"),
    "invhom": (1, "inverse homomorphic image, --map b=word"),
    "reverse": (1, "reversal"),
    "substitute": (1, "substitution, --map a=machine-file"),
}


def cmd_transform(args, st):
    op = args.op
    if op not in TRANSFORMS:
        raise CliError(EXIT_PARSE, "unknown transform %r (known: %s)" % (op, ", ".join(sorted(TRANSFORMS))))
    arity = TRANSFORMS[op][0]
    if arity is not None and len(args.machines) != arity:
        raise CliError(EXIT_PARSE, "%s takes %d machine file(s)" % (op, arity))
    if not args.machines:
        raise CliError(EXIT_PARSE, "%s needs at least one machine file" % op)
    ms = [load_machine(p) for p in args.machines]
    d = _outdir(args)
    results, exprs = [], []
    if op == "normalize":
        results.append(T.normalize_end(ms[0]))
    elif op == "absorb-dpda":
        results.append(T.absorb_dpda_oracle(ms[0], ms[1]))
    elif op == "absorb-nfa":
        results.append(T.absorb_nfa(ms[0], ms[1]))
    elif op == "absorb-regular":
        table = load_machine(args.table) if args.table else None
        results.append(T.absorb_regular_oracle(ms[0], ms[1], ms[0].oracle, table))
    elif op == "product":
        N, DE = T.product_reducer(ms)
        exprs.append((N.name, ManyOne(N, DE)))
    elif op == "copy-input":
        results.append(T.copy_input_reducer(ms[0]))
    elif op == "flip":
        results.append(T.flip_answers(ms[0]))
    elif op == "guess":
        results.append(T.guess_answers(ms[0]))
    elif op == "encode":
        results.extend(T.encode_path_reducer(ms[0]))
    elif op == "union":
        results.append(T.union_m(ms[0], ms[1]))
    elif op == "concat":
        results.append(T.concat_m(ms[0], ms[1]))
    elif op == "star":
        results.append(T.star_m(ms[0]))
    elif op == "hom":
        results.append(T.homomorphism_m(ms[0], _maps(args.map)))
    elif op == "invhom":
        h = _maps(args.map)
        results.append(T.inv_homomorphism_m(ms[0], h, tuple(h)))
    elif op == "reverse":
        results.append(T.reverse_m(ms[0]))
    elif op == "substitute":
        results.append(T.substitute_m(ms[0], _maps(args.map, lambda p: load_machine(p.strip()))))
    for spec in results:
        path = os.path.join(d, spec.name + ".m")
        save_machine(spec, path)
        print("wrote %s" % path)
    for name, e in exprs:
        _save_expr_report(e, d, name)
    return EXIT_OK


def cmd_zoo(args, st):
    from . import zoo
    if args.action == "list":
        for n in zoo.names():
            e = zoo.entry(n)
            print("%-14s max_len %-3d %s" % (n, e.test_max_len, e.description))
        return EXIT_OK
    names = args.names or zoo.names()
    code = EXIT_OK
    for n in names:
        try:
            zoo.entry(n)
        except KeyError as exc:
            raise CliError(EXIT_PARSE, exc.args[0])
        rep = zoo.crosscheck(n, args.max_len, decider=st.decider)
        print(rep.summary())
        if rep.exceeded:
            code = max(code, EXIT_RESOURCE)
        elif not rep.ok and code == EXIT_OK:
            code = EXIT_CHECK
    return code


def cmd_prob(args, st):
    from . import ppda
    if args.scan:
        rep = ppda.error_scan(variant=args.variant)
        print(rep.summary())
        return EXIT_OK
    if not args.machine or args.word is None:
        raise CliError(EXIT_PARSE, "prob needs a machine file and a word, or --scan")
    spec = load_machine(args.machine)
    w = word_for(args.word, spec.input_alphabet)
    print(ppda.exact_acceptance_probability(spec, w, st.bounds(w)))
    return EXIT_OK


def cmd_circuit(args, st):
    if args.eval:
        if not args.oracle:
            raise CliError(EXIT_PARSE, "--eval needs --oracle")
        C = load_circuit(args.eval)
        print("true" if eval_circuit(C, load_any(args.oracle), st.decider) else "false")
        return EXIT_OK
    if args.word is None or not args.machines:
        raise CliError(EXIT_PARSE, "circuit needs reducer files and --word, or --eval")
    chain = [load_machine(p) for p in args.machines]
    x = word_for(args.word, chain[0].input_alphabet)
    C = build_query_circuit(chain, x, bounds=st.explicit(x))
    write_out(format_circuit(C), args.out)
    return EXIT_OK


# parser ------------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-len", type=natural, help="longest string to enumerate")
    common.add_argument("--max-steps", type=positive, help="step bound for the top-level run")
    common.add_argument("--bounds-coeff", type=positive,
                        help="linear bounds coefficient (default: $OPDA_MAX_STEPS or 64)")
    common.add_argument("--out", help="output file, or output directory for dyckify/transform")

    p = argparse.ArgumentParser(prog="opda", description="Oracle pushdown automata toolkit.")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("parse", parents=[common], help="check machine, expression or circuit files")
    s.add_argument("files", nargs="+")
    s.set_defaults(fn=cmd_parse)

    s = sub.add_parser("run", parents=[common], help="simulate a machine on one input")
    s.add_argument("machine")
    s.add_argument("word")
    s.add_argument("--oracle", help="oracle expression for a Turing reducer")
    s.add_argument("--paths", action="store_true", help="list every computation path")
    s.set_defaults(fn=cmd_run)

    s = sub.add_parser("outputs", parents=[common], help="valid outputs of a reducer")
    s.add_argument("machine")
    s.add_argument("word")
    s.set_defaults(fn=cmd_outputs)

    s = sub.add_parser("decide", parents=[common], help="membership in an expression")
    s.add_argument("expr")
    s.add_argument("word")
    s.set_defaults(fn=cmd_decide)

    s = sub.add_parser("table", parents=[common], help="membership CSV in length-lex order")
    s.add_argument("expr")
    s.add_argument("--alphabet", help="space-separated alphabet for open expressions")
    s.set_defaults(fn=cmd_table)

    s = sub.add_parser("dyckify", parents=[common], help="stackless reducer to a Dyck language")
    s.add_argument("machine")
    s.add_argument("--normalize", action="store_true", help="apply normalize first")
    s.set_defaults(fn=cmd_dyckify)

    s = sub.add_parser("transform", parents=[common], help="machine constructions",
                       epilog="operations: " + "; ".join(
                           "%s: %s" % (k, v[1]) for k, v in sorted(TRANSFORMS.items())))
    s.add_argument("op")
    s.add_argument("machines", nargs="*")
    s.add_argument("--map", action="append", help="symbol=value, repeatable")
    s.add_argument("--table", help="truth-table dfa for absorb-regular in ktt mode")
    s.set_defaults(fn=cmd_transform)

    s = sub.add_parser("zoo", parents=[common], help="example languages")
    s.add_argument("action", choices=["list", "crosscheck"])
    s.add_argument("names", nargs="*")
    s.set_defaults(fn=cmd_zoo)

    s = sub.add_parser("prob", parents=[common], help="exact acceptance probability of a ppda")
    s.add_argument("machine", nargs="?")
    s.add_argument("word", nargs="?")
    s.add_argument("--scan", action="store_true", help="run the six-counter error scan")
    s.add_argument("--variant", choices=["corrected", "literal"], default="corrected")
    s.set_defaults(fn=cmd_prob)

    s = sub.add_parser("circuit", parents=[common], help="extract or evaluate a query circuit")
    s.add_argument("machines", nargs="*")
    s.add_argument("--word", help="input the circuit is built for")
    s.add_argument("--eval", help="circuit file to evaluate")
    s.add_argument("--oracle", help="oracle expression or machine for --eval")
    s.set_defaults(fn=cmd_circuit)
    return p


PRECONDITION = (T.PreconditionError, T.NormalizationError, QueryAlphabetError, CircuitError)
PARSE = (MachineParseError, MachineError, ExprError, WordError, InputAlphabetError)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        st = Settings(args)
        return args.fn(args, st)
    except CliError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return exc.code
    except (ResourceExceeded, BudgetError, RecursionError) as exc:
        print("resource_exceeded: %s" % exc, file=sys.stderr)
        return EXIT_RESOURCE
    except PRECONDITION as exc:
        print("precondition failed: %s" % exc, file=sys.stderr)
        return EXIT_PRECONDITION
    except PARSE as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
