"""Oracle pushdown automata at desk scale.

Machines are parsed from a small text format and simulated exactly within
linear bounds.  Oracle expressions combine machines with Boolean operators,
Dyck languages and reductions; the transforms turn proof constructions into
machine-to-machine functions that can be checked on every short input.
"""

from .symbols import CENT, DOLLAR, HASH, LAMBDA, NATURAL, format_word, parse_word
from .machine import (MachineError, MachineParseError, MachineSpec, Rule, check, flip_halting,
                      format_machine, load_machine, parse_machine, save_machine, validate)
from .simulate import (Configuration, InputAlphabetError, ResourceExceeded, RunBounds, RunResult,
                       accepts, reachable_accept, replay, run_paths, valid_outputs)
from .oracles import (Builtin, Complement, Decider, Dyck, DyckExt, FiniteSet, Intersect, Ktt,
                      Machine, ManyOne, Reverse, Turing, Union, decide_ktt, decide_many_one,
                      decide_turing, dyck, dyck_ext, finite, load_expr, member, parse_expr,
                      format_expr, table)

__version__ = "0.1.0"

__all__ = [
    "CENT",
    "DOLLAR",
    "HASH",
    "LAMBDA",
    "NATURAL",
    "format_word",
    "parse_word",
    "MachineError",
    "MachineParseError",
    "MachineSpec",
    "Rule",
    "check",
    "flip_halting",
    "format_machine",
    "load_machine",
    "parse_machine",
    "save_machine",
    "validate",
    "Configuration",
    "InputAlphabetError",
    "ResourceExceeded",
    "RunBounds",
    "RunResult",
    "accepts",
    "reachable_accept",
    "replay",
    "run_paths",
    "valid_outputs",
    "Builtin",
    "Complement",
    "Decider",
    "Dyck",
    "DyckExt",
    "FiniteSet",
    "Intersect",
    "Ktt",
    "Machine",
    "ManyOne",
    "Reverse",
    "Turing",
    "Union",
    "decide_ktt",
    "decide_many_one",
    "decide_turing",
    "dyck",
    "dyck_ext",
    "finite",
    "load_expr",
    "member",
    "parse_expr",
    "format_expr",
    "table",
]
