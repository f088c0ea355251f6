"""hoast: an interpreter and model solver for higher-order logic programs.

Typical use::

    from hoast import load_program, solve
    P = load_program("p :- ~q. q :- ~p.")
    res = solve(P, "stable")
"""

from .errors import (BudgetExceeded, DesugarError, ExtensionBudgetExceeded, HoastError,
                     HolTypeError, InconsistentPair, IterationCapExceeded, KindError,
                     LexError, NotPropositional, ParseError, SearchBudgetExceeded)
from .syntax import desugar, parse_program, parse_text, pretty, tokenize
from .typesys import BOOL, IND, Arrow, TypedProgram, check_program, infer_types
from .domains import BudgetConfig, Domain, lattice_ops
from .evaluation import PairInterp, approx, eval2, eval3, is_model2, is_model3, is_model_pair, tp2, tp3
from .tabled import DemandTable, tabled_lfp
from .aft import (SolveResult, check_minimal, enumerate_stable2, is_stable_pair,
                  is_supported_pair, kripke_kleene, lfp_first, lfp_second, solve, well_founded)
from .stratify import dependency_graph, stratify
from .classical import classical_wf, gl_stable_models, przymusinski_3stable, to_propositional

__version__ = "0.1.0"


def load_program(text: str, extra: str = "") -> TypedProgram:
    """Parse, desugar and type a program given as source text."""
    return infer_types(parse_text(text + ("\n" + extra if extra else "")))
