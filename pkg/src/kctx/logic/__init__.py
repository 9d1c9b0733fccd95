"""Formulas and sequents, the CDBL/MCDBL/MCDBL4 proof checker, semantics and countermodels."""

from .axioms import CDBL, MCDBL, MCDBL4, get_system, make_system, match_axiom
from .proofs import Derivation, check_derivation
from .semantics import countermodel_search, evaluate, sequent_truth
from .syntax import Sequent, parse, parse_formula, parse_sequent, to_text
