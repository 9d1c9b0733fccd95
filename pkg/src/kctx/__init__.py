"""Workbench for formal contexts with rough-set relations (Kripke contexts),
finite double Boolean algebras with operators, and their sequent calculi."""

from .context import (
    ConceptKind,
    Context,
    Protoconcept,
    boolean_parts,
    classify,
    derive,
    enumerate_concepts,
    enumerate_pairs,
    make,
    proto_leq,
    proto_op,
)
from .dba.algebra import FiniteDba, FiniteDbao, boolean_dba, check_axioms
from .dba.filters import filters_ideals, standard_context
from .dba.parts import bao_bridge, powerset_bao, structure_parts
from .dba.represent import canonical_kripke_context, representation
from .errors import (
    BudgetExceeded,
    ContextMismatch,
    DimensionError,
    FormatError,
    KctxError,
    ParseError,
    VerificationError,
)
from .kripke import (
    KripkeContext,
    approx_via_terms,
    complex_algebra,
    frame_bridge,
    kc_ds,
    kc_property_report,
    modal_laws,
    modal_op,
    protoconcept_algebra,
)
from .rough import ApproximationSpace, approx, concept_approx, induced_relations, pair_approx

__version__ = "0.1.0"
