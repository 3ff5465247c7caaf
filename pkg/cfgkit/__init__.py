"""
cfgkit - executable context-free grammar toolkit

Closure constructions, simplification passes, Chomsky Normal Form
conversion, derivation traces and bounded language checks.
"""
from .closure_ops import Side, concat, lift_form, lift_trace, star, union
from .cnf import cnf_lift, extract_form, is_cnf, is_cnf_with_empty_rule, to_cnf
from .derivation import (
    DerivationStep,
    DerivationTrace,
    EnumerationMethod,
    LanguageSample,
    SearchResult,
    SearchStatus,
    apply_step,
    bfs_language,
    concat_traces,
    cyk_member,
    derives_within,
    embed_trace,
    enumerate_language,
    parallel_traces,
    replay,
    split_trace,
)
from .equivalence import EquivalenceVerdict, bounded_equiv, generates_empty, non_empty
from .errors import (
    CfgkitError,
    DerivationError,
    DerivationErrorKind,
    EmptyLanguageError,
    ExpansionLimitError,
    GrammarSyntaxError,
    GrammarValidationError,
    InvalidBoundError,
    NotInCnfError,
    PreconditionError,
)
from .grammar_core import (
    Base,
    FreshStart,
    Grammar,
    Group,
    Lifted1,
    Lifted2,
    Nonterminal,
    Rule,
    Terminal,
    ValidationReport,
    validate,
)
from .grammar_format import load_grammar, parse_grammar, render_grammar
from .simplification import (
    GrammarChecks,
    SimplificationPass,
    accessible_set,
    check_predicates,
    get_pass,
    nullable_set,
    remove_empty,
    remove_inaccessible,
    remove_unit,
    remove_useless,
    simplify,
    unit_pairs,
    useful_set,
)

__version__ = "1.0.0"
