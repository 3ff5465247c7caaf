"""
Exception hierarchy for cfgkit

Validation problems are reported as data (see grammar_core.ValidationReport);
these exceptions cover faults and unmet preconditions.
"""

from enum import Enum
from typing import TYPE_CHECKING, Optional

if TYPE_CHECKING:
    from .grammar_core import Rule, ValidationReport


class CfgkitError(Exception):
    """Root of all cfgkit errors"""


class GrammarSyntaxError(CfgkitError, ValueError):
    """Grammar text could not be parsed"""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        if line is not None and column is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class GrammarValidationError(CfgkitError, ValueError):
    """Grammar violates one or more structural invariants"""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        super().__init__("invalid grammar: " + "; ".join(report.violations))


class DerivationErrorKind(Enum):
    """Ways a single derivation step can fail"""
    POSITION_OUT_OF_RANGE = "position out of range"
    NOT_A_NONTERMINAL = "symbol at position is not a nonterminal"
    LHS_MISMATCH = "symbol at position differs from rule left-hand side"
    RULE_NOT_IN_GRAMMAR = "rule not in grammar"


class DerivationError(CfgkitError):
    """A derivation step could not be applied"""

    def __init__(self, kind: DerivationErrorKind, detail: str = "", step_index: Optional[int] = None):
        self.kind = kind
        self.detail = detail
        self.step_index = step_index
        message = kind.value
        if detail:
            message = f"{message}: {detail}"
        if step_index is not None:
            message = f"step {step_index}: {message}"
        super().__init__(message)

    def at_step(self, step_index: int) -> "DerivationError":
        """Return a copy of this error tagged with the trace step that raised it"""
        return DerivationError(self.kind, self.detail, step_index)


class InvalidBoundError(CfgkitError, ValueError):
    """A length or step bound is negative or not an integer, or a sample exceeds its bound"""


class PreconditionError(CfgkitError):
    """An operation was called on a grammar outside its domain"""


class EmptyLanguageError(PreconditionError):
    """The grammar generates no sentence at all"""

    def __init__(self, message: str = "empty language: start symbol derives no sentence"):
        super().__init__(message)


class NotInCnfError(PreconditionError):
    """The grammar is not in Chomsky Normal Form"""

    def __init__(self, rule: Optional["Rule"] = None):
        self.rule = rule
        message = "grammar not in CNF"
        if rule is not None:
            message = f"{message}: offending rule {rule}"
        super().__init__(message)


class ExpansionLimitError(PreconditionError):
    """A rule has too many nullable occurrences to expand"""
