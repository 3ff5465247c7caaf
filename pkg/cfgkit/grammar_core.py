"""
Grammar core types

Terminals, structured nonterminal identities, rules and grammars, plus
structural validation. Every other cfgkit module consumes these types.

Nonterminal identities are small immutable trees. Transformations never invent
names: they wrap existing identities (Lifted1/Lifted2), mint a FreshStart, or
group a sentential form (Group), so freshness follows from structure.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Tuple, Union

from .errors import GrammarValidationError
from .utils.validators import validate_generation, validate_token

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Terminal:
    """A terminal symbol, identified by its token name"""
    name: str

    def __str__(self) -> str:
        return self.name


class Nonterminal:
    """Common base of the nonterminal identity variants"""
    __slots__ = ()


@dataclass(frozen=True)
class Base(Nonterminal):
    """A nonterminal named in the source grammar"""
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Lifted1(Nonterminal):
    """Nonterminal of the first (or only) operand of a closure construction"""
    inner: Nonterminal

    def __str__(self) -> str:
        return f"{self.inner}@1"


@dataclass(frozen=True)
class Lifted2(Nonterminal):
    """Nonterminal of the second operand of a closure construction"""
    inner: Nonterminal

    def __str__(self) -> str:
        return f"{self.inner}@2"


@dataclass(frozen=True)
class FreshStart(Nonterminal):
    """Start symbol minted by a construction"""
    generation: int = 0

    def __str__(self) -> str:
        return f"S%{self.generation}"


@dataclass(frozen=True)
class Group(Nonterminal):
    """Nonterminal standing for a whole sentential form (CNF binarization)"""
    body: Tuple[Symbol, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, 'body', tuple(self.body))

    def __str__(self) -> str:
        return "[" + ".".join(str(sym) for sym in self.body) + "]"


Symbol = Union[Nonterminal, Terminal]
SententialForm = Tuple[Symbol, ...]
Sentence = Tuple[Terminal, ...]

EMPTY_TOKEN = "%empty"


def is_terminal(sym: object) -> bool:
    return isinstance(sym, Terminal)


def is_nonterminal(sym: object) -> bool:
    return isinstance(sym, Nonterminal)


def symbol_text(sym: Symbol) -> str:
    """Flattened printable token of a symbol"""
    return str(sym)


def form_text(form: Iterable[Symbol]) -> str:
    """Space-joined tokens of a sentential form; %empty for the empty form"""
    tokens = [symbol_text(sym) for sym in form]
    return " ".join(tokens) if tokens else EMPTY_TOKEN


def terminals_of(names: Iterable[str]) -> Sentence:
    """Build a sentence from terminal names"""
    return tuple(Terminal(name) for name in names)


@dataclass(frozen=True)
class Rule:
    """A production lhs -> rhs; an empty rhs encodes lhs -> ε"""
    lhs: Nonterminal
    rhs: SententialForm = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, 'rhs', tuple(self.rhs))

    @property
    def is_empty(self) -> bool:
        return not self.rhs

    @property
    def is_unit(self) -> bool:
        return len(self.rhs) == 1 and is_nonterminal(self.rhs[0])

    def sort_key(self) -> Tuple[str, str]:
        return symbol_text(self.lhs), form_text(self.rhs)

    def __str__(self) -> str:
        return f"{self.lhs} -> {form_text(self.rhs)}"


@dataclass(frozen=True)
class Grammar:
    """
    A context-free grammar: start symbol, finite rule set and declared alphabets

    Rules form a set, so duplicates collapse at construction. Use Grammar.build
    to infer the symbol sets from the rules.
    """
    start: Nonterminal
    rules: FrozenSet[Rule]
    nonterminals: FrozenSet[Nonterminal]
    terminals: FrozenSet[Terminal]

    def __post_init__(self) -> None:
        object.__setattr__(self, 'rules', frozenset(self.rules))
        object.__setattr__(self, 'nonterminals', frozenset(self.nonterminals))
        object.__setattr__(self, 'terminals', frozenset(self.terminals))

    @classmethod
    def build(
        cls,
        start: Nonterminal,
        rules: Iterable[Rule],
        nonterminals: Iterable[Nonterminal] = (),
        terminals: Iterable[Terminal] = (),
    ) -> Grammar:
        """
        Build a grammar, declaring every symbol the start and rules mention

        Args:
            start: Start symbol
            rules: Productions (duplicates are dropped)
            nonterminals: Extra nonterminals to declare
            terminals: Extra terminals to declare

        Returns:
            Grammar whose symbol sets cover all its rules
        """
        rule_set = frozenset(rules)
        declared_nonterminals = set(nonterminals)
        declared_nonterminals.add(start)
        declared_terminals = set(terminals)
        for rule in rule_set:
            declared_nonterminals.add(rule.lhs)
            for sym in rule.rhs:
                if is_terminal(sym):
                    declared_terminals.add(sym)  # type: ignore[arg-type]
                else:
                    declared_nonterminals.add(sym)  # type: ignore[arg-type]
        return cls(start, rule_set, frozenset(declared_nonterminals), frozenset(declared_terminals))

    @cached_property
    def _sorted_rules(self) -> Tuple[Rule, ...]:
        return tuple(sorted(self.rules, key=Rule.sort_key))

    @cached_property
    def _rule_index(self) -> Dict[Nonterminal, Tuple[Rule, ...]]:
        index: Dict[Nonterminal, List[Rule]] = {}
        for rule in self._sorted_rules:
            index.setdefault(rule.lhs, []).append(rule)
        return {lhs: tuple(rules) for lhs, rules in index.items()}

    def sorted_rules(self) -> Tuple[Rule, ...]:
        """Rules in canonical order (rendered lhs, then rendered rhs)"""
        return self._sorted_rules

    def rules_for(self, lhs: Nonterminal) -> Tuple[Rule, ...]:
        """Rules with the given left-hand side, in canonical order"""
        return self._rule_index.get(lhs, ())

    def symbols(self) -> FrozenSet[Symbol]:
        """Symbols occurring as the start symbol or anywhere in a rule"""
        found: set = {self.start}
        for rule in self.rules:
            found.add(rule.lhs)
            found.update(rule.rhs)
        return frozenset(found)

    def summary(self) -> str:
        return f"start={self.start}, {len(self.rules)} rules, {len(self.nonterminals)} nonterminals"


@dataclass
class ValidationReport:
    """Outcome of validate: violations are data, never faults"""
    violations: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary"""
        return {'ok': self.ok, 'violations': list(self.violations)}


def _check_symbol(sym: object, where: str, violations: List[str]) -> None:
    if isinstance(sym, Terminal):
        is_valid, message = validate_token(sym.name)
        if not is_valid:
            violations.append(f"{where}: terminal {sym.name!r}: {message}")
    elif isinstance(sym, Nonterminal):
        _check_nonterminal(sym, where, violations)
    else:
        violations.append(f"{where}: {sym!r} is not a symbol")


def _check_nonterminal(nt: Nonterminal, where: str, violations: List[str]) -> None:
    if isinstance(nt, Base):
        is_valid, message = validate_token(nt.name)
        if not is_valid:
            violations.append(f"{where}: nonterminal {nt.name!r}: {message}")
    elif isinstance(nt, (Lifted1, Lifted2)):
        if isinstance(nt.inner, Nonterminal):
            _check_nonterminal(nt.inner, where, violations)
        else:
            violations.append(f"{where}: lifted {nt.inner!r} is not a nonterminal")
    elif isinstance(nt, FreshStart):
        is_valid, message = validate_generation(nt.generation)
        if not is_valid:
            violations.append(f"{where}: fresh start: {message}")
    elif isinstance(nt, Group):
        if not nt.body:
            violations.append(f"{where}: group with empty body")
        for sym in nt.body:
            _check_symbol(sym, where, violations)


def validate(g: Grammar) -> ValidationReport:
    """
    Check every structural invariant of a grammar

    Args:
        g: Grammar to check

    Returns:
        ValidationReport listing each violated invariant with the offending symbol or rule
    """
    report = ValidationReport()
    violations = report.violations

    if not isinstance(g.start, Nonterminal):
        violations.append(f"start {g.start!r} is not a nonterminal")
    elif g.start not in g.nonterminals:
        violations.append(f"start not declared: {g.start}")

    for nt in g.nonterminals:
        if isinstance(nt, Nonterminal):
            _check_nonterminal(nt, "nonterminals", violations)
        else:
            violations.append(f"nonterminals: {nt!r} is not a nonterminal")
    for t in g.terminals:
        _check_symbol(t, "terminals", violations)

    for rule in g.rules:
        if not isinstance(rule, Rule):
            violations.append(f"{rule!r} is not a rule")
            continue
        if not isinstance(rule.lhs, Nonterminal):
            violations.append(f"rule {rule}: left-hand side {rule.lhs!r} is not a nonterminal")
        elif rule.lhs not in g.nonterminals:
            violations.append(f"rule {rule}: left-hand side {rule.lhs} not declared")
        for sym in rule.rhs:
            if isinstance(sym, Terminal):
                if sym not in g.terminals:
                    violations.append(f"rule {rule}: terminal {sym} not declared")
            elif isinstance(sym, Nonterminal):
                if sym not in g.nonterminals:
                    violations.append(f"rule {rule}: nonterminal {sym} not declared")
            else:
                violations.append(f"rule {rule}: {sym!r} is not a symbol")

    violations.sort()
    return report


def ensure_valid(g: Grammar) -> Grammar:
    """Return g unchanged, raising GrammarValidationError if it violates an invariant"""
    report = validate(g)
    if not report.ok:
        logger.debug(f"Rejected invalid grammar: {report.violations}")
        raise GrammarValidationError(report)
    return g
