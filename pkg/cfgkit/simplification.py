"""
Grammar simplification

Elimination of empty rules, unit rules, useless symbols and inaccessible
symbols, the ordered pipeline combining them, and the structural predicates
each pass establishes.

The nullable, useful and accessible sets are least fixpoints over the rule
set; for finite grammars they coincide with their derivation-based
definitions.
"""
import itertools
import logging
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Callable, Dict, FrozenSet, Iterator, List, Set, Tuple

from .config import get_config
from .errors import EmptyLanguageError, ExpansionLimitError
from .grammar_core import (
    FreshStart,
    Grammar,
    Nonterminal,
    Rule,
    SententialForm,
    Symbol,
    ensure_valid,
    is_nonterminal,
    is_terminal,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NullableSet:
    """Nonterminals that derive the empty form"""
    members: FrozenSet[Nonterminal]

    def __contains__(self, item: object) -> bool:
        return item in self.members

    def __iter__(self) -> Iterator[Nonterminal]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class UnitPairSet:
    """Pairs (a, b) with a =>+ b through unit rules only"""
    pairs: FrozenSet[Tuple[Nonterminal, Nonterminal]]

    def __contains__(self, item: object) -> bool:
        return item in self.pairs

    def __iter__(self) -> Iterator[Tuple[Nonterminal, Nonterminal]]:
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class GrammarChecks:
    """Structural predicates established by the simplification passes"""
    has_no_empty_rules: bool
    has_one_empty_rule: bool
    has_no_unit_rules: bool
    has_no_useless_symbols: bool
    has_no_inaccessible_symbols: bool
    start_symbol_not_in_rhs: bool

    def to_dict(self) -> Dict[str, bool]:
        """Convert to dictionary"""
        return asdict(self)


def nullable_set(g: Grammar) -> NullableSet:
    """
    Least set N with A in N whenever some rule A -> X1..Xn has every Xi a
    nonterminal in N (n = 0 gives the base case)
    """
    nullable: Set[Nonterminal] = set()
    changed = True
    while changed:
        changed = False
        for rule in g.rules:
            if rule.lhs in nullable:
                continue
            if all(is_nonterminal(sym) and sym in nullable for sym in rule.rhs):
                nullable.add(rule.lhs)
                changed = True
    logger.debug(f"Nullable set has {len(nullable)} members")
    return NullableSet(frozenset(nullable))


def _deletion_variants(rhs: SententialForm, nullable: NullableSet, cap: int) -> Set[SententialForm]:
    """Every non-empty form obtained by deleting a subset of the nullable occurrences of rhs"""
    positions = [i for i, sym in enumerate(rhs) if is_nonterminal(sym) and sym in nullable]
    if len(positions) > cap:
        raise ExpansionLimitError(
            f"rule right-hand side has {len(positions)} nullable occurrences (limit {cap})"
        )

    variants: Set[SententialForm] = set()
    for keep_mask in itertools.product((True, False), repeat=len(positions)):
        dropped = {pos for pos, keep in zip(positions, keep_mask) if not keep}
        variant = tuple(sym for i, sym in enumerate(rhs) if i not in dropped)
        if variant:
            variants.add(variant)
    return variants


def _fresh_start(g: Grammar) -> FreshStart:
    """Smallest FreshStart generation the grammar does not already use"""
    used = {sym.generation for sym in g.nonterminals | g.symbols() if isinstance(sym, FreshStart)}
    generation = 0
    while generation in used:
        generation += 1
    return FreshStart(generation)


def remove_empty(g: Grammar) -> Grammar:
    """
    Eliminate empty rules

    Every rule is replaced by all its variants with some nullable occurrences
    deleted (empty variants dropped). A fresh start symbol derives the old
    start, and derives the empty form iff the old start is nullable.

    Args:
        g: Source grammar

    Returns:
        Equivalent grammar whose only possible empty rule is fresh-start -> ε
    """
    ensure_valid(g)
    nullable = nullable_set(g)
    cap = get_config().MAX_NULLABLE_OCCURRENCES
    new_start = _fresh_start(g)

    rules: Set[Rule] = set()
    for rule in g.rules:
        for rhs in _deletion_variants(rule.rhs, nullable, cap):
            rules.add(Rule(rule.lhs, rhs))
    rules.add(Rule(new_start, (g.start,)))
    if g.start in nullable:
        rules.add(Rule(new_start, ()))

    result = Grammar.build(new_start, rules, nonterminals=g.nonterminals, terminals=g.terminals)
    logger.debug(f"remove_empty: {len(g.rules)} -> {len(result.rules)} rules")
    return result


def unit_pairs(g: Grammar) -> UnitPairSet:
    """Transitive closure of the unit-rule relation, excluding the empty path"""
    edges: Dict[Nonterminal, Set[Nonterminal]] = {}
    for rule in g.rules:
        if rule.is_unit:
            edges.setdefault(rule.lhs, set()).add(rule.rhs[0])  # type: ignore[arg-type]

    pairs: Set[Tuple[Nonterminal, Nonterminal]] = set()
    for source, targets in edges.items():
        reached: Set[Nonterminal] = set()
        stack = list(targets)
        while stack:
            nt = stack.pop()
            if nt in reached:
                continue
            reached.add(nt)
            stack.extend(edges.get(nt, ()))
        pairs.update((source, nt) for nt in reached)
    logger.debug(f"Unit pair set has {len(pairs)} pairs")
    return UnitPairSet(frozenset(pairs))


def remove_unit(g: Grammar) -> Grammar:
    """
    Eliminate unit rules

    Keeps every non-unit rule and adds a -> β for each unit pair (a, b) and
    non-unit rule b -> β.
    """
    ensure_valid(g)
    by_lhs: Dict[Nonterminal, List[Rule]] = {}
    for rule in g.rules:
        if not rule.is_unit:
            by_lhs.setdefault(rule.lhs, []).append(rule)

    rules: Set[Rule] = {rule for rules in by_lhs.values() for rule in rules}
    for source, target in unit_pairs(g):
        rules.update(Rule(source, rule.rhs) for rule in by_lhs.get(target, ()))

    result = Grammar.build(g.start, rules, nonterminals=g.nonterminals, terminals=g.terminals)
    logger.debug(f"remove_unit: {len(g.rules)} -> {len(result.rules)} rules")
    return result


def useful_set(g: Grammar) -> FrozenSet[Nonterminal]:
    """Least set U with A in U whenever some rule A -> β has every nonterminal of β in U"""
    useful: Set[Nonterminal] = set()
    changed = True
    while changed:
        changed = False
        for rule in g.rules:
            if rule.lhs in useful:
                continue
            if all(is_terminal(sym) or sym in useful for sym in rule.rhs):
                useful.add(rule.lhs)
                changed = True
    logger.debug(f"Useful set has {len(useful)} members")
    return frozenset(useful)


def remove_useless(g: Grammar) -> Grammar:
    """
    Keep exactly the rules whose lhs and rhs nonterminals are all useful

    Raises:
        EmptyLanguageError: If the start symbol is useless
    """
    ensure_valid(g)
    useful = useful_set(g)
    if g.start not in useful:
        raise EmptyLanguageError()

    rules = {
        rule for rule in g.rules
        if rule.lhs in useful and all(is_terminal(sym) or sym in useful for sym in rule.rhs)
    }
    result = Grammar.build(
        g.start, rules, nonterminals=[nt for nt in g.nonterminals if nt in useful], terminals=g.terminals
    )
    logger.debug(f"remove_useless: {len(g.rules)} -> {len(result.rules)} rules")
    return result


def accessible_set(g: Grammar) -> FrozenSet[Symbol]:
    """Symbols reachable from the start symbol through rule right-hand sides"""
    accessible: Set[Symbol] = {g.start}
    pending: List[Nonterminal] = [g.start]
    while pending:
        nt = pending.pop()
        for rule in g.rules_for(nt):
            for sym in rule.rhs:
                if sym not in accessible:
                    accessible.add(sym)
                    if is_nonterminal(sym):
                        pending.append(sym)  # type: ignore[arg-type]
    logger.debug(f"Accessible set has {len(accessible)} members")
    return frozenset(accessible)


def remove_inaccessible(g: Grammar) -> Grammar:
    """Keep exactly the rules whose lhs is accessible; prune declared symbols likewise"""
    ensure_valid(g)
    accessible = accessible_set(g)
    rules = {rule for rule in g.rules if rule.lhs in accessible}
    result = Grammar.build(
        g.start,
        rules,
        nonterminals=[nt for nt in g.nonterminals if nt in accessible],
        terminals=[t for t in g.terminals if t in accessible],
    )
    logger.debug(f"remove_inaccessible: {len(g.rules)} -> {len(result.rules)} rules")
    return result


def simplify(g: Grammar) -> Grammar:
    """
    Run the full simplification pipeline

    Order matters: empty-rule elimination can create unit rules, while
    unit-rule elimination creates no empty rules; the last two passes only
    delete rules.

    Raises:
        EmptyLanguageError: If the grammar generates no sentence
    """
    ensure_valid(g)
    if g.start not in useful_set(g):
        raise EmptyLanguageError()
    result = remove_inaccessible(remove_useless(remove_unit(remove_empty(g))))
    logger.info(f"Simplified grammar: {g.summary()} -> {result.summary()}")
    return result


def check_predicates(g: Grammar) -> GrammarChecks:
    """
    Compute the six simplification predicates structurally

    Useless and inaccessible flags consider the symbols that occur in the
    grammar (start symbol and rules), not merely declared ones.
    """
    empty_rules = [rule for rule in g.rules if rule.is_empty]
    symbols = g.symbols()
    useful = useful_set(g)
    accessible = accessible_set(g)
    return GrammarChecks(
        has_no_empty_rules=not empty_rules,
        has_one_empty_rule=len(empty_rules) == 1 and empty_rules[0].lhs == g.start,
        has_no_unit_rules=not any(rule.is_unit for rule in g.rules),
        has_no_useless_symbols=all(is_terminal(sym) or sym in useful for sym in symbols),
        has_no_inaccessible_symbols=all(sym in accessible for sym in symbols),
        start_symbol_not_in_rhs=all(g.start not in rule.rhs for rule in g.rules),
    )


class SimplificationPass(Enum):
    """Available simplification passes"""
    EMPTY = "empty"
    UNIT = "unit"
    USELESS = "useless"
    INACCESSIBLE = "inaccessible"
    ALL = "all"


_PASSES: Dict[SimplificationPass, Callable[[Grammar], Grammar]] = {
    SimplificationPass.EMPTY: remove_empty,
    SimplificationPass.UNIT: remove_unit,
    SimplificationPass.USELESS: remove_useless,
    SimplificationPass.INACCESSIBLE: remove_inaccessible,
    SimplificationPass.ALL: simplify,
}


def get_pass(kind: SimplificationPass) -> Callable[[Grammar], Grammar]:
    """
    Factory function to get a simplification pass

    Args:
        kind: Pass to return

    Returns:
        Function mapping a grammar to its simplified form
    """
    if kind not in _PASSES:
        raise ValueError(f"Unknown simplification pass: {kind}")
    return _PASSES[kind]
