"""
Chomsky Normal Form conversion

Every nonterminal X is lifted to Group([X]), terminals standing beside other
symbols get a Group([t]) -> t rule, and long right-hand sides are folded to
the right into binary rules over Group nonterminals:

    S' -> X Y Z d   becomes   [S'] -> [X] [Y.Z.d]
                              [Y.Z.d] -> [Y] [Z.d]
                              [Z.d] -> [Z] [d]
                              [d] -> d

Identical suffixes share one Group nonterminal because Group identity is its body.
"""
import logging
from typing import List, Optional, Set

from .cache_service import get_cache
from .errors import EmptyLanguageError, PreconditionError
from .grammar_core import (
    Grammar,
    Group,
    Rule,
    SententialForm,
    Symbol,
    ensure_valid,
    is_nonterminal,
    is_terminal,
)
from .simplification import simplify, useful_set

logger = logging.getLogger(__name__)


def _has_cnf_shape(rule: Rule) -> bool:
    if len(rule.rhs) == 1:
        return is_terminal(rule.rhs[0])
    if len(rule.rhs) == 2:
        return all(is_nonterminal(sym) for sym in rule.rhs)
    return False


def _start_in_rhs(g: Grammar) -> bool:
    return any(g.start in rule.rhs for rule in g.rules)


def is_cnf(g: Grammar) -> bool:
    """True iff every rule is A -> t or A -> B C"""
    return all(_has_cnf_shape(rule) for rule in g.rules)


def is_cnf_with_empty_rule(g: Grammar) -> bool:
    """
    True iff the grammar is in CNF apart from a single start -> ε rule,
    and the start symbol occurs in no right-hand side
    """
    empty_rules = [rule for rule in g.rules if rule.is_empty]
    if len(empty_rules) != 1 or empty_rules[0].lhs != g.start:
        return False
    if _start_in_rhs(g):
        return False
    return all(_has_cnf_shape(rule) for rule in g.rules if not rule.is_empty)


def find_cnf_violation(g: Grammar) -> Optional[Rule]:
    """
    First rule (canonical order) preventing both CNF variants, or None

    A lone start -> ε rule is allowed; if the start then occurs on a
    right-hand side, the first rule where it does is the offender.
    """
    start_empty = Rule(g.start, ())
    for rule in g.sorted_rules():
        if rule != start_empty and not _has_cnf_shape(rule):
            return rule
    if start_empty in g.rules:
        for rule in g.sorted_rules():
            if g.start in rule.rhs:
                return rule
    return None


def _lift(sym: Symbol) -> Group:
    return Group((sym,))


def cnf_lift(g: Grammar) -> Grammar:
    """
    Lift a grammar with no unit rules and no empty rules (other than
    start -> ε with the start absent from every rhs) into CNF

    Args:
        g: Grammar meeting the precondition, typically the output of simplify

    Returns:
        CNF grammar (with the start -> ε rule when g has one) starting at Group([g.start])

    Raises:
        PreconditionError: If g has a unit rule or a disallowed empty rule
    """
    ensure_valid(g)
    for rule in g.sorted_rules():
        if rule.is_unit:
            raise PreconditionError(f"unit rule not allowed before CNF lifting: {rule}")
        if rule.is_empty and (rule.lhs != g.start or _start_in_rhs(g)):
            raise PreconditionError(f"empty rule not allowed before CNF lifting: {rule}")

    start = _lift(g.start)
    rules: Set[Rule] = set()
    for rule in g.rules:
        rhs = rule.rhs
        if not rhs:
            rules.add(Rule(start, ()))
        elif len(rhs) == 1:
            rules.add(Rule(_lift(rule.lhs), rhs))
        else:
            for sym in rhs:
                if is_terminal(sym):
                    rules.add(Rule(_lift(sym), (sym,)))
            rules.add(Rule(_lift(rule.lhs), (_lift(rhs[0]), Group(rhs[1:]))))
            for i in range(1, len(rhs) - 1):
                rules.add(Rule(Group(rhs[i:]), (_lift(rhs[i]), Group(rhs[i + 1:]))))

    result = Grammar.build(start, rules, terminals=g.terminals)
    logger.debug(f"cnf_lift: {len(g.rules)} -> {len(result.rules)} rules")
    return result


def to_cnf(g: Grammar) -> Grammar:
    """
    Convert a grammar with a non-empty language to Chomsky Normal Form

    The grammar is always simplified first. Results are memoized in the
    normal-form cache.

    Raises:
        EmptyLanguageError: If the start symbol derives no sentence
    """
    ensure_valid(g)
    cache = get_cache()
    cached = cache.get(g)
    if cached is not None:
        return cached

    if g.start not in useful_set(g):
        raise EmptyLanguageError()
    result = cnf_lift(simplify(g))
    cache.set(g, result)
    logger.info(f"Converted to CNF: {g.summary()} -> {result.summary()}")
    return result


def extract_form(form: SententialForm) -> SententialForm:
    """Replace each Group nonterminal by its recursively extracted body"""
    extracted: List[Symbol] = []
    for sym in form:
        if isinstance(sym, Group):
            extracted.extend(extract_form(sym.body))
        else:
            extracted.append(sym)
    return tuple(extracted)
