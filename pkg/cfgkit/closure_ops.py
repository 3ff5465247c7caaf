"""
Closure constructions: union, concatenation and Kleene star

Operand nonterminals are wrapped in Lifted1/Lifted2, so the constructed
grammar's FreshStart(0) never collides with them, however deeply the
constructions are nested. Terminals are shared by name.
"""
import logging
from enum import Enum
from typing import Iterable, Set, Tuple

from .derivation import DerivationStep, DerivationTrace
from .grammar_core import (
    FreshStart,
    Grammar,
    Lifted1,
    Lifted2,
    Nonterminal,
    Rule,
    SententialForm,
    Symbol,
    ensure_valid,
)

logger = logging.getLogger(__name__)


class Side(Enum):
    """Which operand of a construction a symbol comes from"""
    LEFT = 1
    RIGHT = 2


def lift_nonterminal(nt: Nonterminal, side: Side) -> Nonterminal:
    return Lifted1(nt) if side is Side.LEFT else Lifted2(nt)


def lift_symbol(sym: Symbol, side: Side) -> Symbol:
    """Wrap a nonterminal for the given operand; terminals pass through"""
    if isinstance(sym, Nonterminal):
        return lift_nonterminal(sym, side)
    return sym


def lift_form(form: Iterable[Symbol], side: Side) -> SententialForm:
    return tuple(lift_symbol(sym, side) for sym in form)


def lift_rule(rule: Rule, side: Side) -> Rule:
    return Rule(lift_nonterminal(rule.lhs, side), lift_form(rule.rhs, side))


def lift_trace(trace: DerivationTrace, side: Side) -> DerivationTrace:
    """
    Map a derivation in an operand grammar to the same derivation in a
    construction over it (positions are unchanged since lifting preserves length)
    """
    return DerivationTrace(tuple(DerivationStep(step.position, lift_rule(step.rule, side)) for step in trace))


def _lifted_parts(g: Grammar, side: Side) -> Tuple[Set[Rule], Set[Nonterminal]]:
    rules = {lift_rule(rule, side) for rule in g.rules}
    nonterminals = {lift_nonterminal(nt, side) for nt in g.nonterminals}
    return rules, nonterminals


def union(g1: Grammar, g2: Grammar) -> Grammar:
    """
    Grammar for L(g1) ∪ L(g2)

    Args:
        g1: Left operand
        g2: Right operand

    Returns:
        Grammar with start S%0 -> g1.start@1 | g2.start@2 plus both lifted rule sets
    """
    ensure_valid(g1)
    ensure_valid(g2)
    start = FreshStart(0)
    rules1, nts1 = _lifted_parts(g1, Side.LEFT)
    rules2, nts2 = _lifted_parts(g2, Side.RIGHT)
    rules = rules1 | rules2 | {
        Rule(start, (Lifted1(g1.start),)),
        Rule(start, (Lifted2(g2.start),)),
    }
    result = Grammar.build(start, rules, nonterminals=nts1 | nts2, terminals=g1.terminals | g2.terminals)
    logger.debug(f"union: {result.summary()}")
    return result


def concat(g1: Grammar, g2: Grammar) -> Grammar:
    """Grammar for L(g1)·L(g2): start S%0 -> g1.start@1 g2.start@2"""
    ensure_valid(g1)
    ensure_valid(g2)
    start = FreshStart(0)
    rules1, nts1 = _lifted_parts(g1, Side.LEFT)
    rules2, nts2 = _lifted_parts(g2, Side.RIGHT)
    rules = rules1 | rules2 | {Rule(start, (Lifted1(g1.start), Lifted2(g2.start)))}
    result = Grammar.build(start, rules, nonterminals=nts1 | nts2, terminals=g1.terminals | g2.terminals)
    logger.debug(f"concat: {result.summary()}")
    return result


def star(g: Grammar) -> Grammar:
    """Grammar for L(g)*: start S%0 -> S%0 g.start@1 | ε"""
    ensure_valid(g)
    start = FreshStart(0)
    lifted_rules, nts = _lifted_parts(g, Side.LEFT)
    rules = lifted_rules | {
        Rule(start, (start, Lifted1(g.start))),
        Rule(start, ()),
    }
    result = Grammar.build(start, rules, nonterminals=nts, terminals=g.terminals)
    logger.debug(f"star: {result.summary()}")
    return result
