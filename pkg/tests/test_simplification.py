"""
Tests for the simplification passes
"""
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from strategies import grammars, non_empty_grammars

from cfgkit.derivation import derives_within
from cfgkit.equivalence import bounded_equiv, generates_empty
from cfgkit.errors import EmptyLanguageError, ExpansionLimitError
from cfgkit.grammar_core import Base, FreshStart, Grammar, Rule, Terminal, is_nonterminal
from cfgkit.grammar_format import parse_grammar
from cfgkit.simplification import (
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

S, A, B, C, X = (Base(name) for name in ("S", "A", "B", "C", "X"))
a, b, c = Terminal("a"), Terminal("b"), Terminal("c")


def _leftmost_sentence(g, nt, max_steps, max_len):
    """Some sentence nt derives in at most max_steps leftmost steps, or None"""
    frontier = {(nt,)}
    seen = set(frontier)
    for _ in range(max_steps + 1):
        grown = set()
        for form in frontier:
            position = next((i for i, sym in enumerate(form) if is_nonterminal(sym)), None)
            if position is None:
                return form
            for rule in g.rules_for(form[position]):
                new_form = form[:position] + rule.rhs + form[position + 1:]
                if len(new_form) <= max_len and new_form not in seen:
                    seen.add(new_form)
                    grown.add(new_form)
        frontier = grown
    return None


def _reachable_symbols(g, max_steps):
    """Symbols of every form reachable from the start in at most max_steps steps"""
    frontier = {(g.start,)}
    reached = set(frontier)
    for _ in range(max_steps):
        frontier = {
            form[:i] + rule.rhs + form[i + 1:]
            for form in frontier
            for i, sym in enumerate(form)
            if is_nonterminal(sym)
            for rule in g.rules_for(sym)
        } - reached
        reached |= frontier
    return {sym for form in reached for sym in form}


class TestNullable:
    def test_g1_has_none(self, g1):
        assert len(nullable_set(g1)) == 0

    def test_transitive(self):
        g = parse_grammar("start: S\nS -> A B\nA -> %empty\nB -> A A | b\n")
        assert set(nullable_set(g)) == {S, A, B}

    def test_terminal_blocks(self):
        g = parse_grammar("start: S\nS -> A a\nA -> %empty\n")
        assert S not in nullable_set(g)
        assert A in nullable_set(g)

    @settings(max_examples=100)
    @given(grammars())
    def test_fixpoint_is_stable(self, g):
        nullable = set(nullable_set(g))
        padded = Grammar.build(g.start, set(g.rules) | {Rule(nt, ()) for nt in nullable}, g.nonterminals, g.terminals)
        assert set(nullable_set(padded)) == nullable


class TestRemoveEmpty:
    def test_expands_all_variants(self, nullable_example):
        result = remove_empty(nullable_example)
        x_rules = {rule.rhs for rule in result.rules if rule.lhs == X}
        assert x_rules == {
            (a, A, b, B, c, C),
            (a, b, B, c, C),
            (a, A, b, c, C),
            (a, A, b, B, c),
            (a, b, c, C),
            (a, b, B, c),
            (a, A, b, c),
            (a, b, c),
        }

    def test_empty_rules_dropped(self, nullable_example):
        result = remove_empty(nullable_example)
        assert result.start == FreshStart(0)
        assert [rule for rule in result.rules if rule.is_empty] == []
        assert Rule(FreshStart(0), (X,)) in result.rules

    def test_nullable_start(self, epsilon_only):
        result = remove_empty(epsilon_only)
        assert result.rules == {Rule(FreshStart(0), (S,)), Rule(FreshStart(0), ())}

    def test_fresh_generation_avoids_existing(self, epsilon_only):
        twice = remove_empty(remove_empty(epsilon_only))
        assert twice.start == FreshStart(1)
        assert check_predicates(twice).start_symbol_not_in_rhs

    @settings(max_examples=100)
    @given(grammars())
    def test_output_shape(self, g):
        result = remove_empty(g)
        assert isinstance(result.start, FreshStart)
        assert all(rule.lhs == result.start for rule in result.rules if rule.is_empty)
        assert all(result.start not in rule.rhs for rule in result.rules)
        assert (Rule(result.start, ()) in result.rules) == (g.start in nullable_set(g))

    def test_expansion_cap(self):
        rhs = tuple([A] * 17)
        g = Grammar.build(S, [Rule(S, rhs), Rule(A, ())])
        with pytest.raises(ExpansionLimitError):
            remove_empty(g)


class TestRemoveUnit:
    def test_unit_pairs_transitive(self):
        g = parse_grammar("start: S\nS -> A\nA -> B\nB -> b\n")
        assert set(unit_pairs(g)) == {(S, A), (S, B), (A, B)}

    def test_mutual_unit_rules(self):
        g = parse_grammar("start: A\nA -> B\nB -> A\n")
        assert set(unit_pairs(g)) == {(A, B), (B, A), (A, A), (B, B)}

    def test_cycle(self):
        g = parse_grammar("start: S\nS -> A | a\nA -> S\n")
        assert (S, S) in unit_pairs(g)
        result = remove_unit(g)
        assert result.rules == {Rule(S, (a,)), Rule(A, (a,))}

    def test_no_unit_rules_left(self):
        g = parse_grammar("start: S\nS -> A | a S\nA -> B | b\nB -> c\n")
        result = remove_unit(g)
        assert not any(rule.is_unit for rule in result.rules)
        assert Rule(S, (c,)) in result.rules


class TestUseful:
    def test_useful_set(self):
        g = parse_grammar("start: S\nS -> A | a\nA -> A b\n")
        assert useful_set(g) == {S}

    def test_remove_useless(self):
        g = parse_grammar("start: S\nS -> A | a\nA -> A b\n")
        result = remove_useless(g)
        assert result.rules == {Rule(S, (a,))}
        assert A not in result.nonterminals

    def test_empty_language(self):
        g = parse_grammar("start: S\nS -> S a\n")
        with pytest.raises(EmptyLanguageError):
            remove_useless(g)
        with pytest.raises(EmptyLanguageError):
            simplify(g)

    def test_epsilon_counts_as_sentence(self, epsilon_only):
        assert S in useful_set(epsilon_only)

    @settings(max_examples=100)
    @given(grammars(max_nonterminals=3, max_rules=5, max_rhs=2))
    def test_matches_derivation_search(self, g):
        # A shortest witness tree repeats no nonterminal on a path: height 3, at most 7 inner nodes
        useful = useful_set(g)
        for nt in g.nonterminals:
            sentence = _leftmost_sentence(g, nt, max_steps=7, max_len=8)
            assert (nt in useful) == (sentence is not None)
            if sentence is not None:
                assert derives_within(g, (nt,), sentence, 7).found

    @settings(max_examples=100)
    @given(non_empty_grammars())
    def test_fixpoint_is_stable(self, g):
        trimmed = remove_useless(g)
        assert useful_set(trimmed) == useful_set(g)
        assert remove_useless(trimmed) == trimmed


class TestAccessible:
    def test_accessible_set(self):
        g = parse_grammar("start: S\nS -> a A\nA -> b\nB -> c\n")
        assert accessible_set(g) == {S, A, a, b}

    def test_remove_inaccessible(self):
        g = parse_grammar("start: S\nS -> a A\nA -> b\nB -> c\n")
        result = remove_inaccessible(g)
        assert result.rules == {Rule(S, (a, A)), Rule(A, (b,))}
        assert result.terminals == {a, b}
        assert B not in result.nonterminals

    @settings(max_examples=50)
    @given(grammars(max_rules=6, max_rhs=2))
    def test_matches_form_search(self, g):
        # Every accessible symbol shows up within one step per nonterminal
        assert _reachable_symbols(g, len(g.nonterminals)) == set(accessible_set(g))

    @settings(max_examples=100)
    @given(grammars())
    def test_fixpoint_is_stable(self, g):
        trimmed = remove_inaccessible(g)
        assert accessible_set(trimmed) == accessible_set(g)
        assert remove_inaccessible(trimmed) == trimmed


class TestPipeline:
    def test_g1(self, g1):
        result = simplify(g1)
        checks = check_predicates(result)
        assert checks.to_dict() == {
            'has_no_empty_rules': True,
            'has_one_empty_rule': False,
            'has_no_unit_rules': True,
            'has_no_useless_symbols': True,
            'has_no_inaccessible_symbols': True,
            'start_symbol_not_in_rhs': True,
        }
        assert bounded_equiv(g1, result, 6).equal

    def test_checks_on_raw_grammar(self):
        g = parse_grammar("start: S\nS -> A | %empty | S a\nA -> A\nB -> b\n")
        checks = check_predicates(g)
        assert not checks.has_no_empty_rules
        assert checks.has_one_empty_rule
        assert not checks.has_no_unit_rules
        assert not checks.has_no_useless_symbols
        assert not checks.has_no_inaccessible_symbols
        assert not checks.start_symbol_not_in_rhs

    def test_empty_removal_before_unit_removal(self):
        g = parse_grammar("start: S\nS -> A B\nB -> %empty\nA -> a\n")
        without_empty = remove_empty(g)
        assert Rule(S, (A,)) in without_empty.rules
        assert not check_predicates(without_empty).has_no_unit_rules
        without_unit = remove_unit(without_empty)
        assert check_predicates(without_unit).has_no_unit_rules
        assert check_predicates(without_unit).has_no_empty_rules

    @settings(max_examples=100)
    @given(grammars())
    def test_unit_removal_adds_no_empty_rule(self, g):
        without_empty = remove_empty(g)
        empty_rules = {rule for rule in remove_unit(without_empty).rules if rule.is_empty}
        assert empty_rules <= {Rule(without_empty.start, ())}

    @pytest.mark.parametrize("kind", list(SimplificationPass))
    def test_get_pass(self, kind, g1):
        assert bounded_equiv(g1, get_pass(kind)(g1), 5).equal

    @settings(max_examples=50)
    @given(st.data())
    def test_pipeline_flags(self, data):
        g = data.draw(non_empty_grammars())
        checks = check_predicates(simplify(g))
        assert checks.has_no_unit_rules
        assert checks.has_no_useless_symbols
        assert checks.has_no_inaccessible_symbols
        assert checks.start_symbol_not_in_rhs
        assert checks.has_one_empty_rule == generates_empty(g)
        assert checks.has_no_empty_rules != generates_empty(g)
