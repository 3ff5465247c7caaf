"""
End-to-end acceptance checks: worked examples and randomized correctness
properties of every construction, at length bound 5
"""
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from strategies import draw_trace, forms, grammars, non_empty_grammars

from cfgkit.closure_ops import concat, star, union
from cfgkit.cnf import cnf_lift, is_cnf, is_cnf_with_empty_rule, to_cnf
from cfgkit.derivation import (
    EnumerationMethod,
    bfs_language,
    concat_traces,
    cyk_member,
    embed_trace,
    enumerate_language,
    parallel_traces,
    replay,
    split_trace,
)
from cfgkit.equivalence import bounded_equiv, generates_empty
from cfgkit.grammar_core import Base, Terminal, terminals_of
from cfgkit.simplification import (
    check_predicates,
    remove_empty,
    remove_inaccessible,
    remove_unit,
    remove_useless,
    simplify,
)

K = 5


def _concatenation(left, right, k):
    return {u + v for u in left for v in right if len(u) + len(v) <= k}


def _closure(sentences, k):
    closed = {()}
    while True:
        grown = closed | _concatenation(closed, sentences, k)
        if grown == closed:
            return closed
        closed = grown


@pytest.mark.slow
class TestWorkedExamples:
    def test_g1(self, g1):
        assert cyk_member(to_cnf(g1), terminals_of("aab"))
        sample = enumerate_language(g1, 5)
        assert sample.sentences == {terminals_of(w) for w in ("b", "ab", "aab", "aaab", "aaaab")}
        assert () not in sample

    def test_nullable_expansion(self, nullable_example):
        x = Base("X")
        x_rules = [rule for rule in remove_empty(nullable_example).rules if rule.lhs == x]
        assert len(x_rules) == 8
        texts = {" ".join(str(sym) for sym in rule.rhs) for rule in x_rules}
        assert texts == {
            "a A b B c C", "a b B c C", "a A b c C", "a A b B c",
            "a b c C", "a b B c", "a A b c", "a b c",
        }

    def test_binarization(self, cnf_example):
        assert len(cnf_lift(cnf_example).rules) == 7
        result = to_cnf(cnf_example)
        assert len(result.rules) == 7
        assert bounded_equiv(result, cnf_example, 6).equal


@pytest.mark.slow
class TestClosureConstructions:
    @settings(max_examples=200)
    @given(st.data())
    def test_union_concat_star(self, data):
        g1 = data.draw(grammars())
        g2 = data.draw(grammars())
        l1 = enumerate_language(g1, K).sentences
        l2 = enumerate_language(g2, K).sentences

        assert enumerate_language(union(g1, g2), K).sentences == l1 | l2
        assert enumerate_language(concat(g1, g2), K).sentences == _concatenation(l1, l2, K)
        assert enumerate_language(star(g1), K).sentences == _closure(l1, K)


@pytest.mark.slow
class TestSimplificationPreservesLanguage:
    @settings(max_examples=200)
    @given(st.data())
    def test_passes_preserve_language(self, data):
        g = data.draw(non_empty_grammars())
        for simplification in (remove_empty, remove_unit, remove_useless, remove_inaccessible, simplify):
            assert bounded_equiv(g, simplification(g), K).equal, simplification.__name__

        checks = check_predicates(simplify(g))
        assert checks.has_no_unit_rules
        assert checks.has_no_useless_symbols
        assert checks.has_no_inaccessible_symbols
        assert checks.start_symbol_not_in_rhs
        assert checks.has_one_empty_rule == generates_empty(g)
        assert checks.has_no_empty_rules == (not generates_empty(g))


@pytest.mark.slow
class TestCnfConversion:
    @settings(max_examples=200)
    @given(st.data())
    def test_normal_form(self, data):
        g = data.draw(non_empty_grammars())
        result = to_cnf(g)
        assert is_cnf(result) != is_cnf_with_empty_rule(result)
        assert is_cnf_with_empty_rule(result) == generates_empty(g)
        assert all(result.start not in rule.rhs for rule in result.rules)
        assert bounded_equiv(result, g, K).equal


@pytest.mark.slow
class TestTraceComposition:
    @settings(max_examples=500)
    @given(st.data())
    def test_transitivity(self, data):
        g = data.draw(grammars())
        s1 = data.draw(forms(g))
        t1, s2 = draw_trace(data, g, s1)
        t2, s3 = draw_trace(data, g, s2)
        assert replay(g, s1, concat_traces(t1, t2)) == s3

    @settings(max_examples=500)
    @given(st.data())
    def test_context_embedding(self, data):
        g = data.draw(grammars())
        s1 = data.draw(forms(g))
        prefix = data.draw(forms(g))
        suffix = data.draw(forms(g))
        trace, s2 = draw_trace(data, g, s1)
        assert replay(g, prefix + s1 + suffix, embed_trace(trace, len(prefix))) == prefix + s2 + suffix

    @settings(max_examples=500)
    @given(st.data())
    def test_parallel_composition(self, data):
        g = data.draw(grammars())
        s1 = data.draw(forms(g))
        s3 = data.draw(forms(g))
        t1, s2 = draw_trace(data, g, s1)
        t2, s4 = draw_trace(data, g, s3)
        assert replay(g, s1 + s3, parallel_traces(t1, t2, len(s2))) == s2 + s4

    @settings(max_examples=500)
    @given(st.data())
    def test_splitting(self, data):
        g = data.draw(grammars())
        s1 = data.draw(forms(g))
        s2 = data.draw(forms(g))
        trace, s3 = draw_trace(data, g, s1 + s2)
        split = split_trace(g, s1, s2, trace)
        assert split.combined_form == s3
        assert replay(g, s1, split.left_trace) == split.left_form
        assert replay(g, s2, split.right_trace) == split.right_form
        assert len(split.left_trace) + len(split.right_trace) == len(trace)

    @settings(max_examples=200)
    @given(st.data())
    def test_sentence_of_embedded_nonterminal(self, data):
        # A derivation of a sentence from s1.N.s2 contains a derivation of a sentence from N
        g = data.draw(grammars())
        s1 = data.draw(forms(g))
        s2 = data.draw(forms(g))
        n = data.draw(st.sampled_from(sorted(g.nonterminals, key=str)))
        trace, reached = draw_trace(data, g, s1 + (n,) + s2, max_steps=10)
        if any(not isinstance(sym, Terminal) for sym in reached):
            return
        middle = split_trace(g, s1, (n,) + s2, trace)
        tail = split_trace(g, (n,), s2, middle.right_trace)
        assert all(isinstance(sym, Terminal) for sym in tail.left_form)
        assert replay(g, (n,), tail.left_trace) == tail.left_form


@pytest.mark.slow
class TestOracleCrossCheck:
    @settings(max_examples=100)
    @given(st.data())
    def test_enumeration_matches_reference_search(self, data):
        g = data.draw(non_empty_grammars())
        sample = enumerate_language(g, K)
        assert bfs_language(simplify(g), K) == sample
        assert enumerate_language(g, K, EnumerationMethod.CYK) == sample
