"""
Hypothesis strategies: small random grammars, sentential forms and derivations

Grammars have at most 4 nonterminals (A..D, start A), 3 terminals (a..c),
8 rules and right-hand sides of length at most 3. token_grammars draws
random token names instead, for the text format.
"""
from typing import Tuple

from hypothesis import strategies as st

from cfgkit.derivation import DerivationStep, DerivationTrace, apply_step
from cfgkit.grammar_core import (
    Base,
    FreshStart,
    Grammar,
    Group,
    Lifted1,
    Lifted2,
    Rule,
    SententialForm,
    Terminal,
    is_nonterminal,
)
from cfgkit.simplification import useful_set
from cfgkit.utils.validators import validate_token

NONTERMINALS = [Base(name) for name in "ABCD"]
TERMINALS = [Terminal(name) for name in "abc"]

# Characters of generated tokens, so random names can clash with them
TOKEN_ALPHABET = "aSb%@[].'0"
TOKENS = st.one_of(
    st.sampled_from(["S", "a", "S%0", "S@1", "S@2", "[a]", "[a.b]", "a.b"]),
    st.text(alphabet=TOKEN_ALPHABET, min_size=1, max_size=4),
).filter(lambda name: validate_token(name)[0])


@st.composite
def grammars(draw, max_nonterminals: int = 4, max_terminals: int = 3, max_rules: int = 8, max_rhs: int = 3):
    nonterminals = NONTERMINALS[: draw(st.integers(1, max_nonterminals))]
    terminals = TERMINALS[: draw(st.integers(1, max_terminals))]
    symbols = st.sampled_from(nonterminals + terminals)
    rules = draw(
        st.lists(
            st.builds(Rule, st.sampled_from(nonterminals), st.lists(symbols, max_size=max_rhs).map(tuple)),
            max_size=max_rules,
        )
    )
    return Grammar.build(nonterminals[0], rules, nonterminals=nonterminals, terminals=terminals)


@st.composite
def non_empty_grammars(draw):
    """Random grammars whose start symbol derives at least one sentence"""
    g = draw(grammars(max_rules=7))
    if g.start in useful_set(g):
        return g
    base_case = tuple(draw(st.lists(st.sampled_from(sorted(g.terminals, key=str)), max_size=3)))
    return Grammar.build(g.start, set(g.rules) | {Rule(g.start, base_case)}, g.nonterminals, g.terminals)


def forms(g: Grammar, max_size: int = 3):
    """Sentential forms over a grammar's symbols"""
    symbols = sorted(g.nonterminals, key=str) + sorted(g.terminals, key=str)
    return st.lists(st.sampled_from(symbols), max_size=max_size).map(tuple)


def draw_trace(data, g: Grammar, form: SententialForm, max_steps: int = 6) -> Tuple[DerivationTrace, SententialForm]:
    """Random walk of valid derivation steps; returns the trace and the form it reaches"""
    steps = []
    current = tuple(form)
    for _ in range(data.draw(st.integers(0, max_steps))):
        moves = [
            (position, rule)
            for position, sym in enumerate(current)
            if is_nonterminal(sym)
            for rule in g.rules_for(sym)
        ]
        if not moves:
            break
        position, rule = data.draw(st.sampled_from(moves))
        current = apply_step(g, current, position, rule)
        steps.append(DerivationStep(position, rule))
    return DerivationTrace(steps), current


@st.composite
def token_grammars(draw, max_rules: int = 6, max_rhs: int = 3):
    """
    Valid grammars over random token names mixed with generated identities

    Distinct symbols here often flatten to the same text, e.g. Terminal("S%0")
    next to FreshStart(0) or Terminal("[a]") next to Group((Terminal("a"),)).
    """
    bases = [Base(name) for name in draw(st.lists(TOKENS, min_size=1, max_size=3, unique=True))]
    terminals = [Terminal(name) for name in draw(st.lists(TOKENS, min_size=1, max_size=3, unique=True))]
    generated = [
        FreshStart(0),
        Lifted1(bases[0]),
        Lifted2(bases[-1]),
        Group((terminals[0],)),
        Group((bases[0], terminals[-1])),
    ]
    nonterminals = bases + draw(st.lists(st.sampled_from(generated), max_size=3, unique=True))
    symbols = st.sampled_from(nonterminals + terminals)
    rules = draw(
        st.lists(
            st.builds(Rule, st.sampled_from(nonterminals), st.lists(symbols, max_size=max_rhs).map(tuple)),
            max_size=max_rules,
        )
    )
    start = draw(st.sampled_from(nonterminals))
    return Grammar.build(start, rules, nonterminals=nonterminals, terminals=terminals)
