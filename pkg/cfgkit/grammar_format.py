"""
Grammar text interchange format
Parses grammar files with lark and renders grammars back to canonical text
"""
import logging
import os
import threading
from typing import Any, Dict, List, Optional, Set, Tuple

from lark import Lark, Transformer
from lark.exceptions import UnexpectedCharacters, UnexpectedInput, UnexpectedToken

from .errors import GrammarSyntaxError
from .grammar_core import EMPTY_TOKEN, Base, Grammar, Rule, Symbol, Terminal, ensure_valid, symbol_text

logger = logging.getLogger(__name__)

_GRAMMAR_PATH = os.path.join(os.path.dirname(__file__), 'grammar_file.lark')

# Lazy parser initialization
_parser: Optional[Lark] = None
_parser_lock = threading.Lock()


def get_parser() -> Lark:
    """Get or create the grammar-file parser"""
    global _parser
    with _parser_lock:
        if _parser is None:
            with open(_GRAMMAR_PATH, 'r', encoding='utf-8') as f:
                # The basic lexer retypes keyword-shaped tokens everywhere, not only where a keyword is expected
                _parser = Lark(f.read(), start='document', parser='lalr', lexer='basic')
    return _parser


class _DocumentBuilder(Transformer):
    """Turns the parse tree into (kind, ...) entries"""

    def start_decl(self, items: List[Any]) -> Tuple[str, str]:
        return ('start', str(items[0]))

    def nonterminals_decl(self, items: List[Any]) -> Tuple[str, List[str]]:
        return ('nonterminals', [str(tok) for tok in items])

    def symbols(self, items: List[Any]) -> List[str]:
        return [str(tok) for tok in items]

    def empty(self, items: List[Any]) -> List[str]:
        return []

    def rule(self, items: List[Any]) -> Tuple[str, str, List[List[str]]]:
        return ('rule', str(items[0]), list(items[1:]))

    def document(self, items: List[Any]) -> List[Any]:
        return list(items)


def _describe(error: UnexpectedInput) -> str:
    if isinstance(error, UnexpectedToken):
        if error.token.type == '$END':
            return "unexpected end of input"
        if error.token.type == '_NL':
            return "unexpected end of line"
        return f"unexpected token {str(error.token)!r}"
    if isinstance(error, UnexpectedCharacters):
        return f"unexpected character {error.char!r}"
    return "unexpected end of input"


def parse_grammar(text: str, check: bool = True) -> Grammar:
    """
    Parse grammar text

    The start symbol, every left-hand side and every name on a
    `nonterminals:` line are nonterminals; all other tokens are terminals.

    Args:
        text: Grammar file contents
        check: Raise GrammarValidationError if the result violates an invariant

    Returns:
        Parsed grammar (all nonterminals are Base names)

    Raises:
        GrammarSyntaxError: With line and column of the first offending token
    """
    try:
        tree = get_parser().parse(text)
    except UnexpectedInput as e:
        line: Optional[int] = getattr(e, 'line', None)
        column: Optional[int] = getattr(e, 'column', None)
        if line is None or line < 0 or column is None or column < 0:
            line = column = None
        raise GrammarSyntaxError(_describe(e), line, column) from e

    entries = _DocumentBuilder().transform(tree)
    start_name = entries[0][1]
    declared = {start_name}
    rule_entries = []
    for entry in entries[1:]:
        if entry[0] == 'nonterminals':
            declared.update(entry[1])
        else:
            declared.add(entry[1])
            rule_entries.append(entry)

    def to_symbol(name: str) -> Symbol:
        return Base(name) if name in declared else Terminal(name)

    rules = [
        Rule(Base(lhs), tuple(to_symbol(name) for name in alternative))
        for _, lhs, alternatives in rule_entries
        for alternative in alternatives
    ]
    g = Grammar.build(Base(start_name), rules, nonterminals=[Base(name) for name in declared])
    logger.debug(f"Parsed grammar: {g.summary()}")
    if check:
        ensure_valid(g)
    return g


def load_grammar(path: str, check: bool = True) -> Grammar:
    """Read and parse a grammar file"""
    with open(path, 'r', encoding='utf-8') as f:
        return parse_grammar(f.read(), check=check)


def _symbol_rank(sym: Symbol) -> Tuple[int, str]:
    # Source names keep their token ahead of generated nonterminals
    if isinstance(sym, Terminal):
        return 0, repr(sym)
    if isinstance(sym, Base):
        return 1, repr(sym)
    return 2, repr(sym)


def token_names(g: Grammar) -> Dict[Symbol, str]:
    """
    Assign every symbol of a grammar a distinct printable token

    Symbols take their flattened text. When distinct symbols flatten to the
    same text, the first by rank keeps it and the others get the shortest
    run of trailing primes that no symbol of the grammar already uses.
    """
    symbols = set(g.nonterminals) | set(g.terminals) | set(g.symbols())
    by_text: Dict[str, List[Symbol]] = {}
    for sym in symbols:
        by_text.setdefault(symbol_text(sym), []).append(sym)

    taken: Set[str] = set(by_text)
    names: Dict[Symbol, str] = {}
    for text in sorted(by_text):
        first, *clashing = sorted(by_text[text], key=_symbol_rank)
        names[first] = text
        for sym in clashing:
            candidate = text + "'"
            while candidate in taken:
                candidate += "'"
            taken.add(candidate)
            names[sym] = candidate
            logger.debug(f"Renamed {sym!r} to {candidate!r}: {text!r} is already in use")
    return names


def render_grammar(g: Grammar) -> str:
    """
    Render a grammar as canonical text

    One rule per line, sorted by rendered lhs then rhs. Nonterminals without
    rules (other than the start) are declared on a `nonterminals:` line so
    re-parsing does not mistake them for terminals. Tokens come from
    token_names, so distinct symbols never print alike.
    """
    names = token_names(g)

    def render_form(form: Tuple[Symbol, ...]) -> str:
        return " ".join(names[sym] for sym in form) if form else EMPTY_TOKEN

    lines = [f"start: {names[g.start]}"]

    with_rules = {rule.lhs for rule in g.rules}
    extras = sorted(names[nt] for nt in g.nonterminals if nt not in with_rules and nt != g.start)
    if extras:
        lines.append("nonterminals: " + " ".join(extras))

    rendered = sorted((names[rule.lhs], render_form(rule.rhs)) for rule in g.rules)
    lines.extend(f"{lhs} -> {rhs}" for lhs, rhs in rendered)
    return "\n".join(lines) + "\n"
