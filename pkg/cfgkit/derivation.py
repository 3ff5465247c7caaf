"""
Derivation semantics

Single derivation steps, replayable traces and the trace algebra
(concatenation, context embedding, parallel composition, splitting), bounded
derivation search, language enumeration over the normalized grammar and CYK
membership.
"""
import itertools
import logging
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Deque, Dict, FrozenSet, Iterable, Iterator, List, Optional, Set, Tuple

from .cnf import find_cnf_violation, to_cnf
from .config import get_config
from .errors import DerivationError, DerivationErrorKind, InvalidBoundError, NotInCnfError, PreconditionError
from .grammar_core import (
    Grammar,
    Nonterminal,
    Rule,
    Sentence,
    SententialForm,
    Terminal,
    ensure_valid,
    form_text,
    is_nonterminal,
    is_terminal,
)
from .simplification import useful_set
from .utils.validators import validate_bound

logger = logging.getLogger(__name__)


def _check_bound(bound: int, label: str) -> None:
    is_valid, message = validate_bound(bound, label)
    if not is_valid:
        raise InvalidBoundError(message)


@dataclass(frozen=True)
class DerivationStep:
    """Replace the nonterminal at `position` by the right-hand side of `rule`"""
    position: int
    rule: Rule

    def shifted(self, offset: int) -> "DerivationStep":
        return DerivationStep(self.position + offset, self.rule)

    def __str__(self) -> str:
        return f"{self.position}: {self.rule}"


@dataclass(frozen=True)
class DerivationTrace:
    """Ordered derivation steps; positions index the form produced by the preceding steps"""
    steps: Tuple[DerivationStep, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, 'steps', tuple(self.steps))

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self) -> Iterator[DerivationStep]:
        return iter(self.steps)

    def __add__(self, other: "DerivationTrace") -> "DerivationTrace":
        return DerivationTrace(self.steps + other.steps)

    def shifted(self, offset: int) -> "DerivationTrace":
        """The same derivation run inside a context with `offset` symbols to its left"""
        return DerivationTrace(tuple(step.shifted(offset) for step in self.steps))


def sentence_key(w: Sentence) -> Tuple[int, Tuple[str, ...]]:
    """Length-then-lexicographic sort key over terminal names"""
    return len(w), tuple(t.name for t in w)


@dataclass(frozen=True)
class LanguageSample:
    """All sentences of a language up to a length bound"""
    max_len: int
    sentences: FrozenSet[Sentence] = frozenset()

    def __post_init__(self) -> None:
        _check_bound(self.max_len, "Length bound")
        object.__setattr__(self, 'sentences', frozenset(self.sentences))
        if any(len(w) > self.max_len for w in self.sentences):
            raise InvalidBoundError(f"sample holds a sentence longer than {self.max_len}")

    def __contains__(self, w: object) -> bool:
        return w in self.sentences

    def __len__(self) -> int:
        return len(self.sentences)

    def ordered(self) -> List[Sentence]:
        """Sentences in length-lexicographic order"""
        return sorted(self.sentences, key=sentence_key)

    def restricted(self, max_len: int) -> "LanguageSample":
        """The sample cut down to a smaller bound"""
        return LanguageSample(max_len, frozenset(w for w in self.sentences if len(w) <= max_len))


class SearchStatus(Enum):
    FOUND = "found"
    NOT_FOUND = "not found"
    BOUND_EXCEEDED = "bound exceeded"


@dataclass(frozen=True)
class SearchResult:
    """Outcome of a bounded derivation search"""
    status: SearchStatus
    trace: Optional[DerivationTrace] = None
    visited: int = 0

    @property
    def found(self) -> bool:
        return self.status is SearchStatus.FOUND


class EnumerationMethod(Enum):
    """How enumerate_language decides membership over the CNF grammar"""
    TABLE = "table"  # sentences of each length per nonterminal
    CYK = "cyk"      # cyk_member on every candidate string


# ---------------------------------------------------------------------------
# Steps and traces
# ---------------------------------------------------------------------------

def apply_step(g: Grammar, form: SententialForm, position: int, rule: Rule) -> SententialForm:
    """
    Apply one derivation step

    Args:
        g: Grammar the rule must belong to
        form: Current sentential form
        position: Index of the nonterminal occurrence to rewrite
        rule: Rule whose lhs matches that occurrence

    Returns:
        form with form[position] replaced by rule.rhs

    Raises:
        DerivationError: One kind per failed precondition
    """
    if not 0 <= position < len(form):
        raise DerivationError(
            DerivationErrorKind.POSITION_OUT_OF_RANGE, f"position {position} in form of length {len(form)}"
        )
    sym = form[position]
    if not is_nonterminal(sym):
        raise DerivationError(DerivationErrorKind.NOT_A_NONTERMINAL, f"{sym} at position {position}")
    if sym != rule.lhs:
        raise DerivationError(DerivationErrorKind.LHS_MISMATCH, f"{sym} at position {position}, rule {rule}")
    if rule not in g.rules:
        raise DerivationError(DerivationErrorKind.RULE_NOT_IN_GRAMMAR, str(rule))
    return form[:position] + rule.rhs + form[position + 1:]


def replay(g: Grammar, start_form: SententialForm, trace: DerivationTrace) -> SententialForm:
    """
    Fold apply_step over a trace

    Raises:
        DerivationError: The first failing step, tagged with its index
    """
    form = tuple(start_form)
    for index, step in enumerate(trace):
        try:
            form = apply_step(g, form, step.position, step.rule)
        except DerivationError as e:
            raise e.at_step(index) from e
    return form


def concat_traces(t1: DerivationTrace, t2: DerivationTrace) -> DerivationTrace:
    """A trace s1 -> s2 followed by a trace s2 -> s3 is a trace s1 -> s3"""
    return t1 + t2


def embed_trace(trace: DerivationTrace, prefix_len: int) -> DerivationTrace:
    """
    Run a trace s1 -> s2 inside a context: the result is a trace
    s.s1.s' -> s.s2.s' where |s| = prefix_len (the right context needs no shift)
    """
    return trace.shifted(prefix_len)


def parallel_traces(t1: DerivationTrace, t2: DerivationTrace, left_result_len: int) -> DerivationTrace:
    """
    Compose traces s1 -> s2 and s3 -> s4 into a trace s1.s3 -> s2.s4

    Args:
        t1: Trace of the left block
        t2: Trace of the right block
        left_result_len: |s2|, the length of the left block once t1 has run
    """
    return t1 + t2.shifted(left_result_len)


@dataclass(frozen=True)
class TraceSplit:
    """Result of splitting a trace s1.s2 -> s3 into independent halves"""
    left_form: SententialForm
    left_trace: DerivationTrace
    right_form: SententialForm
    right_trace: DerivationTrace

    @property
    def combined_form(self) -> SententialForm:
        return self.left_form + self.right_form


def split_trace(g: Grammar, s1: SententialForm, s2: SententialForm, trace: DerivationTrace) -> TraceSplit:
    """
    Split a derivation of s1.s2 into a derivation of s1 and one of s2

    Each step rewrites a symbol descending either from s1 or from s2; the
    boundary between the two blocks is tracked as the left block grows.

    Returns:
        TraceSplit with left_trace: s1 -> left_form, right_trace: s2 -> right_form
        and left_form + right_form equal to the replay of trace from s1 + s2

    Raises:
        DerivationError: If the trace does not replay from s1 + s2
    """
    left, right = tuple(s1), tuple(s2)
    left_steps: List[DerivationStep] = []
    right_steps: List[DerivationStep] = []
    for index, step in enumerate(trace):
        try:
            if step.position < len(left):
                left = apply_step(g, left, step.position, step.rule)
                left_steps.append(step)
            else:
                local = step.shifted(-len(left))
                right = apply_step(g, right, local.position, local.rule)
                right_steps.append(local)
        except DerivationError as e:
            raise e.at_step(index) from e
    return TraceSplit(left, DerivationTrace(left_steps), right, DerivationTrace(right_steps))


# ---------------------------------------------------------------------------
# Bounded derivation search
# ---------------------------------------------------------------------------

def _count_terminals(form: SententialForm) -> int:
    return sum(1 for sym in form if is_terminal(sym))


def _rebuild_trace(
    parents: Dict[SententialForm, Optional[Tuple[SententialForm, DerivationStep]]], form: SententialForm
) -> DerivationTrace:
    steps: List[DerivationStep] = []
    link = parents[form]
    while link is not None:
        previous, step = link
        steps.append(step)
        link = parents[previous]
    steps.reverse()
    return DerivationTrace(steps)


def derives_within(
    g: Grammar,
    source: SententialForm,
    target: SententialForm,
    max_steps: int,
    cap: Optional[int] = None,
) -> SearchResult:
    """
    Breadth-first search for a shortest derivation source =>* target

    Terminals are never rewritten, so forms holding more terminals than the
    target are dropped; without empty rules forms never shrink, so forms
    longer than the target are dropped too.

    Args:
        g: Grammar
        source: Start form
        target: Form to reach
        max_steps: Maximum trace length
        cap: Maximum number of distinct forms visited; defaults to config DERIVATION_SEARCH_CAP

    Returns:
        SearchResult: FOUND with a shortest trace, NOT_FOUND when no derivation
        of at most max_steps steps exists, BOUND_EXCEEDED when the cap was hit first
    """
    _check_bound(max_steps, "Step bound")
    if cap is None:
        cap = get_config().DERIVATION_SEARCH_CAP
    source, target = tuple(source), tuple(target)

    parents: Dict[SententialForm, Optional[Tuple[SententialForm, DerivationStep]]] = {source: None}
    if source == target:
        return SearchResult(SearchStatus.FOUND, DerivationTrace(), 1)

    target_terminals = _count_terminals(target)
    length_monotone = not any(rule.is_empty for rule in g.rules)
    frontier: List[SententialForm] = [source]

    for _ in range(max_steps):
        next_frontier: List[SententialForm] = []
        for form in frontier:
            for position, sym in enumerate(form):
                if not is_nonterminal(sym):
                    continue
                for rule in g.rules_for(sym):  # type: ignore[arg-type]
                    new_form = form[:position] + rule.rhs + form[position + 1:]
                    if new_form in parents:
                        continue
                    if _count_terminals(new_form) > target_terminals:
                        continue
                    if length_monotone and len(new_form) > len(target):
                        continue
                    parents[new_form] = (form, DerivationStep(position, rule))
                    if new_form == target:
                        trace = _rebuild_trace(parents, new_form)
                        logger.debug(f"Derivation of length {len(trace)} found after {len(parents)} forms")
                        return SearchResult(SearchStatus.FOUND, trace, len(parents))
                    if len(parents) > cap:
                        logger.debug(f"Derivation search exceeded {cap} forms")
                        return SearchResult(SearchStatus.BOUND_EXCEEDED, None, len(parents))
                    next_frontier.append(new_form)
        if not next_frontier:
            break
        frontier = next_frontier

    logger.debug(f"No derivation within {max_steps} steps ({len(parents)} forms)")
    return SearchResult(SearchStatus.NOT_FOUND, None, len(parents))


# ---------------------------------------------------------------------------
# Membership and enumeration
# ---------------------------------------------------------------------------

def cyk_member(g: Grammar, w: Sentence) -> bool:
    """
    Decide start =>* w for a grammar in CNF (optionally with start -> ε)

    Raises:
        NotInCnfError: Carrying the first offending rule
    """
    violation = find_cnf_violation(g)
    if violation is not None:
        raise NotInCnfError(violation)

    w = tuple(w)
    n = len(w)
    if n == 0:
        return Rule(g.start, ()) in g.rules

    by_terminal: Dict[Terminal, Set[Nonterminal]] = {}
    binary: List[Rule] = []
    for rule in g.rules:
        if len(rule.rhs) == 1:
            by_terminal.setdefault(rule.rhs[0], set()).add(rule.lhs)  # type: ignore[arg-type]
        elif len(rule.rhs) == 2:
            binary.append(rule)

    # table[length - 1][i]: nonterminals deriving w[i:i + length]
    table: List[List[Set[Nonterminal]]] = [[set() for _ in range(n - length + 1)] for length in range(1, n + 1)]
    for i, t in enumerate(w):
        table[0][i] = set(by_terminal.get(t, ()))
    for length in range(2, n + 1):
        for i in range(n - length + 1):
            cell = table[length - 1][i]
            for split in range(1, length):
                left = table[split - 1][i]
                right = table[length - split - 1][i + split]
                if not left or not right:
                    continue
                for rule in binary:
                    if rule.rhs[0] in left and rule.rhs[1] in right:
                        cell.add(rule.lhs)
    return g.start in table[n - 1][0]


def _enumerate_by_table(cnf: Grammar, max_len: int) -> Set[Sentence]:
    by_length: List[Dict[Nonterminal, Set[Sentence]]] = [{}]
    for length in range(1, max_len + 1):
        row: Dict[Nonterminal, Set[Sentence]] = {}
        for rule in cnf.rules:
            if length == 1 and len(rule.rhs) == 1:
                row.setdefault(rule.lhs, set()).add(rule.rhs)  # type: ignore[arg-type]
            elif len(rule.rhs) == 2:
                left_nt, right_nt = rule.rhs
                for split in range(1, length):
                    lefts = by_length[split].get(left_nt)  # type: ignore[arg-type]
                    rights = by_length[length - split].get(right_nt)  # type: ignore[arg-type]
                    if lefts and rights:
                        row.setdefault(rule.lhs, set()).update(u + v for u in lefts for v in rights)
        by_length.append(row)
    return {w for row in by_length for w in row.get(cnf.start, ())}


def _enumerate_by_cyk(cnf: Grammar, max_len: int) -> Set[Sentence]:
    alphabet = sorted({sym for rule in cnf.rules for sym in rule.rhs if is_terminal(sym)}, key=str)
    found: Set[Sentence] = set()
    for length in range(1, max_len + 1):
        for candidate in itertools.product(alphabet, repeat=length):
            if cyk_member(cnf, candidate):  # type: ignore[arg-type]
                found.add(candidate)  # type: ignore[arg-type]
    return found


def enumerate_language(
    g: Grammar, max_len: int, method: EnumerationMethod = EnumerationMethod.TABLE
) -> LanguageSample:
    """
    Every sentence of length at most max_len the grammar generates

    The grammar is normalized (simplify, then CNF) first, which makes the
    result complete within the bound even when g has empty or unit rules.

    Args:
        g: Valid grammar
        max_len: Length bound
        method: Membership strategy over the CNF grammar

    Returns:
        LanguageSample with exactly the generated sentences up to max_len
    """
    ensure_valid(g)
    _check_bound(max_len, "Length bound")
    if g.start not in useful_set(g):
        return LanguageSample(max_len)

    cnf = to_cnf(g)
    if method is EnumerationMethod.CYK:
        sentences = _enumerate_by_cyk(cnf, max_len)
    else:
        sentences = _enumerate_by_table(cnf, max_len)
    if Rule(cnf.start, ()) in cnf.rules:
        sentences.add(())

    logger.debug(f"Enumerated {len(sentences)} sentences up to length {max_len} ({method.value})")
    return LanguageSample(max_len, frozenset(sentences))


def bfs_language(g: Grammar, max_len: int) -> LanguageSample:
    """
    Reference enumeration by leftmost sentential-form search

    Only sound when forms never shrink, so the sole empty rule allowed is
    start -> ε with the start absent from every right-hand side (the shape
    simplify produces).

    Raises:
        PreconditionError: If another empty rule exists
    """
    _check_bound(max_len, "Length bound")
    start_empty = Rule(g.start, ())
    for rule in g.sorted_rules():
        if rule.is_empty and rule != start_empty:
            raise PreconditionError(f"length-pruned search needs no empty rule but the start one: {rule}")
    if start_empty in g.rules and any(g.start in rule.rhs for rule in g.rules):
        raise PreconditionError("length-pruned search needs the start symbol absent from every rhs")

    start_form: SententialForm = (g.start,)
    seen: Set[SententialForm] = {start_form}
    queue: Deque[SententialForm] = deque([start_form])
    sentences: Set[Sentence] = set()
    while queue:
        form = queue.popleft()
        position = next((i for i, sym in enumerate(form) if is_nonterminal(sym)), None)
        if position is None:
            sentences.add(form)  # type: ignore[arg-type]
            continue
        for rule in g.rules_for(form[position]):  # type: ignore[arg-type]
            new_form = form[:position] + rule.rhs + form[position + 1:]
            if len(new_form) > max_len or new_form in seen:
                continue
            seen.add(new_form)
            queue.append(new_form)

    logger.debug(f"Reference search visited {len(seen)} forms, found {len(sentences)} sentences")
    return LanguageSample(max_len, frozenset(sentences))


def format_trace(start_form: SententialForm, trace: Iterable[DerivationStep]) -> List[str]:
    """Human-readable lines for a trace: one `position: lhs -> rhs` per step"""
    lines = [form_text(start_form)]
    lines.extend(str(step) for step in trace)
    return lines
