"""
Bounded language equivalence, emptiness and empty-sentence checks
"""
import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional

from .derivation import enumerate_language, sentence_key
from .grammar_core import Grammar, Sentence, ensure_valid, form_text
from .simplification import nullable_set, useful_set

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EquivalenceVerdict:
    """Either equal, or the smallest sentence produced by only one side (1 or 2)"""
    equal: bool
    counterexample: Optional[Sentence] = None
    side: Optional[int] = None

    def describe(self) -> str:
        if self.equal:
            return "equal"
        return f"counterexample: {self.side} {form_text(self.counterexample or ())}"

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary"""
        return {
            'equal': self.equal,
            'counterexample': None if self.counterexample is None else [t.name for t in self.counterexample],
            'side': self.side,
        }


def bounded_equiv(g1: Grammar, g2: Grammar, max_len: int) -> EquivalenceVerdict:
    """
    Compare two languages on every sentence of length at most max_len

    Unbounded equivalence of context-free grammars is undecidable; equal
    here only means no difference up to the bound.

    Args:
        g1: First grammar
        g2: Second grammar
        max_len: Length bound

    Returns:
        EquivalenceVerdict; a counterexample is the length-lexicographically
        smallest sentence in the symmetric difference
    """
    ensure_valid(g1)
    ensure_valid(g2)
    sample1 = enumerate_language(g1, max_len)
    sample2 = enumerate_language(g2, max_len)
    difference = sample1.sentences ^ sample2.sentences
    if not difference:
        return EquivalenceVerdict(True)

    witness = min(difference, key=sentence_key)
    side = 1 if witness in sample1 else 2
    logger.debug(f"Languages differ at {form_text(witness)!r} (side {side})")
    return EquivalenceVerdict(False, witness, side)


def non_empty(g: Grammar) -> bool:
    """True iff the grammar generates at least one sentence (possibly ε)"""
    ensure_valid(g)
    return g.start in useful_set(g)


def generates_empty(g: Grammar) -> bool:
    """True iff the empty sentence is in the language"""
    ensure_valid(g)
    return g.start in nullable_set(g)
