"""
Token validation utilities
Checks symbol names against the grammar interchange format
"""
import re
from typing import Optional, Tuple

# Tokens with a fixed meaning in grammar files
RESERVED_TOKENS = frozenset({"->", "|", "%empty", "#", "start:", "nonterminals:"})

_WHITESPACE = re.compile(r'\s')


def validate_token(name: object) -> Tuple[bool, Optional[str]]:
    """
    Validate a terminal or base nonterminal name
    Returns: (is_valid: bool, error_message: str or None)
    """
    if not isinstance(name, str) or not name:
        return False, "Token is required"

    if _WHITESPACE.search(name):
        return False, "Token must not contain whitespace"

    if name in RESERVED_TOKENS:
        return False, f"'{name}' is a reserved token"

    if '|' in name or '#' in name:
        return False, "Token must not contain '|' or '#'"

    return True, None


def validate_generation(generation: object) -> Tuple[bool, Optional[str]]:
    """
    Validate a fresh-start generation index
    Returns: (is_valid: bool, error_message: str or None)
    """
    if isinstance(generation, bool) or not isinstance(generation, int):
        return False, "Generation must be an integer"

    if generation < 0:
        return False, "Generation must be non-negative"

    return True, None


def validate_bound(bound: object, label: str = "Bound") -> Tuple[bool, Optional[str]]:
    """
    Validate a length or step bound
    Returns: (is_valid: bool, error_message: str or None)
    """
    if isinstance(bound, bool) or not isinstance(bound, int):
        return False, f"{label} must be an integer"

    if bound < 0:
        return False, f"{label} must be non-negative"

    return True, None
