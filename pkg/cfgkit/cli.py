"""
Command-line front end

Reads grammar files, runs one transformation or check and writes the result
to stdout. Logging goes to stderr so stdout stays byte-deterministic.

Exit codes: 0 success (including negative verdicts), 1 file, syntax or
validation error, 2 precondition error.
"""
import argparse
import logging
import sys
from typing import Callable, Dict, List, Optional

from .closure_ops import concat, star, union
from .cnf import find_cnf_violation, is_cnf, is_cnf_with_empty_rule, to_cnf
from .config import get_config
from .derivation import SearchStatus, cyk_member, derives_within, enumerate_language, format_trace
from .equivalence import bounded_equiv, non_empty
from .errors import CfgkitError, GrammarSyntaxError, GrammarValidationError, PreconditionError
from .grammar_core import form_text, terminals_of, validate
from .grammar_format import load_grammar, render_grammar
from .simplification import SimplificationPass, check_predicates, get_pass
from .utils.validators import validate_bound

logger = logging.getLogger(__name__)


def _flag(value: bool) -> str:
    return "true" if value else "false"


def _bound(text: str) -> int:
    """argparse type for non-negative length and step bounds"""
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid bound: {text!r}") from None
    is_valid, message = validate_bound(value)
    if not is_valid:
        raise argparse.ArgumentTypeError(message)
    return value


def cmd_validate(args: argparse.Namespace) -> int:
    report = validate(load_grammar(args.grammar, check=False))
    if report.ok:
        print("ok")
        return 0
    for violation in report.violations:
        print(violation)
    return 1


def cmd_union(args: argparse.Namespace) -> int:
    print(render_grammar(union(load_grammar(args.grammar1), load_grammar(args.grammar2))), end="")
    return 0


def cmd_concat(args: argparse.Namespace) -> int:
    print(render_grammar(concat(load_grammar(args.grammar1), load_grammar(args.grammar2))), end="")
    return 0


def cmd_star(args: argparse.Namespace) -> int:
    print(render_grammar(star(load_grammar(args.grammar))), end="")
    return 0


def cmd_simplify(args: argparse.Namespace) -> int:
    simplification = get_pass(SimplificationPass(args.pass_name))
    print(render_grammar(simplification(load_grammar(args.grammar))), end="")
    return 0


def cmd_cnf(args: argparse.Namespace) -> int:
    print(render_grammar(to_cnf(load_grammar(args.grammar))), end="")
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    g = load_grammar(args.grammar)
    for name, value in check_predicates(g).to_dict().items():
        print(f"{name}: {_flag(value)}")
    print(f"is_cnf: {_flag(is_cnf(g))}")
    print(f"is_cnf_with_empty_rule: {_flag(is_cnf_with_empty_rule(g))}")
    return 0


def cmd_enum(args: argparse.Namespace) -> int:
    sample = enumerate_language(load_grammar(args.grammar), args.max_len)
    for sentence in sample.ordered():
        print(form_text(sentence))
    return 0


def cmd_member(args: argparse.Namespace) -> int:
    g = load_grammar(args.grammar)
    w = terminals_of(args.tokens)
    if not non_empty(g):
        print("no")
        return 0
    normal_form = g if find_cnf_violation(g) is None else to_cnf(g)
    print("yes" if cyk_member(normal_form, w) else "no")
    return 0


def cmd_equiv(args: argparse.Namespace) -> int:
    verdict = bounded_equiv(load_grammar(args.grammar1), load_grammar(args.grammar2), args.max_len)
    print(verdict.describe())
    return 0


def cmd_derive(args: argparse.Namespace) -> int:
    g = load_grammar(args.grammar)
    start_form = (g.start,)
    result = derives_within(g, start_form, terminals_of(args.tokens), args.max_steps)
    if result.status is SearchStatus.FOUND and result.trace is not None:
        for line in format_trace(start_form, result.trace):
            print(line)
    elif result.status is SearchStatus.BOUND_EXCEEDED:
        print("search bound exceeded")
    else:
        print(f"no derivation within {args.max_steps} steps")
    return 0


def build_parser() -> argparse.ArgumentParser:
    """Create the argument parser with one subcommand per operation"""
    config = get_config()
    parser = argparse.ArgumentParser(
        prog="cfgkit",
        description="Context-free grammar toolkit: closure constructions, simplification, CNF and bounded checks",
    )
    parser.add_argument(
        "--log-level",
        type=str.upper,
        choices=config.LOG_LEVELS,
        default=None,
        help="Logging level for stderr diagnostics (default from config)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="Report structural invariant violations")
    p.add_argument("grammar", help="Path to a grammar file")

    for name, help_text in (("union", "Union of two grammars"), ("concat", "Concatenation of two grammars")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("grammar1", help="Path to the first grammar file")
        p.add_argument("grammar2", help="Path to the second grammar file")

    p = sub.add_parser("star", help="Kleene star of a grammar")
    p.add_argument("grammar", help="Path to a grammar file")

    p = sub.add_parser("simplify", help="Run one simplification pass or the whole pipeline")
    p.add_argument("grammar", help="Path to a grammar file")
    p.add_argument(
        "--pass",
        dest="pass_name",
        choices=[kind.value for kind in SimplificationPass],
        default=SimplificationPass.ALL.value,
        help="Pass to run (default: all)",
    )

    p = sub.add_parser("cnf", help="Chomsky Normal Form of a grammar")
    p.add_argument("grammar", help="Path to a grammar file")

    p = sub.add_parser("check", help="Print structural predicate flags")
    p.add_argument("grammar", help="Path to a grammar file")

    p = sub.add_parser("enum", help="List every sentence up to a length bound")
    p.add_argument("grammar", help="Path to a grammar file")
    p.add_argument("--max-len", type=_bound, default=config.DEFAULT_MAX_LEN, help="Length bound")

    p = sub.add_parser("member", help="Decide membership of a sentence")
    p.add_argument("grammar", help="Path to a grammar file")
    p.add_argument("tokens", nargs="*", help="Terminal tokens of the sentence (none for ε)")

    p = sub.add_parser("equiv", help="Compare two languages up to a length bound")
    p.add_argument("grammar1", help="Path to the first grammar file")
    p.add_argument("grammar2", help="Path to the second grammar file")
    p.add_argument("--max-len", type=_bound, default=config.DEFAULT_MAX_LEN, help="Length bound")

    p = sub.add_parser("derive", help="Find a shortest derivation of a sentence")
    p.add_argument("grammar", help="Path to a grammar file")
    p.add_argument("tokens", nargs="*", help="Terminal tokens of the sentence (none for ε)")
    p.add_argument("--max-steps", type=_bound, default=config.DEFAULT_MAX_STEPS, help="Maximum derivation length")

    return parser


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "validate": cmd_validate,
    "union": cmd_union,
    "concat": cmd_concat,
    "star": cmd_star,
    "simplify": cmd_simplify,
    "cnf": cmd_cnf,
    "check": cmd_check,
    "enum": cmd_enum,
    "member": cmd_member,
    "equiv": cmd_equiv,
    "derive": cmd_derive,
}


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one cfgkit command

    Args:
        argv: Arguments without the program name; defaults to sys.argv[1:]

    Returns:
        Process exit code
    """
    args = build_parser().parse_args(argv)
    config = get_config()
    logging.basicConfig(
        stream=sys.stderr,
        level=args.log_level or config.LOG_LEVEL,
        format=config.LOG_FORMAT,
    )
    logger.debug(f"Running command: {args.command}")

    try:
        return COMMANDS[args.command](args)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (GrammarSyntaxError, GrammarValidationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except PreconditionError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except CfgkitError as e:
        logger.error(f"Unexpected failure: {e}")
        print(f"error: {e}", file=sys.stderr)
        return 1
