"""
Shared fixtures for the cfgkit test suite
"""
import os

os.environ.setdefault("CFGKIT_ENV", "testing")

import pytest  # noqa: E402
from hypothesis import HealthCheck, settings  # noqa: E402

from cfgkit.cache_service import get_cache  # noqa: E402
from cfgkit.grammar_format import parse_grammar  # noqa: E402

settings.register_profile(
    "cfgkit",
    deadline=None,
    suppress_health_check=[
        HealthCheck.too_slow,
        HealthCheck.data_too_large,
        HealthCheck.filter_too_much,
        HealthCheck.function_scoped_fixture,
    ],
)
settings.load_profile("cfgkit")

GRAMMARS_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "data", "grammars")


@pytest.fixture(autouse=True)
def clear_normal_form_cache():
    get_cache().clear()
    yield
    get_cache().clear()


@pytest.fixture
def grammar_path():
    """Path of a sample grammar file under data/grammars"""

    def _path(name: str) -> str:
        return os.path.join(GRAMMARS_DIR, name)

    return _path


@pytest.fixture
def g1():
    """a*b: S' -> a S' | b"""
    return parse_grammar("start: S'\nS' -> a S' | b\n")


@pytest.fixture
def epsilon_only():
    return parse_grammar("start: S\nS -> %empty\n")


@pytest.fixture
def no_rules():
    return parse_grammar("start: S\n")


@pytest.fixture
def cnf_example():
    return parse_grammar("start: S'\nS' -> X Y Z d\nX -> a\nY -> b\nZ -> c\n")


@pytest.fixture
def nullable_example():
    return parse_grammar(
        "start: X\n"
        "X -> a A b B c C\n"
        "A -> a | %empty\n"
        "B -> b | %empty\n"
        "C -> c | %empty\n"
    )
