import pytest
from hypothesis import HealthCheck, settings, strategies as st

from oclam.errors import GiveUp
from oclam.gen import GenConfig, Generator

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("default")


def closed_term(seed, max_size=30, **kw):
    """A generated closed term and its type, or None when the generator gives up."""
    g = Generator(GenConfig(seed=seed, max_size=max_size, **kw))
    for _ in range(16):
        A = g.type_()
        try:
            return g.term({}, {}, A), A
        except GiveUp:
            continue
    return None


seeds = st.integers(min_value=0, max_value=2**32 - 1)


@pytest.fixture
def H():
    from oclam.concrete import parse_term
    from oclam.semiring import CRAT
    return parse_term(r"\x:I & I. fst(x, y:I. let1(y, pair(star(1), star(1)))) "
                      r"<+> snd(x, z:I. let1(z, pair(star(1), star(-1))))", CRAT)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
