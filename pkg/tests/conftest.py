from __future__ import annotations

import random
from functools import lru_cache

import pytest
from hypothesis import strategies as st

from semicov.covariety import validate
from semicov.frobenius import bf_family
from semicov.oracle import brute_enumerate
from semicov.semigroup import from_generators, parse


@lru_cache(maxsize=None)
def all_with_frobenius(f: int):
    """Sorted list of every semigroup with Frobenius number f (oracle-generated)."""
    return sorted(brute_enumerate(f))


def semigroups(max_f: int = 20):
    """Hypothesis strategy: uniform over F, then uniform within A(F)."""
    return st.integers(1, max_f).flatmap(lambda f: st.sampled_from(all_with_frobenius(f)))


def random_semigroups(count: int, max_f: int = 20, seed: int = 0):
    rng = random.Random(seed)
    return [rng.choice(all_with_frobenius(rng.randint(1, max_f))) for _ in range(count)]


S1_GENS = (5, 7, 9)
S2_GENS = (4, 6, 9)


@pytest.fixture
def s1():
    return from_generators(S1_GENS)


@pytest.fixture
def s2():
    return from_generators(S2_GENS)


@lru_cache(maxsize=None)
def _two_multiplicity_cov():
    family = [s for s in bf_family(11, check=False) if s.multiplicity >= 6]
    family += [parse("{0,5,6,7,10,->}"), parse("{0,5,8,9,10,->}"), parse("{0,5,10,->}")]
    return validate(family)


@pytest.fixture
def two_multiplicity_cov():
    """Semigroups with m >= 6 and F <= 11, plus three members of multiplicity 5."""
    return _two_multiplicity_cov()


# -- acceptance summary ---------------------------------------------------

_ACCEPTANCE: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _ACCEPTANCE.append((report.nodeid.split("::")[-1], report.outcome.upper()))
    elif "test_acceptance.py" in report.nodeid and report.when == "setup" and report.outcome != "passed":
        _ACCEPTANCE.append((report.nodeid.split("::")[-1], report.outcome.upper()))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if outcome == 'PASSED' else 'FAIL'}  {name}")
