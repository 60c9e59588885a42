from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import strategies as st

from precedent_dsa.core import Case, CaseBase, FactorUniverse, Side, load_case_base

FIXTURES = Path(__file__).parent / "fixtures"
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def gamma1() -> CaseBase:
    return load_case_base(FIXTURES / "fiscal_domicile.json")


@pytest.fixture(scope="session")
def x1() -> frozenset[str]:
    return frozenset({"short", "house", "job"})


@st.composite
def universes(draw, max_factors: int = 6) -> FactorUniverse:
    n = draw(st.integers(1, max_factors))
    sides = draw(st.lists(st.sampled_from(list(Side)), min_size=n, max_size=n))
    return FactorUniverse.of(
        [f"p{i}" for i, s in enumerate(sides) if s is Side.PLAINTIFF],
        [f"d{i}" for i, s in enumerate(sides) if s is Side.DEFENDANT],
    )


@st.composite
def case_bases(draw, max_factors: int = 6, max_cases: int = 4, universe=None) -> CaseBase:
    universe = universe or draw(universes(max_factors))
    names = sorted(universe.names())
    cases = []
    for i in range(draw(st.integers(0, max_cases))):
        facts = draw(st.sets(st.sampled_from(names)))
        outcome = draw(st.sampled_from(list(Side)))
        winners = sorted(n for n in facts if universe.side_of(n) is outcome)
        premise = draw(st.sets(st.sampled_from(winners))) if winners else set()
        cases.append(Case.build(universe, f"c{i + 1}", facts, premise, outcome))
    return CaseBase(universe, tuple(cases))


@st.composite
def instances(draw, max_factors: int = 6, max_cases: int = 4):
    cb = draw(case_bases(max_factors, max_cases))
    facts = draw(st.sets(st.sampled_from(sorted(cb.universe.names()))))
    return cb, frozenset(facts)
