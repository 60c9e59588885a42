"""Brute-force oracles and the cross-check harness behind ``precedent-dsa oracle``.

Every oracle here recomputes a result from its definition by exhaustive
enumeration, sharing no code path with the fast implementation it checks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable

from . import dsa, explain, reason
from ._subsets import powerset
from .aa import is_well_founded
from .core import (
    Case,
    CaseBase,
    FactorUniverse,
    InconsistencyPair,
    Side,
    base_prefers,
    inconsistencies,
)
from .errors import CapExceededError

ORACLE_CAP = reason.ORACLE_CAP


def _check_universe(cb: CaseBase) -> None:
    if len(cb.universe) > ORACLE_CAP:
        raise CapExceededError("factor universe", len(cb.universe), ORACLE_CAP)


def inconsistencies_bruteforce(cb: CaseBase) -> frozenset[InconsistencyPair]:
    """Double loop over every pro-plaintiff and pro-defendant reason set."""
    _check_universe(cb)
    u = cb.universe
    found = set()
    for p in powerset(u.names(Side.PLAINTIFF)):
        rp = u.reason_set(p, Side.PLAINTIFF)
        for d in powerset(u.names(Side.DEFENDANT)):
            rd = u.reason_set(d, Side.DEFENDANT)
            if base_prefers(cb, rp, rd) and base_prefers(cb, rd, rp):
                found.add(InconsistencyPair(tuple(p), tuple(d)))
    return frozenset(found)


def _settles(cb: CaseBase, ids: frozenset[str], knowledge) -> Side | None:
    sub = cb.restrict(ids)
    x = cb.situation(knowledge)
    pi, delta = x.project(Side.PLAINTIFF), x.project(Side.DEFENDANT)
    forward = base_prefers(sub, delta, pi)
    backward = base_prefers(sub, pi, delta)
    if forward and not backward:
        return Side.PLAINTIFF
    if backward and not forward:
        return Side.DEFENDANT
    return None


def max_subbases_bruteforce(cb: CaseBase, knowledge) -> tuple[frozenset[str], ...]:
    """Inclusion-maximal conclusive subsets, found by trying all ``2^|cb|`` subsets."""
    conclusive = [ids for ids in powerset(cb.ids) if _settles(cb, ids, knowledge)]
    maximal = [g for g in conclusive if not any(g < other for other in conclusive)]
    return tuple(sorted(maximal, key=sorted))


def random_universe(rng: random.Random, max_factors: int = 6) -> FactorUniverse:
    n = rng.randint(1, max_factors)
    sides = [rng.choice(list(Side)) for _ in range(n)]
    return FactorUniverse.of(
        [f"p{i}" for i, s in enumerate(sides) if s is Side.PLAINTIFF],
        [f"d{i}" for i, s in enumerate(sides) if s is Side.DEFENDANT],
    )


def random_case_base(
    rng: random.Random, universe: FactorUniverse | None = None, max_factors: int = 6, max_cases: int = 4
) -> CaseBase:
    """A random valid case base: arbitrary facts, outcome, and premise drawn from the winning side."""
    universe = universe or random_universe(rng, max_factors)
    names = sorted(universe.names())
    cases = []
    for i in range(rng.randint(0, max_cases)):
        facts = [n for n in names if rng.random() < 0.5]
        outcome = rng.choice(list(Side))
        winners = [n for n in facts if universe.side_of(n) is outcome]
        premise = [n for n in winners if rng.random() < 0.6]
        cases.append(Case.build(universe, f"c{i + 1}", facts, premise, outcome))
    return CaseBase(universe, tuple(cases))


def random_facts(rng: random.Random, cb: CaseBase) -> frozenset[str]:
    return frozenset(n for n in sorted(cb.universe.names()) if rng.random() < 0.6)


@dataclass(frozen=True)
class Finding:
    check: str
    detail: str


def check_instance(cb: CaseBase, facts: Iterable[str]) -> list[Finding]:
    """Run every cross-check on one (case base, fact situation) instance."""
    _check_universe(cb)
    x = cb.situation(facts)
    findings: list[Finding] = []

    if inconsistencies(cb) != inconsistencies_bruteforce(cb):
        findings.append(Finding("inconsistencies", "interval enumeration differs from double loop"))

    verdicts = {}
    for s in Side:
        fast, slow = reason.permitted(cb, x, s), reason.permitted_oracle(cb, x, s)
        if fast != slow:
            findings.append(Finding("permitted", f"{s}: reduction={fast} definition={slow}"))
        verdicts[s] = reason.obligated(cb, x, s)
    decided = reason.decide(cb, x)
    permitted_sides = [s for s in Side if reason.permitted(cb, x, s)]
    if not permitted_sides or sum(verdicts.values()) > 1:
        findings.append(Finding("trichotomy", f"permitted={permitted_sides}"))
    if decided.obligated is not next((s for s in Side if verdicts[s]), None):
        findings.append(Finding("trichotomy", f"decide gave {decided}"))

    for chi in powerset(x.members):
        fast = dsa.max_conclusive_subbases(cb, chi)
        slow = max_subbases_bruteforce(cb, chi)
        if fast != slow:
            findings.append(
                Finding("max-subbases", f"knowledge {sorted(chi)}: fast={fast} brute={slow}")
            )
        if len(fast) > 2:
            findings.append(Finding("max-subbases", f"knowledge {sorted(chi)}: {len(fast)} > 2"))

    fw = dsa.build_framework(x, cb)
    if not is_well_founded(fw.aa):
        findings.append(Finding("acyclic", "attack graph has a cycle"))
    grounded = fw.grounded
    found = {s: explain.explanations(x, cb, s, framework=fw) for s in Side}
    for s in Side:
        at_x = {a.state for a in fw.arguments if a.knowledge == x.members}
        by_states = s in at_x and s.opposite not in at_x
        if by_states != verdicts[s]:
            findings.append(Finding("argument-states", f"{s}: obligated={verdicts[s]} arguments={by_states}"))
        by_extension = bool(grounded) and grounded == frozenset(fw.with_state(s))
        if by_extension != verdicts[s]:
            findings.append(Finding("grounded-extension", f"{s}: obligated={verdicts[s]} extension={by_extension}"))
        by_explanations = bool(found[s]) and not found[s.opposite]
        if by_explanations != verdicts[s]:
            findings.append(
                Finding("explanations", f"{s}: obligated={verdicts[s]} explanations={by_explanations}")
            )
    return findings


def minimize(cb: CaseBase, facts: frozenset[str], check: str) -> tuple[CaseBase, frozenset[str]]:
    """Greedily drop cases, then facts, while ``check`` keeps failing."""

    def fails(base: CaseBase, x: frozenset[str]) -> bool:
        return any(f.check == check for f in check_instance(base, x))

    changed = True
    while changed:
        changed = False
        for case in cb.cases:
            smaller = cb.restrict(cb.ids - {case.id})
            if fails(smaller, facts):
                cb, changed = smaller, True
                break
        for name in sorted(facts):
            if fails(cb, facts - {name}):
                facts, changed = facts - {name}, True
                break
    return cb, facts


@dataclass
class OracleReport:
    instances: int = 0
    failures: list[tuple[Finding, CaseBase, frozenset[str]]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def run_oracle(cb: CaseBase, facts: Iterable[str], trials: int = 0, seed: int = 0) -> OracleReport:
    """Check the given instance, then ``trials`` random ones over the same universe.

    The first failure of each check is minimized and kept for reporting.
    """
    _check_universe(cb)
    report = OracleReport()
    instances = [(cb, frozenset(facts))]
    rng = random.Random(seed)
    for _ in range(trials):
        base = random_case_base(rng, cb.universe, max_cases=max(4, len(cb)))
        instances.append((base, random_facts(rng, base)))
    seen: set[str] = set()
    for base, x in instances:
        report.instances += 1
        for finding in check_instance(base, x):
            if finding.check in seen:
                continue
            seen.add(finding.check)
            small_cb, small_x = minimize(base, x, finding.check)
            report.failures.append((finding, small_cb, small_x))
    return report
