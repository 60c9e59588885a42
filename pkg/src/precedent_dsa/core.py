"""Factors, cases, case bases and the a fortiori priorities they induce.

A case ``<X, U -> s, s>`` makes every reason set ``V`` for ``s`` with
``U <= V`` stronger than every reason set for the other side drawn from
``X``.  Within one side, a strict superset is always stronger.  A case base
is inconsistent when two cross-side reason sets are each stronger than the
other under different cases.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Iterable, Iterator, Mapping

from ._subsets import interval
from .errors import (
    CapExceededError,
    InvariantError,
    UnknownCaseError,
    UnknownFactorError,
    ValidationError,
)

DEFAULT_CAP = 16


class Side(str, Enum):
    PLAINTIFF = "plaintiff"
    DEFENDANT = "defendant"

    @property
    def opposite(self) -> Side:
        return Side.DEFENDANT if self is Side.PLAINTIFF else Side.PLAINTIFF

    def __str__(self) -> str:
        return self.value


def opposite(side: Side) -> Side:
    return side.opposite


def format_names(names: Iterable[str]) -> str:
    """Render a set of names as ``{a, b}`` with lexicographically sorted members."""
    return "{" + ", ".join(sorted(names)) + "}"


@dataclass(frozen=True, order=True)
class Factor:
    name: str
    side: Side

    def __post_init__(self):
        if not isinstance(self.name, str) or not self.name:
            raise InvariantError("factor name must be a non-empty string")
        object.__setattr__(self, "side", Side(self.side))


@dataclass(frozen=True)
class FactorUniverse:
    """The declared finite factor domain, partitioned by side."""

    factors: frozenset[Factor]
    _sides: Mapping[str, Side] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        factors = frozenset(self.factors)
        object.__setattr__(self, "factors", factors)
        sides: dict[str, Side] = {}
        for factor in factors:
            if factor.name in sides:
                raise InvariantError(f"factor declared twice: {factor.name}")
            sides[factor.name] = factor.side
        object.__setattr__(self, "_sides", sides)

    @classmethod
    def of(cls, plaintiff: Iterable[str] = (), defendant: Iterable[str] = ()) -> FactorUniverse:
        return cls(
            frozenset(Factor(n, Side.PLAINTIFF) for n in plaintiff)
            | frozenset(Factor(n, Side.DEFENDANT) for n in defendant)
        )

    def __len__(self) -> int:
        return len(self.factors)

    def __contains__(self, name: object) -> bool:
        return name in self._sides

    def side_of(self, name: str) -> Side:
        try:
            return self._sides[name]
        except KeyError:
            raise UnknownFactorError([name]) from None

    def names(self, side: Side | None = None) -> frozenset[str]:
        if side is None:
            return frozenset(self._sides)
        return frozenset(n for n, s in self._sides.items() if s is side)

    def check(self, names: Iterable[str]) -> frozenset[str]:
        members = frozenset(names)
        unknown = members - self._sides.keys()
        if unknown:
            raise UnknownFactorError(unknown)
        return members

    def situation(self, names: Iterable[str]) -> FactSituation:
        return FactSituation(self.check(names), self)

    def reason_set(self, names: Iterable[str], side: Side) -> ReasonSet:
        members = self.check(names)
        wrong = sorted(n for n in members if self._sides[n] is not side)
        if wrong:
            raise InvariantError(f"reason set for {side} contains {', '.join(wrong)}")
        return ReasonSet(members, side)


@dataclass(frozen=True)
class ReasonSet:
    members: frozenset[str]
    side: Side

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        object.__setattr__(self, "side", Side(self.side))

    def __str__(self) -> str:
        return format_names(self.members)

    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class FactSituation:
    """A set of factor names, validated against (but not compared by) its universe."""

    members: frozenset[str]
    universe: FactorUniverse = field(repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "members", self.universe.check(self.members))

    def project(self, side: Side) -> ReasonSet:
        return ReasonSet(
            frozenset(n for n in self.members if self.universe.side_of(n) is side), side
        )

    def __str__(self) -> str:
        return format_names(self.members)

    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)


def side_projection(facts: FactSituation, side: Side) -> ReasonSet:
    """The pro-``side`` factors of ``facts``."""
    return facts.project(Side(side))


@dataclass(frozen=True)
class Rule:
    premise: ReasonSet
    conclusion: Side

    def __post_init__(self):
        object.__setattr__(self, "conclusion", Side(self.conclusion))
        if self.premise.side is not self.conclusion:
            raise InvariantError("premise side mismatch: rule premise must favor its conclusion")

    def __str__(self) -> str:
        return f"{self.premise} -> {self.conclusion}"


@dataclass(frozen=True)
class Case:
    id: str
    facts: FactSituation
    rule: Rule
    outcome: Side

    def __post_init__(self):
        object.__setattr__(self, "outcome", Side(self.outcome))
        if self.rule.conclusion is not self.outcome:
            raise InvariantError(f"case {self.id}: rule conclusion differs from outcome")
        if self.rule.premise.side is not self.outcome:
            raise InvariantError(f"case {self.id}: premise side mismatch")
        if not self.rule.premise.members <= self.facts.members:
            raise InvariantError(f"case {self.id}: premise not contained in facts")

    @classmethod
    def build(
        cls,
        universe: FactorUniverse,
        id: str,
        facts: Iterable[str],
        premise: Iterable[str],
        outcome: Side | str,
    ) -> Case:
        outcome = Side(outcome)
        return cls(
            id,
            universe.situation(facts),
            Rule(universe.reason_set(premise, outcome), outcome),
            outcome,
        )

    @property
    def premise(self) -> ReasonSet:
        return self.rule.premise

    def content(self) -> tuple:
        return (self.facts.members, self.rule.premise.members, self.outcome)


@dataclass(frozen=True)
class CaseBase:
    """A collection of cases over one factor universe, kept sorted by id."""

    universe: FactorUniverse
    cases: tuple[Case, ...] = ()

    def __post_init__(self):
        cases = tuple(sorted(self.cases, key=lambda c: c.id))
        ids = [c.id for c in cases]
        dupes = sorted({i for i in ids if ids.count(i) > 1})
        if dupes:
            raise InvariantError("duplicate case id: " + ", ".join(dupes))
        for case in cases:
            self.universe.check(case.facts.members)
        object.__setattr__(self, "cases", cases)

    def __iter__(self) -> Iterator[Case]:
        return iter(self.cases)

    def __len__(self) -> int:
        return len(self.cases)

    @property
    def ids(self) -> frozenset[str]:
        return frozenset(c.id for c in self.cases)

    def case(self, case_id: str) -> Case:
        for c in self.cases:
            if c.id == case_id:
                return c
        raise UnknownCaseError([case_id])

    def restrict(self, ids: Iterable[str]) -> CaseBase:
        wanted = frozenset(ids)
        unknown = wanted - self.ids
        if unknown:
            raise UnknownCaseError(unknown)
        return CaseBase(self.universe, tuple(c for c in self.cases if c.id in wanted))

    def with_case(self, case: Case) -> CaseBase:
        return CaseBase(self.universe, self.cases + (case,))

    def situation(self, facts: Iterable[str] | FactSituation) -> FactSituation:
        if isinstance(facts, FactSituation):
            facts = facts.members
        return self.universe.situation(facts)


@dataclass(frozen=True, order=True)
class InconsistencyPair:
    """A pro-plaintiff and a pro-defendant reason set, each stronger than the other."""

    plaintiff: tuple[str, ...]
    defendant: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "plaintiff", tuple(sorted(self.plaintiff)))
        object.__setattr__(self, "defendant", tuple(sorted(self.defendant)))

    def __str__(self) -> str:
        return f"({format_names(self.plaintiff)} , {format_names(self.defendant)})"


def _check_reason_set(universe: FactorUniverse, rs: ReasonSet) -> None:
    universe.reason_set(rs.members, rs.side)


def _prefers(case: Case, weaker: ReasonSet, stronger: ReasonSet) -> bool:
    if weaker.side is stronger.side:
        return weaker.members < stronger.members
    if stronger.side is not case.outcome:
        return False
    return (
        weaker.members <= case.facts.project(weaker.side).members
        and case.rule.premise.members <= stronger.members
    )


def case_prefers(case: Case, weaker: ReasonSet, stronger: ReasonSet) -> bool:
    """True iff ``weaker <_case stronger``.

    Raises
    ------
    UnknownFactorError
        If either reason set names a factor outside the case's universe.
    """
    universe = case.facts.universe
    _check_reason_set(universe, weaker)
    _check_reason_set(universe, stronger)
    return _prefers(case, weaker, stronger)


def preference_witnesses(cb: CaseBase, weaker: ReasonSet, stronger: ReasonSet) -> tuple[str, ...]:
    """Ids of every case in ``cb`` inducing ``weaker < stronger``, sorted."""
    _check_reason_set(cb.universe, weaker)
    _check_reason_set(cb.universe, stronger)
    return tuple(c.id for c in cb.cases if _prefers(c, weaker, stronger))


def base_prefers(cb: CaseBase, weaker: ReasonSet, stronger: ReasonSet) -> bool:
    return bool(preference_witnesses(cb, weaker, stronger))


def _check_cap(cb: CaseBase, cap: int) -> None:
    if len(cb.universe) > cap:
        raise CapExceededError("factor universe", len(cb.universe), cap)


def inconsistencies(cb: CaseBase, cap: int = DEFAULT_CAP) -> frozenset[InconsistencyPair]:
    """Every cross-side pair of reason sets that ``cb`` orders both ways.

    A pair ``(U, V)`` is inconsistent exactly when some defendant case ``c``
    and plaintiff case ``d`` give ``premise(d) <= U <= facts(c)^pi`` and
    ``premise(c) <= V <= facts(d)^delta``, so the pairs are enumerated as
    products of those intervals.
    """
    _check_cap(cb, cap)
    pi, delta = Side.PLAINTIFF, Side.DEFENDANT
    found: set[InconsistencyPair] = set()
    for d in (c for c in cb.cases if c.outcome is pi):
        for c in (c for c in cb.cases if c.outcome is delta):
            us = list(interval(d.premise.members, c.facts.project(pi).members))
            if not us:
                continue
            for v in interval(c.premise.members, d.facts.project(delta).members):
                found.update(InconsistencyPair(tuple(u), tuple(v)) for u in us)
    return frozenset(found)


def is_consistent(cb: CaseBase, cap: int = DEFAULT_CAP) -> bool:
    return not inconsistencies(cb, cap)


# -- case-base documents --------------------------------------------------

_SIDES = {s.value for s in Side}


def _name_list(value: Any, where: str, problems: list[str]) -> list[str] | None:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        problems.append(f"{where}: expected a list of factor names")
        return None
    return value


def validate_case_base(raw: Any) -> CaseBase:
    """Build a :class:`CaseBase` from a decoded JSON document.

    Every violation in the document is collected; if there are any, a
    :class:`ValidationError` listing all of them is raised and nothing is
    returned.
    """
    problems: list[str] = []
    if not isinstance(raw, dict):
        raise ValidationError(["document: expected a JSON object with 'factors' and 'cases'"])
    for key in sorted(set(raw) - {"factors", "cases"}):
        problems.append(f"document: unexpected key {key!r}")

    sides: dict[str, Side] = {}
    raw_factors = raw.get("factors")
    if not isinstance(raw_factors, list):
        problems.append("factors: expected a list")
        raw_factors = []
    for i, entry in enumerate(raw_factors):
        where = f"factors[{i}]"
        if not isinstance(entry, dict) or set(entry) != {"name", "side"}:
            problems.append(f"{where}: expected an object with 'name' and 'side'")
            continue
        name, side = entry["name"], entry["side"]
        if not isinstance(name, str) or not name:
            problems.append(f"{where}: factor name must be a non-empty string")
            continue
        if side not in _SIDES:
            problems.append(f"{where}: side must be 'plaintiff' or 'defendant'")
            continue
        if name in sides:
            problems.append(f"{where}: factor declared twice: {name}")
            continue
        sides[name] = Side(side)

    raw_cases = raw.get("cases")
    if not isinstance(raw_cases, list):
        problems.append("cases: expected a list")
        raw_cases = []
    seen_ids: set[str] = set()
    specs = []
    for i, entry in enumerate(raw_cases):
        where = f"cases[{i}]"
        if not isinstance(entry, dict) or set(entry) != {"id", "facts", "rule", "outcome"}:
            problems.append(f"{where}: expected an object with 'id', 'facts', 'rule', 'outcome'")
            continue
        case_id = entry["id"]
        if not isinstance(case_id, str) or not case_id:
            problems.append(f"{where}: case id must be a non-empty string")
            continue
        where = f"case {case_id}"
        if case_id in seen_ids:
            problems.append(f"{where}: duplicate id")
        seen_ids.add(case_id)
        facts = _name_list(entry["facts"], f"{where} facts", problems)
        rule = entry["rule"]
        if not isinstance(rule, dict) or set(rule) != {"premise", "conclusion"}:
            problems.append(f"{where}: rule must be an object with 'premise' and 'conclusion'")
            continue
        premise = _name_list(rule["premise"], f"{where} premise", problems)
        outcome, conclusion = entry["outcome"], rule["conclusion"]
        if outcome not in _SIDES:
            problems.append(f"{where}: outcome must be 'plaintiff' or 'defendant'")
        if conclusion not in _SIDES:
            problems.append(f"{where}: rule conclusion must be 'plaintiff' or 'defendant'")
        if outcome in _SIDES and conclusion in _SIDES and outcome != conclusion:
            problems.append(f"{where}: conclusion/outcome mismatch ({conclusion} vs {outcome})")
        if facts is None or premise is None:
            continue
        for label, names in (("facts", facts), ("premise", premise)):
            if len(set(names)) != len(names):
                problems.append(f"{where} {label}: factor listed twice")
            for name in sorted(set(names) - sides.keys()):
                problems.append(f"{where} {label}: unknown factor {name}")
        if conclusion in _SIDES:
            wrong = sorted(n for n in premise if n in sides and sides[n] is not Side(conclusion))
            if wrong:
                problems.append(
                    f"{where}: premise side mismatch ({', '.join(wrong)} not pro-{conclusion})"
                )
        outside = sorted(set(premise) - set(facts))
        if outside:
            problems.append(f"{where}: premise outside facts ({', '.join(outside)})")
        specs.append((case_id, facts, premise, outcome))

    if problems:
        raise ValidationError(problems)
    universe = FactorUniverse(frozenset(Factor(n, s) for n, s in sides.items()))
    return CaseBase(
        universe,
        tuple(Case.build(universe, cid, facts, prem, out) for cid, facts, prem, out in specs),
    )


def case_base_to_document(cb: CaseBase) -> dict:
    return {
        "factors": [{"name": f.name, "side": f.side.value} for f in sorted(cb.universe.factors)],
        "cases": [
            {
                "id": c.id,
                "facts": sorted(c.facts.members),
                "rule": {"premise": sorted(c.premise.members), "conclusion": c.outcome.value},
                "outcome": c.outcome.value,
            }
            for c in cb.cases
        ],
    }


def dumps_case_base(cb: CaseBase) -> str:
    return json.dumps(case_base_to_document(cb), indent=2, ensure_ascii=False) + "\n"


def loads_case_base(text: str) -> CaseBase:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError([f"malformed JSON: {exc}"]) from None
    return validate_case_base(raw)


def load_case_base(path: str | Path) -> CaseBase:
    """Read and validate a case-base file. ``OSError`` propagates unchanged."""
    data = Path(path).read_bytes()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ValidationError([f"not UTF-8: {exc}"]) from None
    return loads_case_base(text)
