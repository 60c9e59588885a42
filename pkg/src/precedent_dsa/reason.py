"""Permission and obligation under the generalized reason model.

A court may decide ``X`` for side ``s`` when some rule for ``s`` can be
added as a new case without creating an inconsistency that was not already
there.  Deciding for ``s`` always adds priorities from reason sets drawn
from ``X`` towards ``s``; the weakest such addition uses the rule
``X^s -> s``.  That addition creates a new inconsistency exactly when the
case base already ranks ``X^s`` below ``X^{s-bar}`` and not the other way
round, so permission reduces to two priority checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from ._subsets import powerset
from .core import (
    Case,
    CaseBase,
    FactSituation,
    Rule,
    Side,
    inconsistencies,
    preference_witnesses,
)
from .errors import CapExceededError

ORACLE_CAP = 8
HYPOTHETICAL_ID = "<hypothetical>"

Facts = FactSituation | Iterable[str]


@dataclass(frozen=True)
class DecisionOutcome:
    """One of: both sides permitted, or obligated for ``obligated``.

    ``plaintiff_witnesses`` are the cases under which ``X^delta < X^pi``
    (the plaintiff's reasons in ``X`` win); ``defendant_witnesses`` the
    cases under which ``X^pi < X^delta``.
    """

    obligated: Side | None
    plaintiff_witnesses: tuple[str, ...] = ()
    defendant_witnesses: tuple[str, ...] = ()

    @property
    def both_permitted(self) -> bool:
        return self.obligated is None

    def witnesses_for(self, side: Side) -> tuple[str, ...]:
        if side is Side.PLAINTIFF:
            return self.plaintiff_witnesses
        return self.defendant_witnesses

    def permits(self, side: Side) -> bool:
        return self.obligated is None or self.obligated is side

    def __str__(self) -> str:
        if self.obligated is None:
            return "both permitted"
        return f"obligated {self.obligated}"


def _witnesses(cb: CaseBase, facts: FactSituation, side: Side) -> tuple[str, ...]:
    """Cases ranking ``facts`` projected to ``side`` above the other projection."""
    return preference_witnesses(cb, facts.project(side.opposite), facts.project(side))


def permitted(cb: CaseBase, facts: Facts, side: Side) -> bool:
    side = Side(side)
    x = cb.situation(facts)
    loses = bool(_witnesses(cb, x, side.opposite))
    wins = bool(_witnesses(cb, x, side))
    return not (loses and not wins)


def obligated(cb: CaseBase, facts: Facts, side: Side) -> bool:
    side = Side(side)
    return permitted(cb, facts, side) and not permitted(cb, facts, side.opposite)


def decide(cb: CaseBase, facts: Facts) -> DecisionOutcome:
    x = cb.situation(facts)
    pi_wit = _witnesses(cb, x, Side.PLAINTIFF)
    delta_wit = _witnesses(cb, x, Side.DEFENDANT)
    winner = None
    if obligated(cb, x, Side.PLAINTIFF):
        winner = Side.PLAINTIFF
    elif obligated(cb, x, Side.DEFENDANT):
        winner = Side.DEFENDANT
    return DecisionOutcome(winner, pi_wit, delta_wit)


def _fresh_id(cb: CaseBase) -> str:
    candidate = HYPOTHETICAL_ID
    while candidate in cb.ids:
        candidate += "'"
    return candidate


def permitted_oracle(cb: CaseBase, facts: Facts, side: Side) -> bool:
    """Permission straight from the definition, by trying every candidate rule.

    For each ``U <= X^side`` the case ``<X, U -> side, side>`` is added and
    the inconsistency sets before and after are compared.  Exponential; only
    for universes of at most :data:`ORACLE_CAP` factors.
    """
    side = Side(side)
    if len(cb.universe) > ORACLE_CAP:
        raise CapExceededError("factor universe", len(cb.universe), ORACLE_CAP)
    x = cb.situation(facts)
    before = inconsistencies(cb, cap=ORACLE_CAP)
    new_id = _fresh_id(cb)
    for premise in powerset(x.project(side).members):
        rule = Rule(cb.universe.reason_set(premise, side), side)
        extended = cb.with_case(Case(new_id, x, rule, side))
        if inconsistencies(extended, cap=ORACLE_CAP) <= before:
            return True
    return False
