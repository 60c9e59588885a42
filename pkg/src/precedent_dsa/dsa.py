"""Derivation-state arguments and the framework of attacks between them.

For every subset of a fact situation (its *situational knowledge*) we find
the largest sub-bases of the case base that settle that knowledge one way,
and the side they settle it for.  A larger piece of knowledge attacks a
smaller one when it flips the settled side and no intermediate piece of
knowledge already settles for the attacker's side.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from ._subsets import powerset
from .aa import AAFramework, grounded_extension, is_well_founded
from .core import DEFAULT_CAP, CaseBase, FactSituation, Side, format_names, preference_witnesses
from .errors import CapExceededError, InternalConsistencyError, UnknownArgumentError

Facts = FactSituation | Iterable[str]


@dataclass(frozen=True)
class DSArgument:
    """A triple (knowledge, maximal conclusive sub-base, derivation state)."""

    knowledge: frozenset[str]
    sub_base: frozenset[str]
    state: Side

    @property
    def key(self) -> tuple:
        return (tuple(sorted(self.knowledge)), self.state.value, tuple(sorted(self.sub_base)))

    def __lt__(self, other: DSArgument) -> bool:
        return self.key < other.key

    def __str__(self) -> str:
        return f"({format_names(self.knowledge)}, {format_names(self.sub_base)}, {self.state})"

    def to_dict(self) -> dict:
        return {
            "knowledge": sorted(self.knowledge),
            "sub_base": sorted(self.sub_base),
            "state": self.state.value,
        }


def _forward_witnesses(cb: CaseBase, knowledge: FactSituation, side: Side) -> tuple[str, ...]:
    return preference_witnesses(cb, knowledge.project(side.opposite), knowledge.project(side))


def derivation_state(
    cb: CaseBase, knowledge: Facts, sub_base: Iterable[str] | None = None
) -> Side | None:
    """The side that ``sub_base`` (default: all of ``cb``) settles ``knowledge`` for.

    ``None`` when neither priority direction between the two projections
    holds, or when both do.
    """
    scope = cb if sub_base is None else cb.restrict(sub_base)
    chi = cb.situation(knowledge)
    settled = [s for s in Side if _forward_witnesses(scope, chi, s)]
    return settled[0] if len(settled) == 1 else None


def is_conclusive(cb: CaseBase, knowledge: Facts, sub_base: Iterable[str] | None = None) -> bool:
    return derivation_state(cb, knowledge, sub_base) is not None


def _maximal_by_state(cb: CaseBase, chi: FactSituation) -> dict[Side, frozenset[str]]:
    # Any sub-base conclusive for s must drop every case ranking chi^s below
    # chi^s-bar; keeping all the others is then the unique largest candidate.
    result = {}
    for side in Side:
        against = set(_forward_witnesses(cb, chi, side.opposite))
        keep = cb.ids - against
        if _forward_witnesses(cb.restrict(keep), chi, side):
            result[side] = frozenset(keep)
    return result


def max_conclusive_subbases(cb: CaseBase, knowledge: Facts) -> tuple[frozenset[str], ...]:
    """All maximal conclusive sub-bases for ``knowledge``; never more than two."""
    chi = cb.situation(knowledge)
    return tuple(sorted(_maximal_by_state(cb, chi).values(), key=sorted))


def _check_size(facts: FactSituation, cap: int) -> None:
    if len(facts) > cap:
        raise CapExceededError("fact situation", len(facts), cap)


def enumerate_ds_arguments(
    facts: Facts, cb: CaseBase, cap: int = DEFAULT_CAP
) -> tuple[DSArgument, ...]:
    x = cb.situation(facts)
    _check_size(x, cap)
    found = []
    for chi in powerset(x.members):
        for side, ids in _maximal_by_state(cb, cb.situation(chi)).items():
            found.append(DSArgument(chi, ids, side))
    return tuple(sorted(found))


def attacks(a: DSArgument, b: DSArgument, arguments: Iterable[DSArgument]) -> bool:
    """Whether ``a`` attacks ``b`` within the argument set ``arguments``.

    Raises
    ------
    UnknownArgumentError
        If ``a`` or ``b`` is not in ``arguments``.
    """
    arguments = frozenset(arguments)
    for arg in (a, b):
        if arg not in arguments:
            raise UnknownArgumentError(f"argument not in framework: {arg}")
    if a.state is b.state or not b.knowledge < a.knowledge:
        return False
    return not any(
        c.state is a.state and b.knowledge < c.knowledge < a.knowledge for c in arguments
    )


@dataclass(frozen=True)
class DSAFramework:
    facts: FactSituation
    case_base: CaseBase
    arguments: tuple[DSArgument, ...]
    attacks: frozenset[tuple[DSArgument, DSArgument]]

    @cached_property
    def aa(self) -> AAFramework:
        return AAFramework(frozenset(self.arguments), self.attacks)

    @cached_property
    def grounded(self) -> frozenset[DSArgument]:
        return grounded_extension(self.aa)

    def __contains__(self, arg: object) -> bool:
        return arg in self.aa.nodes

    def attackers(self, arg: DSArgument) -> tuple[DSArgument, ...]:
        return tuple(sorted(self.aa.attackers(arg)))

    def attacked_by(self, arg: DSArgument) -> tuple[DSArgument, ...]:
        return tuple(sorted(self.aa.attacked(arg)))

    def sorted_attacks(self) -> list[tuple[DSArgument, DSArgument]]:
        return sorted(self.attacks, key=lambda pair: (pair[0].key, pair[1].key))

    def with_state(self, side: Side) -> tuple[DSArgument, ...]:
        return tuple(a for a in self.arguments if a.state is side)


def build_framework(facts: Facts, cb: CaseBase, cap: int = DEFAULT_CAP) -> DSAFramework:
    x = cb.situation(facts)
    arguments = enumerate_ds_arguments(x, cb, cap)
    knowledge_by_state = {s: [a.knowledge for a in arguments if a.state is s] for s in Side}
    edges = set()
    for a in arguments:
        between = knowledge_by_state[a.state]
        for b in arguments:
            if a.state is b.state or not b.knowledge < a.knowledge:
                continue
            if not any(b.knowledge < k < a.knowledge for k in between):
                edges.add((a, b))
    framework = DSAFramework(x, cb, arguments, frozenset(edges))
    if not is_well_founded(framework.aa):
        raise InternalConsistencyError("derivation-state framework has an attack cycle")
    return framework
