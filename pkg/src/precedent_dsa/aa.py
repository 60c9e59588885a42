"""Abstract argumentation frameworks and their extension semantics.

Argument ids may be any hashable, orderable values.  Set operations run on
integer bitmasks internally so that exhaustive checks over small frameworks
stay fast; the public surface takes and returns frozensets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Hashable, Iterable

from .errors import CapExceededError, UnknownArgumentError

ENUMERATION_CAP = 20


class Semantics(str, Enum):
    GROUNDED = "grounded"
    STABLE = "stable"
    PREFERRED = "preferred"
    COMPLETE = "complete"


def _ordered(items: Iterable[Hashable]) -> list:
    items = list(items)
    try:
        return sorted(items)
    except TypeError:
        return sorted(items, key=repr)


@dataclass(frozen=True)
class AAFramework:
    nodes: frozenset
    attack_relation: frozenset = field(default=frozenset())

    def __post_init__(self):
        object.__setattr__(self, "nodes", frozenset(self.nodes))
        relation = frozenset((x, y) for x, y in self.attack_relation)
        stray = {n for pair in relation for n in pair} - self.nodes
        if stray:
            raise UnknownArgumentError(f"attack endpoints not among nodes: {_ordered(stray)}")
        object.__setattr__(self, "attack_relation", relation)

    @classmethod
    def from_edges(cls, nodes: Iterable, edges: Iterable[tuple]) -> AAFramework:
        return cls(frozenset(nodes), frozenset(edges))

    @cached_property
    def order(self) -> list:
        return _ordered(self.nodes)

    @cached_property
    def _index(self) -> dict:
        return {n: i for i, n in enumerate(self.order)}

    @cached_property
    def _in_masks(self) -> list[int]:
        masks = [0] * len(self.order)
        for x, y in self.attack_relation:
            masks[self._index[y]] |= 1 << self._index[x]
        return masks

    @cached_property
    def _out_masks(self) -> list[int]:
        masks = [0] * len(self.order)
        for x, y in self.attack_relation:
            masks[self._index[x]] |= 1 << self._index[y]
        return masks

    @property
    def _full(self) -> int:
        return (1 << len(self.order)) - 1

    def _mask(self, ids: Iterable) -> int:
        mask = 0
        for n in ids:
            try:
                mask |= 1 << self._index[n]
            except KeyError:
                raise UnknownArgumentError(f"unknown argument: {n!r}") from None
        return mask

    def _ids(self, mask: int) -> frozenset:
        return frozenset(n for i, n in enumerate(self.order) if mask >> i & 1)

    def _attacked_by(self, mask: int) -> int:
        out = 0
        for i, m in enumerate(self._out_masks):
            if mask >> i & 1:
                out |= m
        return out

    def _defended(self, mask: int) -> int:
        hit = self._attacked_by(mask)
        result = 0
        for i, attackers in enumerate(self._in_masks):
            if attackers & ~hit == 0:
                result |= 1 << i
        return result

    def _conflict_free(self, mask: int) -> bool:
        return all(
            not (mask >> i & 1) or not (attackers & mask)
            for i, attackers in enumerate(self._in_masks)
        )

    def attackers(self, x) -> frozenset:
        return self._ids(self._in_masks[self._index_of(x)])

    def attacked(self, x) -> frozenset:
        return self._ids(self._out_masks[self._index_of(x)])

    def _index_of(self, x) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise UnknownArgumentError(f"unknown argument: {x!r}") from None


@dataclass(frozen=True)
class LabeledExtension:
    members: frozenset
    semantics: Semantics


def set_attacks(af: AAFramework, ext: Iterable, x) -> bool:
    """Whether some member of ``ext`` attacks ``x``."""
    mask = af._mask(ext)
    return bool(af._in_masks[af._index_of(x)] & mask)


def defends(af: AAFramework, ext: Iterable, y) -> bool:
    """Whether ``ext`` attacks every attacker of ``y``."""
    hit = af._attacked_by(af._mask(ext))
    return af._in_masks[af._index_of(y)] & ~hit == 0


def is_conflict_free(af: AAFramework, ext: Iterable) -> bool:
    return af._conflict_free(af._mask(ext))


def is_admissible(af: AAFramework, ext: Iterable) -> bool:
    mask = af._mask(ext)
    return af._conflict_free(mask) and mask & ~af._defended(mask) == 0


def is_complete(af: AAFramework, ext: Iterable) -> bool:
    mask = af._mask(ext)
    return af._conflict_free(mask) and af._defended(mask) == mask


def is_stable(af: AAFramework, ext: Iterable) -> bool:
    mask = af._mask(ext)
    outside = af._full & ~mask
    return af._conflict_free(mask) and outside & ~af._attacked_by(mask) == 0


def grounded_rounds(af: AAFramework) -> list[frozenset]:
    """The sets ``E_0, E_1, ...`` of iterated defence, up to the fixpoint.

    ``E_0`` holds the unattacked arguments and each next round holds what the
    previous round defends.  The last entry is the grounded extension.
    """
    rounds = []
    current = af._defended(0)
    while True:
        rounds.append(af._ids(current))
        nxt = af._defended(current)
        if nxt == current:
            return rounds
        current = nxt


def grounded_extension(af: AAFramework) -> frozenset:
    return grounded_rounds(af)[-1]


def _classify(af: AAFramework) -> dict[Semantics, list[int]]:
    admissible, complete, stable = [], [], []
    full = af._full
    for mask in range(full + 1):
        if not af._conflict_free(mask):
            continue
        defended = af._defended(mask)
        if mask & ~defended == 0:
            admissible.append(mask)
            if defended == mask:
                complete.append(mask)
        if (full & ~mask) & ~af._attacked_by(mask) == 0:
            stable.append(mask)
    preferred = [m for m in admissible if not any(m != o and m & o == m for o in admissible)]
    return {
        Semantics.COMPLETE: complete,
        Semantics.STABLE: stable,
        Semantics.PREFERRED: preferred,
    }


def all_extensions(af: AAFramework, cap: int = ENUMERATION_CAP) -> dict[Semantics, list[frozenset]]:
    """Extensions under every semantics, by naive subset enumeration."""
    if len(af.nodes) > cap:
        raise CapExceededError("argumentation framework", len(af.nodes), cap)
    by_semantics = {sem: [af._ids(m) for m in masks] for sem, masks in _classify(af).items()}
    by_semantics[Semantics.GROUNDED] = [grounded_extension(af)]
    return by_semantics


def enumerate_extensions(
    af: AAFramework, semantics: Semantics | str, cap: int = ENUMERATION_CAP
) -> list[LabeledExtension]:
    semantics = Semantics(semantics)
    members = all_extensions(af, cap)[semantics]
    ordered = sorted(members, key=lambda ext: (len(ext), _ordered(map(repr, ext))))
    return [LabeledExtension(m, semantics) for m in ordered]


def is_well_founded(af: AAFramework) -> bool:
    """True iff the attack graph has no directed cycle (self-attacks included)."""
    indegree = [bin(m).count("1") for m in af._in_masks]
    ready = [i for i, d in enumerate(indegree) if d == 0]
    seen = 0
    while ready:
        i = ready.pop()
        seen += 1
        out = af._out_masks[i]
        j = 0
        while out:
            if out & 1:
                indegree[j] -= 1
                if indegree[j] == 0:
                    ready.append(j)
            out >>= 1
            j += 1
    return seen == len(af.order)
