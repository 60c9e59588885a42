"""Dispute trees over a derivation-state framework, and the explanations they give."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from typing import Iterable, Iterator

from .core import DEFAULT_CAP, CaseBase, FactSituation, Side
from .dsa import DSAFramework, DSArgument, build_framework
from .errors import CapExceededError, InternalConsistencyError, UnknownArgumentError
from .reason import DecisionOutcome, decide

TREE_LIMIT = 10_000


class Role(str, Enum):
    PROPONENT = "P"
    OPPONENT = "O"


@dataclass(frozen=True)
class DisputeNode:
    role: Role
    argument: DSArgument
    children: tuple[DisputeNode, ...] = ()

    def walk(self) -> Iterator[DisputeNode]:
        yield self
        for child in self.children:
            yield from child.walk()

    def size(self) -> int:
        return sum(1 for _ in self.walk())

    def depth(self) -> int:
        return 1 + max((c.depth() for c in self.children), default=0)

    def arguments(self, role: Role) -> frozenset[DSArgument]:
        return frozenset(n.argument for n in self.walk() if n.role is role)


@dataclass(frozen=True)
class Explanation:
    side: Side
    tree: DisputeNode

    @property
    def root(self) -> DSArgument:
        return self.tree.argument

    @property
    def root_knowledge(self) -> frozenset[str]:
        return self.tree.argument.knowledge


def _require(fw: DSAFramework, arg: DSArgument) -> None:
    if arg not in fw:
        raise UnknownArgumentError(f"argument not in framework: {arg}")


def build_dispute_tree(fw: DSAFramework, root: DSArgument) -> DisputeNode:
    """The canonical dispute tree for ``root``.

    Proponent nodes get one opponent child per attacker.  Each opponent is
    answered by its least attacker inside the grounded extension, or left
    unanswered when there is none.
    """
    _require(fw, root)
    grounded = fw.grounded

    def proponent(arg: DSArgument) -> DisputeNode:
        return DisputeNode(Role.PROPONENT, arg, tuple(opponent(x) for x in fw.attackers(arg)))

    def opponent(arg: DSArgument) -> DisputeNode:
        defenders = [d for d in fw.attackers(arg) if d in grounded]
        children = (proponent(defenders[0]),) if defenders else ()
        return DisputeNode(Role.OPPONENT, arg, children)

    return proponent(root)


def all_dispute_trees(
    fw: DSAFramework, root: DSArgument, limit: int = TREE_LIMIT
) -> list[DisputeNode]:
    """Every dispute tree for ``root`` in which each answerable opponent is answered.

    Raises :class:`CapExceededError` if there are more than ``limit`` trees.
    """
    _require(fw, root)

    def proponent(arg: DSArgument) -> list[DisputeNode]:
        options = [opponent(x) for x in fw.attackers(arg)]
        combos = product(*options)
        trees = []
        for combo in combos:
            trees.append(DisputeNode(Role.PROPONENT, arg, combo))
            if len(trees) > limit:
                raise CapExceededError("dispute-tree enumeration", len(trees), limit)
        return trees

    def opponent(arg: DSArgument) -> list[DisputeNode]:
        answers = fw.attackers(arg)
        if not answers:
            return [DisputeNode(Role.OPPONENT, arg)]
        return [
            DisputeNode(Role.OPPONENT, arg, (child,)) for d in answers for child in proponent(d)
        ]

    return proponent(root)


def is_admissible_tree(tree: DisputeNode, fw: DSAFramework) -> bool:
    for node in tree.walk():
        _require(fw, node.argument)
    if any(n.role is Role.OPPONENT and not n.children for n in tree.walk()):
        return False
    return not tree.arguments(Role.PROPONENT) & tree.arguments(Role.OPPONENT)


def _framework(facts, cb: CaseBase, cap: int, fw: DSAFramework | None) -> DSAFramework:
    return fw if fw is not None else build_framework(facts, cb, cap)


def explanations(
    facts: FactSituation | Iterable[str],
    cb: CaseBase,
    side: Side,
    cap: int = DEFAULT_CAP,
    all_defenses: bool = False,
    framework: DSAFramework | None = None,
) -> tuple[Explanation, ...]:
    """Admissible dispute trees rooted at non-attacking arguments for ``side``.

    By default one canonical tree per root; with ``all_defenses`` every
    admissible choice of counter-attacks is returned.
    """
    side = Side(side)
    fw = _framework(facts, cb, cap, framework)
    found = []
    for root in fw.with_state(side):
        if fw.attacked_by(root):
            continue
        trees = all_dispute_trees(fw, root) if all_defenses else [build_dispute_tree(fw, root)]
        found.extend(Explanation(side, t) for t in trees if is_admissible_tree(t, fw))
    return tuple(found)


@dataclass(frozen=True)
class DecisionReport:
    outcome: DecisionOutcome
    framework: DSAFramework
    explanations: dict[Side, tuple[Explanation, ...]] = field(hash=False)
    mismatch: str | None = None


def explain_decision(
    facts: FactSituation | Iterable[str],
    cb: CaseBase,
    cap: int = DEFAULT_CAP,
    all_defenses: bool = False,
    strict: bool = True,
) -> DecisionReport:
    """Decide ``facts`` and collect the explanations for both sides.

    The decision is cross-checked against the explanation sets: a side is
    obligated exactly when it has explanations and the other side has none.
    A disagreement raises :class:`InternalConsistencyError` when ``strict``;
    otherwise it is recorded in ``mismatch``.
    """
    x = cb.situation(facts)
    outcome = decide(cb, x)
    fw = build_framework(x, cb, cap)
    found = {s: explanations(x, cb, s, cap, all_defenses, framework=fw) for s in Side}
    explained = [s for s in Side if found[s] and not found[s.opposite]]
    expected = explained[0] if explained else None
    mismatch = None
    if expected is not outcome.obligated:
        mismatch = (
            f"decision is {outcome} but explanation sets give "
            + (f"obligated {expected}" if expected else "no obligation")
            + f" ({len(found[Side.PLAINTIFF])} plaintiff, {len(found[Side.DEFENDANT])} defendant)"
        )
        if strict:
            raise InternalConsistencyError(mismatch)
    return DecisionReport(outcome, fw, found, mismatch)
