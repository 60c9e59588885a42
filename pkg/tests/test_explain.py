from __future__ import annotations

import pytest
from hypothesis import given, settings

from conftest import instances
from precedent_dsa.core import Case, CaseBase, FactorUniverse, Side
from precedent_dsa.dsa import DSArgument, build_framework
from precedent_dsa.errors import InternalConsistencyError, UnknownArgumentError
from precedent_dsa.explain import (
    DisputeNode,
    Role,
    all_dispute_trees,
    build_dispute_tree,
    explain_decision,
    explanations,
    is_admissible_tree,
)

PI, DELTA = Side.PLAINTIFF, Side.DEFENDANT
ALL = frozenset({"c1", "c2"})


def arg(knowledge, sub_base, state):
    return DSArgument(frozenset(knowledge), frozenset(sub_base), state)


def check_structure(tree: DisputeNode, fw) -> None:
    """Walk a tree and assert every dispute-tree clause against the framework."""
    assert tree.role is Role.PROPONENT
    stack = [tree]
    while stack:
        node = stack.pop()
        assert node.argument in fw.arguments
        attackers = {a for a, b in fw.attacks if b == node.argument}
        if node.role is Role.PROPONENT:
            assert all(c.role is Role.OPPONENT for c in node.children)
            assert sorted(c.argument for c in node.children) == sorted(attackers)
        else:
            assert len(node.children) <= 1
            for c in node.children:
                assert c.role is Role.PROPONENT and c.argument in attackers
        stack.extend(node.children)


@pytest.fixture(scope="module")
def fw(gamma1, x1):
    return build_framework(x1, gamma1)


class TestDisputeTree:
    def test_defended_root(self, fw):
        tree = build_dispute_tree(fw, arg({"short"}, ALL, PI))
        assert tree.size() == 3
        (o,) = tree.children
        assert o.role is Role.OPPONENT and o.argument == arg({"short", "job"}, {"c2"}, DELTA)
        (p,) = o.children
        assert p.role is Role.PROPONENT and p.argument == arg({"short", "house", "job"}, ALL, PI)
        assert is_admissible_tree(tree, fw)

    def test_unchallenged_root(self, fw):
        tree = build_dispute_tree(fw, arg({"short", "house"}, ALL, PI))
        assert tree.size() == 1 and is_admissible_tree(tree, fw)

    def test_unanswered_opponent(self, fw):
        tree = build_dispute_tree(fw, arg({"job"}, ALL, DELTA))
        (o,) = tree.children
        assert o.argument == arg({"short", "job"}, {"c1"}, PI) and o.children == ()
        assert not is_admissible_tree(tree, fw)

    def test_foreign_root(self, fw):
        with pytest.raises(UnknownArgumentError):
            build_dispute_tree(fw, arg({"bank"}, ALL, PI))
        with pytest.raises(UnknownArgumentError):
            is_admissible_tree(DisputeNode(Role.PROPONENT, arg({"bank"}, ALL, PI)), fw)

    def test_same_argument_in_both_roles_is_rejected(self, fw):
        a = arg({"short"}, ALL, PI)
        o = arg({"short", "job"}, {"c2"}, DELTA)
        tree = DisputeNode(Role.PROPONENT, a, (DisputeNode(Role.OPPONENT, o, (DisputeNode(Role.PROPONENT, o),)),))
        assert not is_admissible_tree(tree, fw)


class TestExplanations:
    def test_plaintiff(self, gamma1, x1):
        found = explanations(x1, gamma1, PI)
        assert [e.root for e in found] == [arg({"short", "house"}, ALL, PI), arg({"short"}, ALL, PI)]
        assert [e.tree.size() for e in found] == [1, 3]

    def test_defendant(self, gamma1, x1):
        assert explanations(x1, gamma1, DELTA) == ()

    def test_empty_framework(self, gamma1):
        for s in Side:
            assert explanations((), gamma1, s) == ()

    def test_all_defenses_on_example(self, gamma1, x1):
        assert explanations(x1, gamma1, PI, all_defenses=True) == explanations(x1, gamma1, PI)


class TestExplainDecision:
    def test_example(self, gamma1, x1):
        report = explain_decision(x1, gamma1)
        assert report.outcome.obligated is PI
        assert len(report.explanations[PI]) == 2 and report.explanations[DELTA] == ()
        assert report.mismatch is None

    def test_empty_case_base(self, gamma1, x1):
        report = explain_decision(x1, CaseBase(gamma1.universe))
        assert report.outcome.both_permitted
        assert report.explanations == {PI: (), DELTA: ()}

    @pytest.mark.parametrize("cid", ["c1", "c2"])
    def test_single_precedent(self, gamma1, cid):
        c = gamma1.case(cid)
        report = explain_decision(c.facts, gamma1.restrict({cid}))
        assert report.outcome.obligated is c.outcome
        assert len(report.explanations[c.outcome]) >= 1


class TestDecisionExplanationGap:
    """Instances where obligation and explanation sets disagree under the literal definitions."""

    def test_unsettled_full_situation_still_has_an_explanation(self):
        u = FactorUniverse.of(["a"], ["b"])
        cb = CaseBase(u, (Case.build(u, "c", {"a"}, {"a"}, PI),))
        report = explain_decision({"a", "b"}, cb, strict=False)
        assert report.outcome.both_permitted
        assert len(report.explanations[PI]) == 1 and report.explanations[DELTA] == ()
        assert report.framework.grounded == frozenset(report.framework.with_state(PI))
        assert "both permitted" in report.mismatch
        with pytest.raises(InternalConsistencyError):
            explain_decision({"a", "b"}, cb)

    def test_obligation_without_non_attacking_argument(self):
        u = FactorUniverse.of(["a"], ["b"])
        cb = CaseBase(
            u,
            (Case.build(u, "c1", {"a", "b"}, {"a"}, PI), Case.build(u, "c2", (), (), DELTA)),
        )
        report = explain_decision({"a", "b"}, cb, strict=False)
        assert report.outcome.obligated is PI
        assert report.explanations == {PI: (), DELTA: ()}
        fw = report.framework
        assert all(fw.attacked_by(a) for a in fw.with_state(PI))


class TestProperties:
    @settings(max_examples=250, deadline=None)
    @given(instances())
    def test_trees(self, instance):
        cb, x = instance
        fw = build_framework(x, cb)
        for root in fw.arguments:
            tree = build_dispute_tree(fw, root)
            check_structure(tree, fw)
            assert tree.depth() <= len(fw.arguments)
            assert is_admissible_tree(tree, fw) == (root in fw.grounded)

    @settings(max_examples=100, deadline=None)
    @given(instances(max_factors=5, max_cases=3))
    def test_all_defenses(self, instance):
        cb, x = instance
        fw = build_framework(x, cb)
        for root in fw.arguments:
            trees = all_dispute_trees(fw, root)
            for t in trees:
                check_structure(t, fw)
            admissible = [t for t in trees if is_admissible_tree(t, fw)]
            assert bool(admissible) == (root in fw.grounded)
            if root in fw.grounded:
                assert build_dispute_tree(fw, root) in admissible

    @settings(max_examples=200, deadline=None)
    @given(instances())
    def test_explanation_roots(self, instance):
        cb, x = instance
        fw = build_framework(x, cb)
        for s in Side:
            for e in explanations(x, cb, s, framework=fw):
                assert e.root.state is s and not fw.attacked_by(e.root)
                assert is_admissible_tree(e.tree, fw)
                assert e.root in fw.grounded
