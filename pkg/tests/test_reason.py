from __future__ import annotations

import pytest
from hypothesis import given, settings

from conftest import instances
from precedent_dsa.core import Case, CaseBase, FactorUniverse, Side, base_prefers, preference_witnesses
from precedent_dsa.errors import CapExceededError, UnknownFactorError
from precedent_dsa.reason import decide, obligated, permitted, permitted_oracle

PI, DELTA = Side.PLAINTIFF, Side.DEFENDANT


class TestPermitted:
    def test_example(self, gamma1, x1):
        assert permitted(gamma1, x1, PI)
        assert not permitted(gamma1, x1, DELTA)

    @pytest.mark.parametrize("facts", [(), ("short",), ("short", "house", "job", "bank")])
    def test_empty_case_base(self, gamma1, facts):
        empty = CaseBase(gamma1.universe)
        assert permitted(empty, facts, PI) and permitted(empty, facts, DELTA)

    def test_invalid_facts(self, gamma1):
        with pytest.raises(UnknownFactorError):
            permitted(gamma1, {"moon"}, PI)


class TestObligated:
    def test_example(self, gamma1, x1):
        assert obligated(gamma1, x1, PI)
        assert not obligated(gamma1, x1, DELTA)

    def test_mutual_priority_obliges_nobody(self, gamma1):
        facts = {"short", "job"}
        assert permitted_oracle(gamma1, facts, PI) and permitted_oracle(gamma1, facts, DELTA)
        assert not obligated(gamma1, facts, PI)
        assert not obligated(gamma1, facts, DELTA)


class TestDecide:
    def test_example(self, gamma1, x1):
        outcome = decide(gamma1, x1)
        assert outcome.obligated is PI
        assert str(outcome) == "obligated plaintiff"
        assert outcome.plaintiff_witnesses == ("c1",)
        assert outcome.defendant_witnesses == ()

    def test_both_permitted(self, gamma1):
        outcome = decide(gamma1, {"short", "job"})
        assert outcome.both_permitted and str(outcome) == "both permitted"
        assert outcome.plaintiff_witnesses == ("c1",) and outcome.defendant_witnesses == ("c2",)

    def test_empty_case_base(self, gamma1, x1):
        assert decide(CaseBase(gamma1.universe), x1).both_permitted


class TestOracle:
    def test_example(self, gamma1, x1):
        assert permitted_oracle(gamma1, x1, PI)
        assert not permitted_oracle(gamma1, x1, DELTA)

    def test_re_deciding_a_precedent(self, gamma1):
        c = gamma1.case("c2")
        single = gamma1.restrict({"c2"})
        assert permitted_oracle(single, c.facts, c.outcome)

    def test_cap(self):
        u = FactorUniverse.of([f"p{i}" for i in range(5)], [f"d{i}" for i in range(5)])
        with pytest.raises(CapExceededError):
            permitted_oracle(CaseBase(u), (), PI)


class TestProperties:
    @settings(max_examples=300, deadline=None)
    @given(instances())
    def test_trichotomy_and_oracle_agreement(self, instance):
        cb, x = instance
        verdicts = [obligated(cb, x, PI), obligated(cb, x, DELTA)]
        assert sum(verdicts) <= 1
        assert permitted(cb, x, PI) or permitted(cb, x, DELTA)
        outcome = decide(cb, x)
        assert outcome.obligated is (PI if verdicts[0] else DELTA if verdicts[1] else None)
        for s in Side:
            assert permitted(cb, x, s) == permitted_oracle(cb, x, s)

    @given(instances())
    def test_a_fortiori(self, instance):
        cb, _ = instance
        for c in cb.cases:
            single = CaseBase(cb.universe, (c,))
            assert decide(single, c.facts).obligated is c.outcome

    @given(instances())
    def test_monotone_evidence(self, instance):
        cb, x = instance
        outcome = decide(cb, x)
        if outcome.obligated is None:
            return
        s = outcome.obligated
        fx = cb.situation(x)
        weak, strong = fx.project(s.opposite), fx.project(s)
        assert base_prefers(cb, weak, strong)
        assert preference_witnesses(cb, weak, strong) == outcome.witnesses_for(s) != ()
        assert preference_witnesses(cb, strong, weak) == ()


def test_hypothetical_id_does_not_collide():
    u = FactorUniverse.of(["a"], ["b"])
    cb = CaseBase(u, (Case.build(u, "<hypothetical>", {"a"}, {"a"}, PI),))
    assert permitted_oracle(cb, {"a", "b"}, DELTA) == permitted(cb, {"a", "b"}, DELTA)
