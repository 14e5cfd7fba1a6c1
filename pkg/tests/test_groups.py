import pytest
from hypothesis import given, strategies as st

from elusive.classes import enumerate_subgroup_classes
from elusive.groups import GroupSpec, c_value, group_order, kappa_monotone_check, kappa_rules
from elusive.numth import phi_rq, valuation
from elusive.oracle import psl2


def test_group_order_examples():
    assert group_order(GroupSpec("PSL", 2, 7)) == 168 == len(psl2(7))
    assert group_order(GroupSpec("PSL", 2, 2, 2)) == 60
    assert valuation(group_order(GroupSpec("PSp", 10, 3)), 11) == 2


@pytest.mark.parametrize("args", [("PSp", 5, 3), ("OmegaOdd", 7, 2), ("POmegaPlus", 6, 3),
                                  ("PSU", 3, 2), ("PSL", 2, 3), ("PSL", 3, 4)])
def test_invalid_specs(args):
    with pytest.raises(ValueError):
        GroupSpec(*args)


def test_c_value_examples():
    assert c_value(GroupSpec("PSL", 6, 2), 7) == phi_rq(7, 2) == 3
    assert c_value(GroupSpec("PSp", 6, 2), 7) == 6
    assert c_value(GroupSpec("OmegaOdd", 15, 19), 7) == 6
    assert c_value(GroupSpec("PSU", 6, 2), 3) == 1  # i = 2, unitary halving
    with pytest.raises(ValueError):
        c_value(GroupSpec("PSL", 4, 3), 3)


def test_kappa_rules_examples():
    assert kappa_rules(GroupSpec("POmegaMinus", 12, 2), 13).exact == 1  # m = 1
    assert c_value(GroupSpec("POmegaMinus", 12, 3), 7) == 6
    rep = kappa_rules(GroupSpec("POmegaMinus", 12, 3), 7)
    assert rep.exact == 1 and "floor.i" in rep.rule
    rep = kappa_rules(GroupSpec("OmegaOdd", 15, 19), 7)
    assert (rep.lower, rep.m, rep.delta) == (2, 2, 0)
    assert len(enumerate_subgroup_classes(GroupSpec("OmegaOdd", 15, 19), 7)) == 2
    rep = kappa_rules(GroupSpec("PSL", 4, 2, 4), 17)
    assert rep.m == 2 and rep.upper == 9


def test_kappa_rules_rejects_c1():
    with pytest.raises(ValueError):
        kappa_rules(GroupSpec("PSL", 5, 7), 3)


def test_kappa_monotone():
    # c = 2 on both sides
    assert kappa_monotone_check(GroupSpec("PSL", 3, 2, 2), GroupSpec("PSL", 7, 2, 2), 5)
    # c = 1: outside the hypotheses, checked only with them switched off
    t1, t2 = GroupSpec("PSL", 2, 7), GroupSpec("PSL", 5, 7)
    with pytest.raises(ValueError):
        kappa_monotone_check(t1, t2, 3)
    assert kappa_monotone_check(t1, t2, 3, check_hypotheses=False)
    with pytest.raises(ValueError):
        kappa_monotone_check(GroupSpec("PSL", 3, 2, 2), GroupSpec("PSL", 6, 2, 2), 5)


SPECS = [GroupSpec(fam, n, p, f) for fam, ns in
         [("PSL", range(6, 13)), ("PSU", range(6, 13)), ("PSp", range(6, 13, 2)),
          ("OmegaOdd", range(7, 13, 2)), ("POmegaPlus", (8, 10, 12)), ("POmegaMinus", (8, 10, 12))]
         for n in ns for p, f in [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2)]
         if not (fam == "OmegaOdd" and p == 2)]


@given(st.sampled_from(SPECS), st.sampled_from([3, 5, 7, 11, 13, 17, 19, 23]))
def test_kappa_lower_bound_property(spec, r):
    if r == spec.p or group_order(spec) % r or c_value(spec, r) < 2:
        return
    rep = kappa_rules(spec, r)
    assert rep.lower >= spec.n // (r - 1) - 1
    if rep.upper is not None:
        assert rep.lower <= rep.upper
