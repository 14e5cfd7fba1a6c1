import pytest
from hypothesis import given, strategies as st

from elusive.classes import enumerate_element_classes
from elusive.decide import (PreconditionError, SubgroupCase, a_collection_coverage, box_clause,
                            conditions_box, conditions_diamond, conditions_star, decide_elusive,
                            decide_kappa_corollary, decide_subfield_corollary, degree_divisible,
                            diamond_clause, kappa_is_one, star_clause, subfield_atom)
from elusive.groups import GroupSpec, c_value, group_order, kappa_rules
from elusive.numth import valuation

OMEGA15 = GroupSpec("OmegaOdd", 15, 19)
A16 = SubgroupCase("A", d=16)
M24 = SubgroupCase.parse("S:M24,order=244823040")


def test_case_syntax_round_trip():
    for text in ["A:d=16", "B:B5", "lowdim:L2-A5", "S:M24,order=244823040",
                 "S:J2,order=604800,h0=1209600"]:
        assert str(SubgroupCase.parse(text)) == text
    assert SubgroupCase.parse("B:5") == SubgroupCase("B", case_id="B5")
    for bad in ["A:16", "C:1", "S:M24", "B:x"]:
        with pytest.raises(ValueError):
            SubgroupCase.parse(bad)


def test_clause_examples():
    assert star_clause(10, 6, "PSL") and star_clause(12, 6, "POmegaMinus")
    assert not star_clause(12, 6, "POmegaPlus")
    assert not diamond_clause(36, 3)
    assert diamond_clause(16, 3) and box_clause(16, 3, "POmegaMinus")
    assert not box_clause(6, 3, "POmegaMinus")
    assert box_clause(6, 3, "POmegaPlus")


def test_conditions_on_cases():
    assert c_value(OMEGA15, 7) == 6
    assert not conditions_star(OMEGA15, A16, 7)
    assert conditions_diamond(OMEGA15, A16, 7) and conditions_box(OMEGA15, A16, 7)
    assert not conditions_star(OMEGA15, A16, 19)  # r = p
    spec = GroupSpec("PSL", 7, 2)  # r = 127: c = 7 > n/2
    assert conditions_star(spec, SubgroupCase.parse("S:X,order=127"), 127)


def test_decide_examples():
    v = decide_elusive(GroupSpec("PSL", 2, 31), SubgroupCase.parse("lowdim:L2-A5"), 2)
    assert v.elusive and v.rule == "thm1.i"
    v = decide_elusive(OMEGA15, A16, 7)
    assert v.elusive and v.rule == "thm1.ii.c" and v.witness is None
    v = decide_elusive(GroupSpec("PSp", 10, 3), SubgroupCase.parse("B:1"), 11)
    assert v.elusive and v.rule == "thm1.iii" and v.row == "T4:B1/r=11"


def test_decide_rejects_indivisible_degree():
    spec = GroupSpec("PSL", 2, 11)
    case = SubgroupCase.parse("lowdim:L2-A5")
    assert not degree_divisible(spec, case, 2)
    with pytest.raises(PreconditionError) as exc:
        decide_elusive(spec, case, 2)
    assert exc.value.degree_divisible is False


def test_nonelusive_has_witness():
    v = decide_elusive(OMEGA15, A16, 5)
    assert not v.elusive and v.witness in enumerate_element_classes(OMEGA15, 5)
    v = decide_elusive(GroupSpec("PSL", 12, 2), M24, 3)
    assert not v.elusive and v.rule == "thm1.iv" and v.witness.e == 10
    # c = 3 exceeds the nu bound: no class-level witness is available
    v = decide_elusive(GroupSpec("PSL", 12, 2), M24, 7)
    assert not v.elusive and v.witness is None


def test_literal_clause_differs():
    spec = GroupSpec("POmegaMinus", 12, 2)
    case = SubgroupCase("A", d=13)
    assert decide_elusive(spec, case, 5, literal=True).elusive
    v = decide_elusive(spec, case, 5)
    assert not v.elusive and str(v.witness) == "[L1^3]"


def test_kappa_corollary_examples():
    v = decide_kappa_corollary(GroupSpec("PSU", 6, 2), SubgroupCase.parse("B:15"), 2)
    assert v.elusive and v.rule == "cor1.2.iii"
    v = decide_kappa_corollary(OMEGA15, A16, 7)
    assert v.elusive and v.rule == "cor1.2.ii" and v.kappa_one is False
    spec = GroupSpec("PSL", 12, 2)
    assert not kappa_is_one(spec, 7)
    v = decide_kappa_corollary(spec, M24, 7)
    assert not v.elusive and v.rule == "cor1.2"
    spec = GroupSpec("PSL", 6, 7)  # r = 5: c = 4 > n/2
    v = decide_kappa_corollary(spec, SubgroupCase.parse("S:X,order=5"), 5)
    assert v.elusive and v.rule == "cor1.2.i"


def test_kappa_corollary_needs_r_in_h0():
    with pytest.raises(PreconditionError):
        decide_kappa_corollary(GroupSpec("PSL", 2, 11), SubgroupCase.parse("lowdim:L2-A5"), 11)


def test_subfield_examples():
    # PSL6(q), q = q0^5
    assert decide_subfield_corollary(6, 7, 7, 5, 1, 7, "C5")
    assert decide_subfield_corollary(6, 11, 11, 7, 1, 11, "C5")
    assert decide_subfield_corollary(6, 7, 7, 5, 1, 5 + 2, "C5")
    assert decide_subfield_corollary(6, 13, 13, 7, 1, 7, "C5")  # r = k
    assert not decide_subfield_corollary(6, 13, 13, 7, 1, 11, "C5")
    # PSL7(q), unitary-type subgroup, q = q0^2
    assert decide_subfield_corollary(7, 7, 7, 2, 1, 7, "C8")
    assert decide_subfield_corollary(7, 11, 11, 2, 1, 11, "C8")
    assert not decide_subfield_corollary(7, 29, 29, 2, 1, 29, "C8")  # 7 | q0 - 1
    assert subfield_atom((5, 1), 5**3, 5, 1)
    with pytest.raises(PreconditionError):
        decide_subfield_corollary(5, 7, 7, 5, 1, 7, "C5")
    with pytest.raises(PreconditionError):
        decide_subfield_corollary(6, 7, 7, 2, 1, 7, "C8")


def test_coverage_examples():
    rep = a_collection_coverage(16, 19, 7)
    assert rep.elusive and [str(s) for _, shapes in rep.classes for s in shapes] == \
        ["7^1,1^9", "7^2,1^2"]
    rep = a_collection_coverage(16, 19, 5)
    assert not rep.elusive and rep.uncovered
    assert any(len(lab.blocks) > 1 for lab in rep.uncovered)
    rep = a_collection_coverage(10, 2, 2)
    assert [lab.decoration for lab in rep.uncovered] == ["a2"]
    with pytest.raises(PreconditionError):
        a_collection_coverage(10, 2, 23)


SPECS = [GroupSpec(fam, n, p, f) for fam, ns in
         [("PSL", range(6, 15)), ("PSU", range(6, 15)), ("PSp", range(6, 15, 2)),
          ("OmegaOdd", range(7, 15, 2)), ("POmegaPlus", (8, 10, 12, 14)),
          ("POmegaMinus", (8, 10, 12, 14))]
         for n in ns for p, f in [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (11, 1)]
         if not (fam == "OmegaOdd" and p == 2)]


@given(st.sampled_from(SPECS), st.sampled_from([3, 5, 7, 11, 13, 17, 19, 31]),
       st.integers(1, 3))
def test_star_elusive_implies_kappa_one(spec, r, a):
    v = valuation(group_order(spec), r) if group_order(spec) % r == 0 else 0
    if r == spec.p or a >= v:
        return
    case = SubgroupCase("S", socle="X", socle_order=r**a)
    verdict = decide_elusive(spec, case, r)
    assert verdict.rule == "thm1.iv"
    if verdict.elusive:
        assert kappa_rules(spec, r).exact == 1
        assert decide_kappa_corollary(spec, case, r).elusive
    else:
        w = verdict.witness
        assert w is None or (w.r == r and w.n == spec.n)
