"""Rewriting engine: orientation, completion, normal forms, comparison,
repair search.  The expected rule tables below were derived by hand from
the defining relations and are frozen as oracles."""

import pytest
from hypothesis import given, settings, strategies as st

from pathalg.algebra import (
    MonomialOrder,
    ONE,
    ZERO,
    default_order,
    poly,
    poly_mul,
    signature,
)
from pathalg.rewriting import (
    CompletionError,
    InsufficientWeightBoundError,
    OrderRejectedError,
    RepairError,
    RewriteRule,
    RewriteSystem,
    TruncationError,
    anti_automorphism_check,
    compare,
    complete,
    filtration_check,
    heredity_check,
    hilbert,
    irreducible_words,
    normal_form,
    orient,
    repair_search,
    required_weight_bound,
)
from pathalg.homology import COEFF_F2, path_space_homology
from pathalg.tables import BigradedDimTable


def completed(n: int, degree_bound: int = 40) -> RewriteSystem:
    sig = signature(n)
    return complete(orient(sig), required_weight_bound(sig, degree_bound))


# frozen completed rule tables; completion adds nothing to the oriented
# defining relations for these n
EXPECTED_RULES = {
    1: ["HH -> 0", "YH -> HY", "SH -> 1 + HS", "YS -> SY + YY", "SS -> 0"],
    2: ["TH -> H + HT", "TT -> T", "YH -> HY", "YT -> TY + Y", "HHH -> 0"],
    3: ["SH -> 1 + HS", "SS -> 0", "YH -> HY", "YS -> SY", "HHHH -> 0"],
    5: ["YH -> HY", "HHHHHH -> 0", "SH -> 1 + HS",
        "YS -> HHHHYY + SY", "SS -> 0"],
}


class TestOrientation:
    def test_orients_all_defining_relations(self):
        for n in (1, 2, 3, 4, 5, 6):
            rs = orient(signature(n))
            assert len(rs.rules) == 5
            order = rs.order
            for rule in rs.rules:
                for w in rule.rhs:
                    assert order.less(w, rule.lhs)

    def test_unit_weights_reject_the_exceptional_relation(self):
        # without the heavy middle letter the extra right-hand word of
        # the n = 1 mod 4 relation outweighs its left side
        flat = MonomialOrder(
            weights=(("H", 1), ("T", 1), ("S", 1), ("Y", 1)))
        with pytest.raises(OrderRejectedError):
            orient(signature(5), flat)

    def test_render(self):
        assert RewriteRule("SH", poly("", "HS")).render() == "SH -> 1 + HS"
        assert RewriteRule("SS", ZERO).render() == "SS -> 0"


class TestCompletion:
    @pytest.mark.parametrize("n", sorted(EXPECTED_RULES))
    def test_base_systems_are_already_confluent(self, n):
        rs = completed(n)
        assert [r.render() for r in rs.rules] == EXPECTED_RULES[n]
        assert rs.completion_status == "complete-up-to-bound"

    def test_completion_is_idempotent(self):
        rs = completed(3)
        again = complete(rs, rs.weight_bound)
        assert again.rules == rs.rules

    def test_collapse_is_detected(self):
        # inverting the degree-raising middle letter forces 1 = 0
        sig = signature(1)
        rs = orient(sig)
        poisoned = RewriteSystem(
            sig=sig, order=rs.order,
            rules=rs.rules + (RewriteRule("S", ONE),))
        with pytest.raises(CompletionError):
            complete(poisoned, 10)

    def test_truncation_surfaces_as_an_error(self):
        rs = complete(orient(signature(5)), 12)
        with pytest.raises(TruncationError):
            normal_form("Y" * 11 + "S", rs)

    def test_rules_respect_weights(self):
        for n in (1, 2, 3, 4, 5, 6, 7):
            rs = completed(n)
            wt = rs.order.weight
            for rule in rs.rules:
                assert all(wt(w) <= wt(rule.lhs) for w in rule.rhs)


class TestNormalForm:
    def test_examples(self):
        rs = completed(3)
        assert normal_form("SH", rs) == poly("", "HS")
        assert normal_form("SS", rs) == ZERO
        assert normal_form("YSH", rs) == poly("Y", "HSY")
        assert normal_form("HHHH", rs) == ZERO
        assert normal_form(poly("SH", "HS"), rs) == ONE

    def test_product_identities_odd_targets(self):
        # the two bracket identities that pin down the even-to-odd
        # transport of the tangent-level generator
        for n in (3, 5):
            rs = completed(n)
            lhs1 = normal_form("HHSYH", rs)
            rhs1 = normal_form(poly("HHHSY", "HHY"), rs)
            assert lhs1 == rhs1
            lhs2 = normal_form("HYHHS", rs)
            rhs2 = normal_form("HHHSY", rs)
            assert lhs2 == rhs2

    def test_even_transport_identity(self):
        rs = completed(2)
        assert normal_form(poly("TH", "HT", "H"), rs) == ZERO

    def test_irreducible_words_match_brute_force(self):
        rs = completed(2)
        lhss = [r.lhs for r in rs.rules]
        letters = rs.sig.alphabet

        def free(word):
            return not any(l in word for l in lhss)

        brute = set()
        stack = [""]
        while stack:
            w = stack.pop()
            if len(w) <= 4 and free(w):
                brute.add(w)
                for a in letters:
                    stack.append(w + a)
        assert set(irreducible_words(rs, 4)) == brute


@settings(max_examples=60, deadline=None)
@given(st.text(alphabet="HSY", min_size=0, max_size=6),
       st.text(alphabet="HSY", min_size=0, max_size=6))
def test_normal_form_is_a_congruence(u, v):
    rs = completed(3, degree_bound=20)
    lhs = normal_form(u + v, rs)
    rhs = normal_form(poly_mul(normal_form(u, rs), normal_form(v, rs)), rs)
    assert lhs == rhs


@settings(max_examples=60, deadline=None)
@given(st.lists(st.text(alphabet="HTY", min_size=0, max_size=6), max_size=4))
def test_normal_form_is_idempotent(words):
    rs = completed(2, degree_bound=20)
    p = poly(*words)
    once = normal_form(p, rs)
    assert normal_form(once, rs) == once


class TestChecks:
    @pytest.mark.parametrize("n", range(1, 7))
    def test_filtration_and_reversal(self, n):
        rs = completed(n, degree_bound=20)
        assert filtration_check(rs).passed
        assert anti_automorphism_check(signature(n), rs).passed

    def test_filtration_flags_level_raising_rules(self):
        sig = signature(2)
        order = default_order(sig)
        bad = RewriteSystem(sig=sig, order=order,
                            rules=(RewriteRule("HH", poly("Y")),))
        report = filtration_check(bad)
        assert not report.passed
        assert any(not item.passed for item in report.items)

    @pytest.mark.parametrize("n", range(1, 5))
    def test_heredity(self, n):
        report = heredity_check(n)
        assert report.passed, "\n".join(report.lines())


class TestHilbertAndCompare:
    def test_odd_case_matches_homology(self):
        for n in (1, 3):
            rs = completed(n)
            alg = hilbert(rs, 40)
            hom = path_space_homology(n, COEFF_F2, 40)
            report = compare(alg, hom)
            assert report.is_match, "\n".join(report.lines())

    def test_even_case_first_discrepancies(self):
        rs = completed(2)
        report = compare(hilbert(rs, 40), path_space_homology(2, COEFF_F2, 40))
        assert not report.is_match
        assert report.first_total_mismatch == (0, 2, 1)
        assert report.cell_mismatches[:4] == (
            (0, 1, 1, 0), (2, 1, 2, 1), (2, 2, 1, 0), (4, 2, 2, 1))

    def test_small_bound_is_refused(self):
        rs = complete(orient(signature(3)), 10)
        with pytest.raises(InsufficientWeightBoundError):
            hilbert(rs, 40)

    def test_compare_rejects_mixed_bounds(self):
        a = BigradedDimTable.from_dict({(0, 0): 1}, 5)
        b = BigradedDimTable.from_dict({(0, 0): 1}, 6)
        with pytest.raises(ValueError):
            compare(a, b)

    def test_hilbert_level_zero_column(self):
        rs = completed(4, degree_bound=12)
        table = hilbert(rs, 12)
        # level 0 is spanned by the powers of the degree-lowering letter
        assert [table.dim(d, 0) for d in range(5)] == [1, 1, 1, 1, 1]
        assert table.dim(5, 0) == 0


class TestRepairSearch:
    def test_even_candidates(self):
        hom = path_space_homology(2, COEFF_F2, 20)
        found = repair_search(signature(2), hom, 20)
        renders = sorted(a.render() for a in found)
        assert renders == ["{HHT -> 0, HHY -> 0}", "{HHT -> HH, HHY -> 0}"]
        for aug in found:
            assert compare(hilbert(aug.system, 20), hom).is_match
            assert filtration_check(aug.system).passed

    def test_repaired_systems_extend_to_the_full_bound(self):
        hom40 = path_space_homology(2, COEFF_F2, 40)
        found = repair_search(signature(2), hom40, 40)
        assert {a.render() for a in found} == {
            "{HHT -> 0, HHY -> 0}", "{HHT -> HH, HHY -> 0}"}

    def test_matching_presentation_is_rejected(self):
        hom = path_space_homology(3, COEFF_F2, 20)
        with pytest.raises(ValueError):
            repair_search(signature(3), hom, 20)

    def test_unreachable_target_raises(self):
        hom = path_space_homology(2, COEFF_F2, 12)
        cells = hom.as_dict()
        cells[(0, 3)] = 7
        target = BigradedDimTable.from_dict(cells, 12)
        with pytest.raises(RepairError):
            repair_search(signature(2), target, 12)
