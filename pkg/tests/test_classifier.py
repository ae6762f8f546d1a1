import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lefdefect.classifier import (
    DefectReport,
    IsogenyFactor,
    IsogenySpec,
    classify,
    divisor_case,
    symbolic_picard_lower_bound,
    threefold_catalog,
)


def E(label, mult, cm):
    return IsogenyFactor("elliptic", mult, label, has_cm=cm)


def S(label, typ, rho, mult=1):
    return IsogenyFactor("surface", mult, label, albert_type=typ, picard=rho)


def other(label, dim, mult=1):
    return IsogenyFactor("simple_other", mult, label, dim=dim)


class TestValidation:
    def test_type_ii_forces_picard_3(self):
        with pytest.raises(ValueError, match="forces picard"):
            S("S", "II", 2)

    def test_type_iv_forces_picard_2(self):
        with pytest.raises(ValueError, match="forces picard"):
            S("S", "IV", 3)

    def test_type_iii_rejected(self):
        with pytest.raises(ValueError, match="I, II or IV"):
            S("S", "III", 2)

    def test_elliptic_needs_cm_flag(self):
        with pytest.raises(ValueError, match="cm flag"):
            IsogenyFactor("elliptic", 1, "E")

    def test_simple_other_needs_dim_3(self):
        with pytest.raises(ValueError, match="dimension >= 3"):
            other("A", 2)

    def test_dimension_one_spec_rejected(self):
        with pytest.raises(ValueError, match="dimension must be at least 2"):
            IsogenySpec((E("E", 1, True),))

    def test_conflicting_labels(self):
        with pytest.raises(ValueError, match="conflicting"):
            IsogenySpec((E("E", 1, True), E("E", 1, False)))


class TestClassify:
    def test_cm_cube(self):
        assert classify(IsogenySpec((E("E", 3, True),))).delta == 5

    def test_rm_times_cm_square(self):
        report = classify(IsogenySpec((E("E", 1, False), E("F", 2, True))))
        assert report.delta == 3
        assert report.witness_factor == "F"

    def test_surface_ii_with_curve(self):
        report = classify(IsogenySpec((S("S", "II", 3), E("E", 1, False))))
        assert (report.delta, report.case) == (2, "surface_II")

    def test_simple_threefold(self):
        report = classify(IsogenySpec((other("A", 3),)))
        assert (report.delta, report.case) == (0, "zero")

    @pytest.mark.parametrize("k", range(1, 6))
    def test_cm_formula(self, k):
        pad = other("Z", 3)
        assert classify(IsogenySpec((E("E", k, True), pad))).delta == 2 * k - 1
        assert classify(IsogenySpec((E("E", k, False), pad))).delta == k

    def test_tie_prefers_elliptic(self):
        # surface of rho 2 and a plain curve both offer delta 1; the
        # trichotomy attributes it to the elliptic factor
        report = classify(IsogenySpec((S("S", "I", 2), E("E", 1, False))))
        assert (report.delta, report.case) == (1, "elliptic")

    def test_permutation_invariance(self):
        a = IsogenySpec((E("E", 2, True), S("S", "IV", 2), other("A", 3)))
        b = IsogenySpec((other("A", 3), E("E", 2, True), S("S", "IV", 2)))
        assert classify(a).delta == classify(b).delta
        assert classify(a).case == classify(b).case

    def test_splitting_multiplicity(self):
        merged = IsogenySpec((E("E", 3, True),))
        split = IsogenySpec((E("E", 1, True), E("E", 1, True), E("E", 1, True)))
        assert split.factors[0].mult == 3
        assert classify(merged) == classify(split)


class TestDivisorCase:
    def test_high_iitaka(self):
        assert divisor_case(3) == 0
        assert divisor_case(7) == 0

    def test_surface_quotient(self):
        assert divisor_case(2, rho_B=3) == 2
        assert divisor_case(2, rho_B=1) == 0

    def test_elliptic_quotient(self):
        assert divisor_case(1, cm=True, k=2) == 3
        assert divisor_case(1, cm=False, k=4) == 4

    def test_impossible_base(self):
        with pytest.raises(ValueError, match="impossible case"):
            divisor_case(0)

    def test_missing_data(self):
        with pytest.raises(ValueError):
            divisor_case(2)
        with pytest.raises(ValueError):
            divisor_case(1, cm=True)


class TestThreefoldCatalog:
    def test_delta_multiset(self):
        deltas = [report.delta for _, report in threefold_catalog()]
        assert deltas == [5, 3, 2, 2, 1, 1, 0]

    def test_delta_two_realized_both_ways(self):
        rows = [(spec, rep) for spec, rep in threefold_catalog() if rep.delta == 2]
        cases = {rep.case for _, rep in rows}
        assert cases == {"surface_II", "elliptic"}

    def test_all_specs_are_threefolds(self):
        for spec, _ in threefold_catalog():
            assert spec.total_dim == 3

    def test_no_threefold_spec_reaches_four(self):
        # exhaustive check over dimension-3 factorizations: the defect lands
        # in {0, 1, 2, 3, 5}, never 4
        specs = []
        for cm1 in (True, False):
            specs.append(IsogenySpec((E("E", 3, cm1),)))
            for cm2 in (True, False):
                specs.append(IsogenySpec((E("E", 2, cm1), E("F", 1, cm2))))
                for cm3 in (True, False):
                    specs.append(
                        IsogenySpec((E("E", 1, cm1), E("F", 1, cm2), E("G", 1, cm3)))
                    )
            for typ, rho_choices in (("I", (1, 2)), ("II", (3,)), ("IV", (2,))):
                for rho in rho_choices:
                    specs.append(IsogenySpec((S("S", typ, rho), E("E", 1, cm1))))
        specs.append(IsogenySpec((other("A", 3),)))
        seen = set()
        for spec in specs:
            delta = classify(spec).delta
            assert delta in {0, 1, 2, 3, 5}
            seen.add(delta)
        assert seen == {0, 1, 2, 3, 5}


factor_strategy = st.one_of(
    st.tuples(st.sampled_from(["elliptic"]), st.integers(1, 3), st.booleans()).map(
        lambda t: ("elliptic", t[1], t[2], None, None, 0)
    ),
    st.sampled_from(
        [("surface", 1, None, "I", 1, 0), ("surface", 1, None, "I", 2, 0),
         ("surface", 1, None, "II", 3, 0), ("surface", 1, None, "IV", 2, 0)]
    ),
    st.tuples(st.integers(3, 4)).map(lambda t: ("simple_other", 1, None, None, None, t[0])),
)


def _build(spec_tuples):
    factors = []
    for i, (kind, mult, cm, typ, rho, dim) in enumerate(spec_tuples):
        label = f"F{i}"
        if kind == "elliptic":
            factors.append(E(label, mult, cm))
        elif kind == "surface":
            factors.append(S(label, typ, rho, mult))
        else:
            factors.append(other(label, dim, mult))
    return IsogenySpec(tuple(factors))


class TestClassifierProperties:
    @given(st.lists(factor_strategy, min_size=1, max_size=4), factor_strategy)
    @settings(max_examples=120, deadline=None)
    def test_monotone_under_adding_factors(self, base, extra):
        try:
            before = classify(_build(base))
        except ValueError:
            return  # dimension-1 base
        after = classify(_build(base + [extra]))
        assert after.delta >= before.delta

    @given(st.lists(factor_strategy, min_size=1, max_size=4))
    @settings(max_examples=120, deadline=None)
    def test_bounded_by_picard_minus_one(self, tuples):
        try:
            spec = _build(tuples)
        except ValueError:
            return
        assert classify(spec).delta <= symbolic_picard_lower_bound(spec) - 1
