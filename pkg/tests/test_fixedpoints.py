import pytest

import bbquiver as bq
from bbquiver.covering import CoveringDimVector
from bbquiver.errors import InconsistencyError, UnsupportedError, ValidationError

from conftest import type1_beta


def type2_beta(k3, w3):
    support = {("i", (0,)): 2}
    for k in (1, 2, 3):
        support[("j", w3.of(f"a{k}"))] = 1
    return bq.canonicalize(CoveringDimVector.from_dict(1, support))


class TestWeightDimension:
    def test_isolated_zero_weight(self, k3, w3, k3_classes):
        for beta in k3_classes:
            assert bq.weight_dimension(k3, w3, beta, (0,)) == 0

    def test_type2_plus_side(self, k3, w3):
        beta = type2_beta(k3, w3)
        table = bq.weight_support(k3, w3, beta)
        assert sum(v for (c,), v in table.items() if c > 0) == 3

    def test_total_is_moduli_dimension(self, k3, w3, k3_classes):
        for beta in k3_classes:
            table = bq.weight_support(k3, w3, beta)
            zero = bq.weight_dimension(k3, w3, beta, (0,))
            assert sum(table.values()) + zero == 6

    def test_negative_raises(self, k3, w3):
        # two units of i at one level, one j unit: no stable lift exists
        beta = CoveringDimVector.from_dict(1, {("i", (0,)): 2, ("j", w3.of("a1")): 3})
        with pytest.raises(InconsistencyError):
            bq.weight_support(k3, w3, beta)


class TestWeightSupport:
    def test_single_unit(self, k3, w3):
        beta = CoveringDimVector.from_dict(1, {("i", (0,)): 1})
        assert bq.weight_support(k3, w3, beta) == {}

    def test_type2_total(self, k3, w3):
        table = bq.weight_support(k3, w3, type2_beta(k3, w3))
        assert sum(table.values()) == 6

    def test_shift_covariance(self, k3, w3, k3_classes):
        for beta in k3_classes[:4]:
            moved = bq.shift(beta, (-17,))
            assert bq.weight_support(k3, w3, moved) == bq.weight_support(k3, w3, beta)


class TestOneParamSubgroup:
    def test_lemma_example(self):
        lam = bq.choose_1psg([(1, -1), (0, 2)], 2)
        assert lam.exponents == (3, 1)
        assert lam.bound == 2
        assert lam.pair((1, -1)) == 2 > 0

    def test_rank_one(self):
        lam = bq.choose_1psg([(3,), (-2,)], 1)
        assert lam.exponents == (1,)

    def test_sign_matches_first_nonzero(self):
        lam = bq.choose_1psg([(0, 2)], 2)
        assert lam.pair((0, 2)) == 2 > 0

    def test_sign_rule_exhaustive(self):
        chars = [(a, b) for a in range(-2, 3) for b in range(-2, 3) if (a, b) != (0, 0)]
        lam = bq.choose_1psg(chars, 2)
        for chi in chars:
            first = chi[0] if chi[0] != 0 else chi[1]
            assert (lam.pair(chi) > 0) == (first > 0)

    def test_zero_rejected(self):
        with pytest.raises(ValidationError):
            bq.choose_1psg([(0, 0), (1, 0)], 2)


class TestAttractorDims:
    def test_type2(self, k3, w3):
        assert bq.attractor_dims(k3, w3, type2_beta(k3, w3)) == (3, 3, 0)

    def test_label_1231_no_cell(self, k3, w3):
        ap, am, d0 = bq.attractor_dims(k3, w3, type1_beta(k3, w3, "1231"))
        assert (ap, d0) == (0, 0)

    def test_label_3232_open_cell(self, k3, w3):
        assert bq.attractor_dims(k3, w3, type1_beta(k3, w3, "3232")) == (6, 0, 0)

    def test_rank2_rejected(self, k3):
        w2 = bq.WeightAssignment(2, {f"a{k}": (k, 0) for k in (1, 2, 3)})
        beta = CoveringDimVector.from_dict(2, {("i", (0, 0)): 1})
        with pytest.raises(UnsupportedError):
            bq.attractor_dims(k3, w2, beta)

    def test_balance(self, k3, w3, k3_components):
        for comp in k3_components:
            assert comp.att_plus + comp.att_minus + comp.dim_component == 6


class TestHigherRankReduction:
    def test_weist_action_matches_generic_rank1(self, k3):
        # one torus factor per arrow, acting by its own coordinate
        w = bq.WeightAssignment(3, {"a1": (1, 0, 0), "a2": (0, 1, 0), "a3": (0, 0, 1)})
        classes = bq.enumerate_compatible(k3, w, (2, 3), (1, 0))
        assert len(classes) == 13
        comps = [bq.analyze_component(k3, w, b) for b in classes]
        all_chars = set()
        for c in comps:
            all_chars.update(c.weight_table)
        lam = bq.choose_1psg(all_chars, 3)
        comps = [bq.analyze_component(k3, w, c.beta, lam) for c in comps]
        plus = sorted(c.att_plus for c in comps)
        assert plus == [0, 1, 2, 2, 2, 3, 3, 3, 4, 4, 4, 5, 6]
        for c in comps:
            assert c.att_plus + c.att_minus + c.dim_component == 6


class TestGenericNormalForm:
    def test_3232_is_normal_form(self, k3, w3):
        assert bq.generic_normal_form_test(k3, w3, type1_beta(k3, w3, "3232"))

    def test_type2_is_not(self, k3, w3):
        assert not bq.generic_normal_form_test(k3, w3, type2_beta(k3, w3))

    def test_unique_among_components(self, k3, w3, k3_classes):
        hits = [b for b in k3_classes if bq.generic_normal_form_test(k3, w3, b)]
        assert len(hits) == 1

    def test_positive_dimensional_fails(self, k3, w3):
        star5 = bq.Quiver.from_arrows(
            ("c", *(f"p{k}" for k in range(1, 6))),
            [(f"f{k}", "c", f"p{k}") for k in range(1, 6)],
        )
        w = bq.generic_rank1_weights(star5)
        beta = CoveringDimVector.from_dict(
            1, {("c", (0,)): 2, **{(f"p{k}", w.of(f"f{k}")): 1 for k in range(1, 6)}}
        )
        assert bq.euler_form_covering(star5, w, beta, beta) != 1
        assert not bq.generic_normal_form_test(star5, w, beta)
