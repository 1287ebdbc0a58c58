import random
from fractions import Fraction

import pytest

import bbquiver as bq
from bbquiver.cells import Representation, _degree_candidates, graded_pieces
from bbquiver.covering import CoveringDimVector
from bbquiver.errors import UnsupportedError, ValidationError

from conftest import type1_beta


def simple_rep(quiver, vertex):
    dims = tuple(1 if v == vertex else 0 for v in quiver.vertices)
    return Representation(quiver, dims, {})


class TestHomExt:
    def test_simples_across_arrows(self, k3):
        si, sj = simple_rep(k3, "i"), simple_rep(k3, "j")
        assert bq.hom_ext(si, sj) == (0, 3)
        assert bq.hom_ext(sj, si) == (0, 0)

    def test_identity_hom(self, k3):
        m = Representation(k3, (2, 3), {"a1": [[1, 0], [0, 1], [0, 0]],
                                        "a2": [[0, 0], [1, 0], [0, 1]],
                                        "a3": [[0, 1], [0, 0], [1, 0]]})
        hom, _ = bq.hom_ext(m, m)
        assert hom >= 1

    def test_shape_guard(self, k3):
        with pytest.raises(ValidationError):
            Representation(k3, (2, 3), {"a1": [[1, 0]]})

    def test_ext_matches_weight_dimension(self, k3, w3, k3_classes, k3_lifts):
        rng = random.Random(3)
        for beta, rep in zip(k3_classes, k3_lifts):
            table = bq.weight_support(k3, w3, beta)
            chis = {c for (c,) in table} | {rng.randint(-600, 600) for _ in range(6)}
            for c in chis:
                if c == 0:
                    continue
                _, ext = bq.covering_hom_ext(rep, rep.shift(-c))
                assert ext == bq.weight_dimension(k3, w3, beta, (c,))


class TestBuildFixedRep:
    def test_unit_reproduces_printed_1231_matrices(self, k3, w3):
        beta = type1_beta(k3, w3, "1231")
        rep = bq.build_fixed_rep(k3, w3, beta, "unit")
        plain = rep.plain()
        assert plain.matrix("a1") == ((0, 0), (1, 0), (0, 1))
        assert plain.matrix("a2") == ((1, 0), (0, 0), (0, 0))
        assert plain.matrix("a3") == ((0, 1), (0, 0), (0, 0))
        hom, ext = bq.covering_hom_ext(rep, rep)
        assert (hom, ext) == (1, 0)

    def test_real_root_rigidity(self, k3, w3, k3_classes, k3_lifts):
        for beta, rep in zip(k3_classes, k3_lifts):
            if bq.euler_form_covering(k3, w3, beta, beta) == 1:
                hom, ext = bq.covering_hom_ext(rep, rep)
                assert (hom, ext) == (1, 0)

    def test_unit_fails_on_type2_star(self, k3, w3):
        support = {("i", (0,)): 2}
        for k in (1, 2, 3):
            support[("j", w3.of(f"a{k}"))] = 1
        beta = bq.canonicalize(CoveringDimVector.from_dict(1, support))
        with pytest.raises(UnsupportedError):
            bq.build_fixed_rep(k3, w3, beta, "unit")
        rep = bq.build_fixed_rep(k3, w3, beta, "random", seed=0)
        hom, _ = bq.covering_hom_ext(rep, rep)
        assert hom == 1

    def test_random_is_deterministic(self, k3, w3):
        beta = type1_beta(k3, w3, "3232")
        a = bq.build_fixed_rep(k3, w3, beta, "random", seed=4)
        b = bq.build_fixed_rep(k3, w3, beta, "random", seed=4)
        assert a.blocks == b.blocks


class TestGradedPieces:
    def test_large_degree_is_zero(self, k3, w3, k3_lifts):
        rep = k3_lifts[0]
        big = max(_degree_candidates(rep)) + 1
        u, r, ad = graded_pieces(rep, big)
        assert u == [] and r == []

    def test_dimension_count_equals_att_plus(self, k3, w3, k3_classes, k3_lifts):
        for beta, rep in zip(k3_classes, k3_lifts):
            ap, _, _ = bq.attractor_dims(k3, w3, beta)
            total = 0
            for k in _degree_candidates(rep):
                u, rr, _ = graded_pieces(rep, k)
                total += len(rr) - len(u)
            assert total == ap

    def test_ad_injective(self, k3, w3, k3_lifts):
        from bbquiver.linalg import rank

        for rep in k3_lifts:
            for k in _degree_candidates(rep):
                u, rr, ad = graded_pieces(rep, k)
                assert rank(ad) == len(u)


class TestCellCharts:
    def test_1231_chart_empty(self, k3, w3):
        rep = bq.build_fixed_rep(k3, w3, type1_beta(k3, w3, "1231"), "unit")
        chart = bq.choose_complements(rep)
        assert chart.total_dim == 0
        assert bq.emit_cell_table(chart).star_count() == 0

    def test_3232_chart_all_in_first_arrow(self, k3, w3):
        rep = bq.build_fixed_rep(k3, w3, type1_beta(k3, w3, "3232"), "unit")
        chart = bq.choose_complements(rep)
        assert chart.total_dim == 6
        assert {fc[0] for fc in chart.free_coordinates()} == {"a1"}
        table = bq.emit_cell_table(chart)
        assert table.patterns["a1"] == [["*", "*"]] * 3
        assert table.patterns["a2"] == [["0", "0"], ["1", "0"], ["0", "1"]]
        assert table.patterns["a3"] == [["1", "0"], ["0", "1"], ["0", "0"]]

    def test_multiset_of_chart_dimensions(self, k3, w3, k3_classes, k3_lifts):
        dims = sorted(bq.choose_complements(rep).total_dim for rep in k3_lifts)
        assert dims == [0, 1, 2, 2, 2, 3, 3, 3, 4, 4, 4, 5, 6]

    def test_star_count_matches_dimension(self, k3, w3, k3_lifts):
        for rep in k3_lifts:
            chart = bq.choose_complements(rep)
            assert bq.emit_cell_table(chart).star_count() == chart.total_dim

    def test_charts_match_attractors(self, k3, w3, k3_classes, k3_lifts):
        for beta, rep in zip(k3_classes, k3_lifts):
            ap, _, _ = bq.attractor_dims(k3, w3, beta)
            assert bq.choose_complements(rep).total_dim == ap

    def test_k4_normal_form_chart(self):
        quiver = bq.kronecker_quiver(4)
        w = bq.generic_rank1_weights(quiver)
        lab = bq.normal_form_label(3, 1)
        assert bq.d1_attractor(lab, "minus") == 0
        beta = bq.label_to_beta(lab, w, quiver)
        rep = bq.build_fixed_rep(quiver, w, beta, "unit")
        chart = bq.choose_complements(rep)
        assert chart.total_dim == (2 * 2 + 1) * (2 * 1 + 1) - 3


class TestTwistedFiltration:
    def test_full_space_everywhere(self, k3):
        m = Representation(k3, (2, 3), {"a1": [[1, 0], [0, 1], [0, 0]],
                                        "a2": [[0, 0], [1, 0], [0, 1]],
                                        "a3": [[0, 1], [0, 0], [1, 0]]})
        w = bq.generic_rank1_weights(k3)
        filt = {
            "i": {-1000: [[1, 0], [0, 1]]},
            "j": {-1000: [[1, 0, 0], [0, 1, 0], [0, 0, 1]]},
        }
        ok, gr = bq.twisted_filtration_check(m, filt, w)
        assert ok
        assert gr.beta.total() == 5
        assert gr.beta.characters() == [(-1000,)]

    def test_chart_points_attract(self, k3, w3, k3_classes, k3_lifts):
        rng = random.Random(9)
        for beta, rep in zip(k3_classes, k3_lifts):
            chart = bq.choose_complements(rep)
            filt = bq.standard_filtration(rep)
            vals = [Fraction(rng.randint(-9, 9)) for _ in range(chart.total_dim)]
            pt = chart.sample_point(vals)
            ok, gr = bq.twisted_filtration_check(pt, filt, w3)
            assert ok
            assert bq.graded_isomorphic(gr, rep)

    def test_violation_detected(self, k3, w3):
        rep = bq.build_fixed_rep(k3, w3, type1_beta(k3, w3, "1231"), "unit")
        filt = bq.standard_filtration(rep)
        plain = rep.plain()
        mats = {a: [list(row) for row in plain.matrix(a)] for a in plain.matrices}
        # send the lowest source level above its allowed target level
        mats["a3"][0][0] = Fraction(1)
        bad = Representation(k3, plain.dims, mats)
        ok, gr = bq.twisted_filtration_check(bad, filt, w3)
        assert not ok and gr is None

    def test_non_nested_rejected(self, k3, w3):
        rep = bq.build_fixed_rep(k3, w3, type1_beta(k3, w3, "1231"), "unit")
        plain = rep.plain()
        filt = bq.standard_filtration(rep)
        filt["j"] = {0: [[1, 0, 0], [0, 1, 0], [0, 0, 1]], 1: [[0, 0, 1]]}
        with pytest.raises(ValidationError):
            bq.twisted_filtration_check(plain, filt, w3)
