"""平面图、拆解树与纽结表测试"""

import json

import pandas as pd
import pytest

from src.algebra.laurent_ring import LaurentPolynomial
from src.config.constants import CoefficientRing
from src.knots.corpus import corpus_report, knot_alexander, load_corpus, resolve_knot
from src.knots.diagram import (
    braid_closure,
    crossing_change,
    oriented_smoothing,
    parse_pd,
    remove_kinks,
    torus_knot_2,
    traverse,
)
from src.knots.skein import (
    Branch,
    Leaf,
    alexander_from_diagram,
    alexander_module_smith,
    conway_from_tree,
    load_tree,
    mod2_class_key,
    mod2_partition,
    resolution_tree,
    theta_from_tree,
    tree_from_dict,
    tree_size,
    tree_to_dict,
)
from src.utils.errors import DomainError, ParityError, ParseError, ValidationError

TREFOIL_PD = "X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)"


class TestDiagram:

    def test_parse_trefoil(self):
        diagram = parse_pd(TREFOIL_PD)
        assert diagram.crossing_count == 3
        assert diagram.is_knot()
        assert abs(diagram.writhe) == 3
        assert parse_pd(diagram.to_pd()) == diagram

    def test_empty_code_is_unknot(self):
        diagram = parse_pd("")
        assert diagram.crossing_count == 0
        assert diagram.is_knot()

    @pytest.mark.parametrize("text", ["X(1,2,3,4)", "X(1,2,3)", "X(1,4,2,5);garbage;X(3,6,4,1)"])
    def test_malformed(self, text):
        with pytest.raises(ParseError):
            parse_pd(text)

    def test_crossing_change_is_involutive(self):
        diagram = parse_pd(TREFOIL_PD)
        changed = crossing_change(diagram, 0)
        assert changed.signs[0] == -diagram.signs[0]
        assert sorted(changed.crossings[0]) == sorted(diagram.crossings[0])
        assert crossing_change(changed, 0) == diagram

    def test_smoothing_a_knot_crossing_gives_two_components(self):
        diagram = parse_pd(TREFOIL_PD)
        smoothed = oriented_smoothing(diagram, 0)
        assert smoothed.crossing_count == 2
        assert smoothed.component_count == 2

    def test_kink_removal(self):
        diagram = remove_kinks(braid_closure([1], 2))
        assert diagram.crossing_count == 0
        assert diagram.is_knot()

    def test_traverse_visits_each_crossing_twice(self):
        diagram = parse_pd(TREFOIL_PD)
        path = traverse(diagram, 1)
        assert len(path) == 6
        assert path[-1][2] == 1
        assert sorted(index for index, _, _ in path) == [0, 0, 1, 1, 2, 2]
        assert sum(1 for _, over, _ in path if over) == 3

    def test_braid_components(self):
        assert braid_closure([1, 1], 2).component_count == 2
        assert braid_closure([1, 1, 1], 2).is_knot()
        assert braid_closure([], 3).component_count == 3

    @pytest.mark.parametrize("word,strands", [([0], None), ([2], 2)])
    def test_bad_braid(self, word, strands):
        with pytest.raises(ParseError):
            braid_closure(word, strands)

    def test_torus_knot(self):
        assert torus_knot_2(5).crossing_count == 5
        with pytest.raises(ParseError):
            torus_knot_2(0)


class TestAlexander:

    def test_trefoil_from_pd(self, poly):
        assert alexander_from_diagram(parse_pd(TREFOIL_PD)) == poly("t^-1 - 1 + t")

    def test_unknot(self):
        assert alexander_from_diagram(parse_pd("")) == LaurentPolynomial.one()

    def test_link_refused_by_matrix_route(self):
        with pytest.raises(DomainError):
            alexander_from_diagram(braid_closure([1, 1], 2))

    def test_mirror_has_same_polynomial(self):
        assert alexander_from_diagram(torus_knot_2(-3)) == alexander_from_diagram(torus_knot_2(3))

    def test_corpus_oracle(self, corpus):
        assert len(corpus) >= 11
        for name, record in corpus.items():
            assert alexander_from_diagram(record.diagram()) == record.expected(), name

    def test_smith_form_of_alexander_matrix(self):
        form = alexander_module_smith(parse_pd(TREFOIL_PD))
        assert form.diagonal[-1].is_zero()
        product = LaurentPolynomial.one(("t",), CoefficientRing.RATIONALS)
        for factor in form.invariant_factors():
            product = product * factor
        expected = LaurentPolynomial.parse("t^-1 - 1 + t", ("t",), CoefficientRing.RATIONALS)
        assert product.normalize_up_to_unit() == expected.normalize_up_to_unit()

    def test_smith_form_needs_crossings(self):
        with pytest.raises(DomainError):
            alexander_module_smith(parse_pd(""))


class TestResolutionTree:

    def test_tree_route_matches_matrix_route(self, corpus):
        for name, record in corpus.items():
            diagram = record.diagram()
            tree = resolution_tree(diagram)
            assert theta_from_tree(tree) == alexander_from_diagram(diagram), name

    def test_trefoil_conway(self):
        tree = resolution_tree(parse_pd(TREFOIL_PD))
        assert conway_from_tree(tree) == LaurentPolynomial.parse("1 + z^2", ("z",))
        assert tree_size(tree) >= 3

    def test_leaves(self):
        assert conway_from_tree(Leaf(1)) == LaurentPolynomial.one(("z",))
        assert conway_from_tree(Leaf(3)).is_zero()
        with pytest.raises(ValidationError):
            conway_from_tree(Leaf(0))

    def test_hand_built_tree(self):
        # K₊ = K₋ + z·K₀，K₋ 为平凡纽结，K₀ 为 Hopf 链环（z）
        hopf = Branch(0, Leaf(1), negative_child=Leaf(2))
        tree = Branch(0, hopf, negative_child=Leaf(1))
        assert conway_from_tree(tree) == LaurentPolynomial.parse("1 + z^2", ("z",))

    def test_two_component_link_has_odd_conway(self):
        tree = resolution_tree(braid_closure([1, 1], 2))
        conway = conway_from_tree(tree)
        assert all(e % 2 == 1 for e in conway.univariate_terms())
        with pytest.raises(ParityError):
            theta_from_tree(tree)

    def test_branch_needs_exactly_one_switched_child(self):
        with pytest.raises(ValidationError):
            conway_from_tree(Branch(0, Leaf(1)))
        with pytest.raises(ValidationError):
            tree_from_dict({'crossing': 0, 'resolved_child': {'leaf': True, 'components': 1}})

    def test_dict_roundtrip(self, tmp_path):
        tree = resolution_tree(torus_knot_2(5))
        path = tmp_path / "tree.json"
        path.write_text(json.dumps(tree_to_dict(tree)), encoding="utf-8")
        loaded = load_tree(path)
        assert loaded == tree
        assert theta_from_tree(loaded) == alexander_from_diagram(torus_knot_2(5))

    def test_malformed_tree_file(self, tmp_path):
        path = tmp_path / "tree.json"
        path.write_text(json.dumps({'leaf': True}), encoding="utf-8")
        with pytest.raises(ParseError):
            load_tree(path)


class TestMod2:

    def test_trefoil_and_figure_eight_agree(self, poly):
        assert mod2_class_key(poly("t^-1 - 1 + t")) == mod2_class_key(poly("-t^-1 + 3 - t"))
        assert mod2_class_key(poly("t^-1 - 1 + t")) == "1 + t + t^2"

    def test_partition(self, poly):
        polys = [poly("t^-1 - 1 + t"), poly("1"), poly("-t^-1 + 3 - t"), poly("t^-2 - t^-1 + 1 - t + t^2")]
        assert mod2_partition(polys) == [[0, 2], [1], [3]]


class TestCorpus:

    def test_load(self, corpus):
        assert {'0_1', '3_1', '4_1', '8_19', '9_1'} <= set(corpus)

    @pytest.mark.parametrize("name,crossings", [
        ("trefoil", 3), ("figure-eight", 4), ("T(2,7)", 7), ("T(2, -3)", 3), ("5_2", 6),
    ])
    def test_resolve(self, corpus, name, crossings):
        assert resolve_knot(name, corpus).crossing_count == crossings

    def test_resolve_errors(self, corpus):
        with pytest.raises(ParseError):
            resolve_knot("T(2,4)", corpus)
        with pytest.raises(ParseError):
            resolve_knot("10_161", corpus)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError):
            load_corpus(tmp_path / "missing.json")

    def test_tree_route_helper(self, corpus):
        diagram = corpus['4_1'].diagram()
        assert knot_alexander(diagram, use_tree=True) == knot_alexander(diagram)

    def test_report(self, corpus):
        df = corpus_report(corpus=corpus, workers=2)
        assert isinstance(df, pd.DataFrame)
        assert len(df) == len(corpus)
        assert df['expected_ok'].all()
        assert df['tree_ok'].dropna().all()
        assert df.loc[df['name'] == '3_1', 'conway'].item() == "1 + z^2"

    def test_report_unknown_name(self, corpus):
        with pytest.raises(ValidationError):
            corpus_report(names=['3_1', 'nope'], corpus=corpus)
