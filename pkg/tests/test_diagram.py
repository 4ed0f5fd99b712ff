"""Test diagram operations and the PD / Gauss codes"""

import numpy as np
import pytest

from brunnian_forge.errors import DiagramError, DiagramErrorKind
from brunnian_forge.topology.codes import (
    emit_gauss,
    emit_pd,
    parse_diagram_text,
    parse_gauss,
    parse_pd,
    pd_items,
)
from brunnian_forge.topology.diagram import (
    LinkDiagram,
    automorphism,
    delete_component,
    delete_components,
    disjoint_union,
    is_alternating,
    linking_matrix,
    linking_number,
    mirror,
    relabeled,
    split_families,
    validate,
)

HOPF_PD = "X[4,1,3,2], X[2,3,1,4]"


class TestValidate:
    """Test referential integrity checks"""

    def test_valid_diagrams(self, hopf, kink, two_circle_bigon):
        """Test that well-formed diagrams have no problems"""
        for d in (hopf, kink, two_circle_bigon, LinkDiagram.unlink(3)):
            assert validate(d) == []

    def test_dangling_crossing(self):
        """Test a crossing visited once"""
        d = LinkDiagram.build([[(0, True)]], {0: 1})
        kinds = [e.kind for e in validate(d)]
        assert DiagramErrorKind.DANGLING_CROSSING in kinds

    def test_double_over(self):
        """Test a crossing passed over twice"""
        d = LinkDiagram.build([[(0, True), (0, True)]], {0: 1})
        assert [e.kind for e in validate(d)] == [DiagramErrorKind.DOUBLE_OVER]

    def test_bad_sign(self):
        """Test a sign other than +1 or -1"""
        d = LinkDiagram.build([[(0, True), (0, False)]], {0: 2})
        assert [e.kind for e in validate(d)] == [DiagramErrorKind.BAD_ARITY]

    def test_unsigned_crossing(self):
        """Test a crossing missing from the sign table"""
        d = LinkDiagram.build([[(0, True), (0, False)]], {})
        assert [e.kind for e in validate(d)] == [DiagramErrorKind.DANGLING_CROSSING]


class TestLinking:
    """Test linking numbers and the linking matrix"""

    def test_hopf_linking_number(self, hopf):
        """Test the negative Hopf link"""
        assert linking_number(hopf, 0, 1) == -1
        assert linking_number(hopf, 1, 0) == -1

    def test_mirror_negates(self, hopf):
        """Test that mirroring flips the linking number"""
        assert linking_number(mirror(hopf), 0, 1) == 1
        assert mirror(mirror(hopf)) == hopf

    def test_matrix_symmetric_zero_diagonal(self, hopf):
        """Test the matrix shape"""
        lk = linking_matrix(hopf)
        assert lk.tolist() == [[0, -1], [-1, 0]]
        assert np.array_equal(lk, lk.T)

    def test_bigon_unlinked(self, two_circle_bigon):
        """Test that opposite crossings cancel"""
        assert linking_number(two_circle_bigon, 0, 1) == 0

    def test_same_component_rejected(self, hopf):
        """Test that lk(i, i) is an index error"""
        with pytest.raises(DiagramError) as exc:
            linking_number(hopf, 0, 0)
        assert exc.value.kind is DiagramErrorKind.INDEX_OUT_OF_RANGE

    def test_out_of_range(self, hopf):
        """Test an out-of-range component"""
        with pytest.raises(DiagramError) as exc:
            linking_number(hopf, 0, 5)
        assert exc.value.kind is DiagramErrorKind.INDEX_OUT_OF_RANGE


class TestStructure:
    """Test deletion, splitting and relabelling"""

    def test_delete_component(self, hopf):
        """Test deleting one Hopf component leaves a bare circle"""
        rest = delete_component(hopf, 0)
        assert rest.n_components == 1
        assert rest.crossing_count == 0
        assert rest.components == ((),)

    def test_delete_components(self, hopf):
        """Test deleting several components"""
        assert delete_components(hopf, [0, 1]).n_components == 0

    def test_split_families(self, hopf):
        """Test connected parts of a split union"""
        d = disjoint_union(hopf, LinkDiagram.unlink(1), hopf)
        assert d.n_components == 5
        assert split_families(d) == [
            frozenset({0, 1}),
            frozenset({2}),
            frozenset({3, 4}),
        ]
        assert validate(d) == []

    def test_alternating(self, hopf, two_circle_bigon):
        """Test alternation along components"""
        assert is_alternating(hopf)
        assert not is_alternating(two_circle_bigon)

    def test_relabeled_canonical_key(self, hopf):
        """Test that renumbering crossings leaves the key unchanged"""
        shifted = LinkDiagram.build(
            [[(7, True), (3, False)], [(3, True), (7, False)]], {3: -1, 7: -1}
        )
        assert relabeled(shifted) == relabeled(hopf)
        assert shifted.canonical_key() == hopf.canonical_key()

    def test_crossing_table(self, hopf):
        """Test derived crossing records"""
        c = hopf.crossings[0]
        assert (c.over_component, c.under_component, c.sign) == (0, 1, -1)


class TestCodes:
    """Test PD and Gauss text codes"""

    def test_parse_hopf_pd(self, hopf):
        """Test the standard Hopf PD code"""
        assert parse_pd(HOPF_PD) == hopf

    def test_emit_hopf_pd(self, hopf):
        """Test emitting PD numbers arcs along components"""
        assert emit_pd(hopf) == HOPF_PD

    def test_pd_wrapper_accepted(self, hopf):
        """Test the PD[...] wrapper"""
        assert parse_pd(f"PD[{HOPF_PD}]") == hopf

    def test_empty_pd_is_unknot(self):
        """Test that an empty code is a single crossing-free circle"""
        assert parse_pd("") == LinkDiagram.unlink(1)

    def test_circles(self):
        """Test crossing-free O items"""
        d = parse_pd("O[1], O[2]")
        assert d == LinkDiagram.unlink(2)
        assert emit_pd(d) == "O[1], O[2]"

    def test_pd_parse_errors(self):
        """Test malformed PD items"""
        for text in ("X[1,2,3]", "X[1,2,3,4", "Y[1]"):
            with pytest.raises(DiagramError) as exc:
                parse_pd(text)
            assert exc.value.kind is DiagramErrorKind.PARSE_ERROR

    def test_pd_dangling_arc(self):
        """Test an arc with a single endpoint"""
        with pytest.raises(DiagramError) as exc:
            parse_pd("X[1,2,3,4]")
        assert exc.value.kind is DiagramErrorKind.DANGLING_CROSSING

    def test_gauss_roundtrip(self, hopf, two_circle_bigon):
        """Test that Gauss codes keep crossing ids"""
        for d in (hopf, two_circle_bigon, LinkDiagram.unlink(2)):
            assert parse_gauss(emit_gauss(d)) == d

    def test_gauss_text(self, hopf):
        """Test the Gauss token format"""
        assert emit_gauss(hopf) == "O0- U1-\nO1- U0-"

    def test_gauss_sign_disagreement(self):
        """Test one crossing given both signs"""
        with pytest.raises(DiagramError) as exc:
            parse_gauss("O0+ U0-")
        assert exc.value.kind is DiagramErrorKind.INCONSISTENT_ORIENTATION

    def test_gauss_bad_token(self):
        """Test a token outside the grammar"""
        with pytest.raises(DiagramError) as exc:
            parse_gauss("Q1+")
        assert exc.value.kind is DiagramErrorKind.PARSE_ERROR

    def test_autodetect(self, hopf):
        """Test telling PD from Gauss text"""
        assert parse_diagram_text(HOPF_PD) == hopf
        assert parse_diagram_text("O0- U1-\nO1- U0-") == hopf


class TestAutomorphism:
    """Test component permutations realised by crossing bijections"""

    def test_hopf_swap(self, hopf):
        """Test swapping the Hopf components"""
        assert automorphism(hopf, (1, 0)) == {0: 1, 1: 0}

    def test_over_under_mismatch(self, two_circle_bigon):
        """Test the over circle cannot land on the under circle"""
        assert automorphism(two_circle_bigon, (1, 0)) is None
        assert automorphism(two_circle_bigon, (0, 1)) is not None

    def test_not_a_permutation(self, hopf):
        """Test repeated images"""
        assert automorphism(hopf, (0, 0)) is None


class TestSpherogram:
    """Test emitted PD codes read back by spherogram"""

    @pytest.mark.parametrize("name", ["hopf", "milnor4"])
    def test_linking_matrix(self, name, request):
        """Test spherogram finds the same components and linking numbers"""
        spherogram = pytest.importorskip("spherogram")
        fixture = request.getfixturevalue(name)
        d = getattr(fixture, "diagram", fixture)
        items, circles = pd_items(d)
        assert circles == []
        link = spherogram.Link([list(labels) for labels in items.values()])
        assert len(link.link_components) == d.n_components
        theirs = np.array(link.linking_matrix(), dtype=np.int64)
        assert np.array_equal(theirs, linking_matrix(d))
