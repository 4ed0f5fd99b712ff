"""Test the Kauffman bracket state sum"""

from brunnian_forge.topology.bracket import (
    LOOP,
    bracket,
    format_poly,
    normalized_bracket,
    poly_mul,
    unlink_bracket,
    writhe,
)
from brunnian_forge.topology.codes import pd_items
from brunnian_forge.topology.diagram import (
    LinkDiagram,
    delete_component,
    disjoint_union,
)


class TestPolynomials:
    """Test Laurent polynomial helpers"""

    def test_mul_cancels(self):
        """Test (A + A^-1)(A - A^-1) = A^2 - A^-2"""
        assert poly_mul({1: 1, -1: 1}, {1: 1, -1: -1}) == {-2: -1, 2: 1}

    def test_unlink(self):
        """Test one circle is 1 and each extra circle multiplies by the loop"""
        assert unlink_bracket(1) == {0: 1}
        assert unlink_bracket(2) == LOOP
        assert unlink_bracket(3) == {-4: 1, 0: 2, 4: 1}

    def test_format(self):
        """Test exponents print highest first"""
        assert format_poly({10: -1, 2: -1}) == "-A^10 - A^2"
        assert format_poly({0: 1}) == "1"
        assert format_poly({}) == "0"


class TestBracket:
    """Test brackets of small diagrams"""

    def test_kink_codes(self, kink):
        """Test the arc labels fed to the state sum"""
        assert pd_items(kink) == ({0: (2, 2, 1, 1)}, [])

    def test_kinks(self, kink):
        """Test curls of either sign normalize away"""
        negative = LinkDiagram.build([[(0, True), (0, False)]], {0: -1})
        assert bracket(kink) == {3: -1}
        assert bracket(negative) == {-3: -1}
        assert normalized_bracket(kink) == normalized_bracket(negative) == {0: 1}

    def test_bigon_is_unlink(self, two_circle_bigon):
        """Test two circles laid across each other"""
        assert writhe(two_circle_bigon) == 0
        assert normalized_bracket(two_circle_bigon) == unlink_bracket(2)

    def test_hopf(self, hopf):
        """Test the negative Hopf link"""
        assert bracket(hopf) == {-4: -1, 4: -1}
        assert normalized_bracket(hopf) == {2: -1, 10: -1}

    def test_free_circle(self, kink):
        """Test a crossing-free circle beside a curl"""
        d = disjoint_union(kink, LinkDiagram.unlink(1))
        assert normalized_bracket(d) == unlink_bracket(2)

    def test_deleted_ring_is_unlink(self, milnor4):
        """Test a tangled diagram of the three-component unlink"""
        d = delete_component(milnor4.diagram, 1)
        assert d.crossing_count > 0
        assert normalized_bracket(d) == unlink_bracket(3)

    def test_borromean_like(self, make_family):
        """Test the three-component Milnor link is told apart from the unlink"""
        value = normalized_bracket(make_family("milnor", n=3).diagram)
        assert value is not None
        assert value != unlink_bracket(3)

    def test_state_budget(self, milnor4):
        """Test giving up past the state budget"""
        assert bracket(milnor4.diagram, max_states=1) is None
