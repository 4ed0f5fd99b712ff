"""Test sphere counts, stable-disk certificates and the (sN) condition"""

import random

import pytest

from brunnian_forge.errors import IncompleteAssignmentError, RegistryError
from brunnian_forge.topology.diagram import LinkDiagram
from brunnian_forge.topology.presentation import (
    ClaspPattern,
    Disk,
    DiskRegistry,
    LinkPresentation,
    Piercing,
    Side,
)
from brunnian_forge.topology.stability import (
    SideAssignment,
    SnVia,
    StabilityStatus,
    certify_stable,
    clasp_chain_certificate,
    sn_check,
    sphere_crossing_count,
    stable_disk_certificate,
)
from brunnian_forge.topology.words import CyclicWord, Letter, inverse, parse_word

# [[g1, g2], g3]
NESTED = CyclicWord(parse_word("g1 g2 g1^-1 g2^-1 g3 g2 g1 g2^-1 g1^-1 g3^-1"))


def assignment(g2: Side, g3: Side, pps: Side = Side.POS) -> SideAssignment:
    return SideAssignment("g1", {"g2": g2, "g3": g3}, pps)


class TestSphereCount:
    """Test sphere-crossing counts"""

    def test_same_side_case(self):
        """Test both side generators beside the positive side"""
        assert sphere_crossing_count(NESTED, assignment(Side.POS, Side.POS)) == 4

    def test_split_case(self):
        """Test g2 opposite and g3 beside the positive side"""
        assert sphere_crossing_count(NESTED, assignment(Side.NEG, Side.POS)) == 8

    def test_missing_side(self):
        """Test a generator with no side"""
        with pytest.raises(IncompleteAssignmentError):
            sphere_crossing_count(NESTED, SideAssignment("g1", {"g2": Side.POS}))

    def test_pierced_only(self):
        """Test a word of pierced letters alone never crosses the sphere"""
        word = CyclicWord(parse_word("g1 g1^-1 g1 g1^-1"))
        assert sphere_crossing_count(word, SideAssignment("g1", {})) == 0

    def test_rotation_and_swap_invariance(self):
        """Test invariance under rotating or inverting the word and swapping sides"""
        rng = random.Random(314)
        sides = (Side.POS, Side.NEG)
        for _ in range(1000):
            letters = [
                Letter(rng.choice(("g1", "g2", "g3", "g4")), rng.choice((1, -1)))
                for _ in range(rng.randint(1, 24))
            ]
            word = CyclicWord(letters)
            a = SideAssignment(
                "g1",
                {g: rng.choice(sides) for g in ("g2", "g3", "g4")},
                rng.choice(sides),
            )
            count = sphere_crossing_count(word, a)
            assert sphere_crossing_count(word.rotated(rng.randrange(20)), a) == count
            assert sphere_crossing_count(word, a.swapped()) == count
            assert sphere_crossing_count(CyclicWord(inverse(letters)), a) == count


class TestClaspChain:
    """Test the clasp-chain bound"""

    @pytest.mark.parametrize("m", range(1, 7))
    def test_chain_bound(self, m):
        """Test a chain of 2m clasped arcs needs 2m points"""
        assert clasp_chain_certificate(m) == 2 * m

    def test_rejects_empty_chain(self):
        """Test m = 0"""
        with pytest.raises(ValueError):
            clasp_chain_certificate(0)

    def test_lamp_disk_certified(self, lamp8):
        """Test the eight-point lamp disk falls back to its clasp pattern"""
        sphere = stable_disk_certificate(lamp8, "D1")
        assert sphere.status is StabilityStatus.INCONCLUSIVE
        verdict = certify_stable(lamp8, "D1")
        assert verdict.status is StabilityStatus.CERTIFIED
        assert verdict.method == "clasp-chain"
        assert (verdict.min_bound, verdict.actual) == (8, 8)


class TestStableDisk:
    """Test full-enumeration certificates on the Milnor link"""

    def test_piercing_counts(self, milnor4):
        """Test D1, D2, D3 are met 4, 4 and 2 times"""
        assert [milnor4.registry.total(d) for d in ("D1", "D2", "D3")] == [4, 4, 2]

    @pytest.mark.parametrize("disk,bound", [("D1", 4), ("D2", 4), ("D3", 2)])
    def test_certified(self, milnor4, disk, bound):
        """Test each disk's least sphere count reaches its piercing count"""
        verdict = stable_disk_certificate(milnor4, disk)
        assert verdict.status is StabilityStatus.CERTIFIED
        assert verdict.min_bound == bound
        # two generators beside the pierced one, both positive-side choices
        assert len(verdict.cases) == 8

    def test_constraint_hook(self, milnor4):
        """Test a hook that excludes every assignment"""
        verdict = stable_disk_certificate(milnor4, "D1", lambda a: False)
        assert verdict.status is StabilityStatus.INCONCLUSIVE

    def test_unregistered(self, milnor4):
        """Test an unknown disk id"""
        with pytest.raises(RegistryError):
            stable_disk_certificate(milnor4, "D9")

    def test_multi_component_disk(self):
        """Test a disk met by two components is not certified"""
        registry = DiskRegistry(
            (Disk("D1", 0, clasp=ClaspPattern.chain(2)),),
            {
                1: tuple(Piercing("D1", s) for s in (1, -1, 1, -1, 1)),
                2: tuple(Piercing("D1", s) for s in (1, -1, 1, -1)),
            },
        )
        p = LinkPresentation(LinkDiagram.unlink(3), registry)
        verdict = certify_stable(p, "D1")
        assert verdict.status is StabilityStatus.INCONCLUSIVE
        assert verdict.reason == "MultiComponentDisk"


class TestSn:
    """Test the (sN) condition"""

    def test_count_below(self, milnor4):
        """Test D3 with two points under N = 7"""
        result = sn_check(milnor4, "D3", 7)
        assert result.holds and result.via is SnVia.COUNT_BELOW_N
        assert str(result) == "Holds(CountBelowN)"

    def test_stable_certificate(self, milnor4):
        """Test D1 at N = 4 needs its certificate"""
        result = sn_check(milnor4, "D1", 4)
        assert result.via is SnVia.STABLE_CERTIFICATE

    def test_unknown(self):
        """Test nine uncertified piercings at N = 8"""
        registry = DiskRegistry(
            (Disk("D1", 0),),
            {
                1: tuple(Piercing("D1", s) for s in (1, -1, 1, -1, 1)),
                2: tuple(Piercing("D1", s) for s in (1, -1, 1, -1)),
            },
        )
        p = LinkPresentation(LinkDiagram.unlink(3), registry)
        result = sn_check(p, "D1", 8)
        assert not result.holds
        assert str(result) == "Unknown"
        assert result.total == 9
