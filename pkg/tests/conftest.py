"""Shared fixtures: small diagrams and generated family presentations"""

import os

os.environ.setdefault("BRUNNIAN_FORGE_METRICS_ENABLED", "false")

import pytest  # noqa: E402

from brunnian_forge.schemas import dump_json, presentation_to_file  # noqa: E402
from brunnian_forge.topology.diagram import LinkDiagram  # noqa: E402
from brunnian_forge.topology.families import FamilySpec, generate  # noqa: E402
from brunnian_forge.topology.presentation import LinkPresentation  # noqa: E402


def family(name: str, **params) -> LinkPresentation:
    return generate(FamilySpec.parse(name, **params))


@pytest.fixture(scope="session")
def hopf() -> LinkDiagram:
    """Negative Hopf link, lk = -1"""
    return LinkDiagram.build(
        [[(0, True), (1, False)], [(1, True), (0, False)]], {0: -1, 1: -1}
    )


@pytest.fixture(scope="session")
def kink() -> LinkDiagram:
    """Unknot with a single removable curl"""
    return LinkDiagram.build([[(0, True), (0, False)]], {0: 1})


@pytest.fixture(scope="session")
def two_circle_bigon() -> LinkDiagram:
    """Two circles laid across each other, one passing over at both crossings"""
    return LinkDiagram.build(
        [[(0, True), (1, True)], [(0, False), (1, False)]], {0: 1, 1: -1}
    )


@pytest.fixture(scope="session")
def milnor4() -> LinkPresentation:
    return family("milnor", n=4)


@pytest.fixture(scope="session")
def w5() -> LinkPresentation:
    return family("w", n=5)


@pytest.fixture(scope="session")
def debrunner5() -> LinkPresentation:
    return family("debrunner", n=5)


@pytest.fixture(scope="session")
def brunnchain4() -> LinkPresentation:
    return family("brunnchain", n=4)


@pytest.fixture(scope="session")
def torusgrid23() -> LinkPresentation:
    return family("torusgrid", m=2, n=3)


@pytest.fixture(scope="session")
def carpet134() -> LinkPresentation:
    return family("carpet", m=1, n=3, p=4)


@pytest.fixture(scope="session")
def lamp8() -> LinkPresentation:
    return family("lamp", indices=(1,) * 8)


@pytest.fixture(scope="session")
def make_family():
    """Generate a family member from CLI-style parameters"""
    return family


@pytest.fixture
def write_presentation(tmp_path):
    """Write a presentation file and return its path"""

    def _write(p: LinkPresentation, name: str = "link.json") -> str:
        path = tmp_path / name
        path.write_text(dump_json(presentation_to_file(p)), encoding="utf-8")
        return str(path)

    return _write
