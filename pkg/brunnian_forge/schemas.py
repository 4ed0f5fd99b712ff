"""
JSON file formats: presentations and certificates.

Both are pydantic models that reject unknown fields. A presentation file is
the lossless serialized form of a LinkPresentation; its canonical JSON (sorted
keys, no whitespace) is what certificate digests hash.
"""

import hashlib
import json
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .errors import PresentationFormatError
from .topology.codes import parse_diagram_text
from .topology.diagram import LinkDiagram, Passage
from .topology.presentation import (
    ClaspPattern,
    Disk,
    DiskRegistry,
    FamilyMeta,
    LinkPresentation,
    Piercing,
    Side,
)
from .topology.words import CyclicWord, parse_word

FORMAT_VERSION = 1


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class PassageModel(_Strict):
    crossing: int = Field(ge=0)
    over: bool


class CrossingModel(_Strict):
    id: int = Field(ge=0)
    sign: Literal[1, -1]


class DiagramModel(_Strict):
    components: list[list[PassageModel]]
    crossings: list[CrossingModel]


class ClaspModel(_Strict):
    arcs: int = Field(ge=2)
    constraints: list[tuple[int, list[int]]]


class DiskModel(_Strict):
    id: str
    boundary: int = Field(ge=0)
    positive_side: Side = Side.POS
    credible: bool = True
    clasp: ClaspModel | None = None


class PiercingModel(_Strict):
    disk: str
    sign: Literal[1, -1]


class RegistryModel(_Strict):
    disks: list[DiskModel] = []
    piercings: dict[str, list[PiercingModel]] = {}
    disjoint: bool = True


class MetaModel(_Strict):
    family: str = "custom"
    params: dict[str, Any] = {}
    labels: list[str] = []
    count_formula: str = ""
    focus_disks: list[str] | None = None
    regularity: dict[str, bool] = {}


class PresentationFile(_Strict):
    version: Literal[1]
    diagram: DiagramModel
    registry: RegistryModel = RegistryModel()
    words: dict[str, str] = {}
    symmetries: list[list[int]] = []
    meta: MetaModel = MetaModel()


class CertificateFile(_Strict):
    version: Literal[1]
    kind: Literal["sprime", "untied", "stable"]
    presentation_digest: str = Field(pattern=r"^sha256:[0-9a-f]{64}$")
    facts: list[dict[str, Any]] = []
    orbits: list[dict[str, Any]] = []
    assumptions: list[dict[str, str]] = []
    regularity: dict[str, bool] = {}
    verdict: str
    sidecar: dict[str, str] | None = None


# -- conversion -------------------------------------------------------------


def diagram_to_model(d: LinkDiagram) -> DiagramModel:
    return DiagramModel(
        components=[
            [PassageModel(crossing=p.crossing, over=p.over) for p in comp]
            for comp in d.components
        ],
        crossings=[CrossingModel(id=cid, sign=s) for cid, s in sorted(d.signs.items())],
    )


def presentation_to_file(p: LinkPresentation) -> PresentationFile:
    registry = RegistryModel(
        disks=[
            DiskModel(
                id=disk.id,
                boundary=disk.boundary,
                positive_side=disk.positive_side,
                credible=disk.credible,
                clasp=(
                    ClaspModel(
                        arcs=disk.clasp.arcs,
                        constraints=[(i, list(js)) for i, js in disk.clasp.constraints],
                    )
                    if disk.clasp
                    else None
                ),
            )
            for disk in p.registry.disks
        ],
        piercings={
            str(c): [PiercingModel(disk=x.disk, sign=x.sign) for x in seq]
            for c, seq in sorted(p.registry.piercings.items())
        },
        disjoint=p.registry.disjoint,
    )
    meta = MetaModel(
        family=p.meta.family,
        params=dict(p.meta.params),
        labels=list(p.meta.labels),
        count_formula=p.meta.count_formula,
        focus_disks=(
            list(p.meta.focus_disks) if p.meta.focus_disks is not None else None
        ),
        regularity=dict(p.meta.regularity),
    )
    return PresentationFile(
        version=FORMAT_VERSION,
        diagram=diagram_to_model(p.diagram),
        registry=registry,
        words={str(c): str(w) for c, w in sorted(p.words.items())},
        symmetries=[list(s) for s in p.symmetries],
        meta=meta,
    )


def _component_key(key: str) -> int:
    try:
        return int(key)
    except ValueError as e:
        raise PresentationFormatError(f"component key {key!r} is not an integer") from e


def file_to_presentation(f: PresentationFile) -> LinkPresentation:
    diagram = LinkDiagram.build(
        ([Passage(x.crossing, x.over) for x in comp] for comp in f.diagram.components),
        {x.id: x.sign for x in f.diagram.crossings},
    )
    disks = tuple(
        Disk(
            id=d.id,
            boundary=d.boundary,
            positive_side=d.positive_side,
            credible=d.credible,
            clasp=(
                ClaspPattern(
                    d.clasp.arcs, tuple((i, tuple(js)) for i, js in d.clasp.constraints)
                )
                if d.clasp
                else None
            ),
        )
        for d in f.registry.disks
    )
    piercings = {
        _component_key(c): tuple(Piercing(x.disk, x.sign) for x in seq)
        for c, seq in f.registry.piercings.items()
    }
    meta = FamilyMeta(
        family=f.meta.family,
        params=dict(f.meta.params),
        labels=tuple(f.meta.labels),
        count_formula=f.meta.count_formula,
        focus_disks=(
            tuple(f.meta.focus_disks) if f.meta.focus_disks is not None else None
        ),
        regularity=dict(f.meta.regularity),
    )
    return LinkPresentation(
        diagram=diagram,
        registry=DiskRegistry(disks, piercings, f.registry.disjoint),
        words={
            _component_key(c): CyclicWord(parse_word(w)) for c, w in f.words.items()
        },
        symmetries=tuple(tuple(s) for s in f.symmetries),
        meta=meta,
    )


# -- canonical JSON ---------------------------------------------------------


def canonical_json(model: BaseModel) -> str:
    return json.dumps(
        model.model_dump(mode="json"),
        sort_keys=True,
        separators=(",", ":"),
        ensure_ascii=False,
    )


def presentation_digest(p: LinkPresentation) -> str:
    text = canonical_json(presentation_to_file(p))
    return "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()


def dump_json(model: BaseModel) -> str:
    """Indented, key-sorted, newline-terminated document"""
    return (
        json.dumps(
            model.model_dump(mode="json"), indent=2, sort_keys=True, ensure_ascii=False
        )
        + "\n"
    )


def parse_presentation(text: str) -> LinkPresentation:
    """Parse a presentation document.

    Raises:
        PresentationFormatError: on malformed JSON or schema violations
    """
    try:
        return file_to_presentation(PresentationFile.model_validate_json(text))
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(x) for x in first["loc"]) or "document"
        raise PresentationFormatError(f"{where}: {first['msg']}") from e


def parse_certificate(text: str) -> CertificateFile:
    try:
        return CertificateFile.model_validate_json(text)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(x) for x in first["loc"]) or "document"
        raise PresentationFormatError(f"{where}: {first['msg']}") from e


def load_input(text: str, allow_diagram: bool = False) -> LinkPresentation:
    """Presentation JSON, or raw PD/Gauss text when allowed.

    Raises:
        PresentationFormatError: for JSON problems or disallowed diagram text
        DiagramError: for malformed PD/Gauss text
    """
    if text.lstrip().startswith("{"):
        return parse_presentation(text)
    if not allow_diagram:
        raise PresentationFormatError("expected a presentation JSON document")
    return LinkPresentation(parse_diagram_text(text))
