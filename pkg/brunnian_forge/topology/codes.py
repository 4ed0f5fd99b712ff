"""
PD and Gauss text codes.

PD items are `X[a,b,c,d]`, arc labels counterclockwise from the incoming
under-arc, plus `O[k]` for crossing-free circles. A positive crossing carries
its over-strand from d to b. Gauss codes are one line per component with tokens
`O<id>+`, `U<id>-`, ... and `()` for a crossing-free circle.
"""

import re
from collections import defaultdict

from ..errors import DiagramError, DiagramErrorKind
from .diagram import LinkDiagram, Passage, require_valid

_PD_ITEM = re.compile(r"([XO])\[\s*(\d+(?:\s*,\s*\d+)*)\s*\]")
_GAUSS_TOKEN = re.compile(r"([OU])(\d+)([+-])")

# slot layout: 0 under-in, 2 under-out; over uses 1 and 3
_IN, _OUT = True, False


def _parse_error(detail: str) -> DiagramError:
    return DiagramError(DiagramErrorKind.PARSE_ERROR, detail)


def _tokenize_pd(text: str) -> tuple[list[tuple[int, ...]], list[int]]:
    body = text.strip()
    if body.startswith("PD[") and body.endswith("]"):
        body = body[3:-1]
    crossings: list[tuple[int, ...]] = []
    circles: list[int] = []
    pos = 0
    while pos < len(body):
        if body[pos] in " \t\r\n,":
            pos += 1
            continue
        match = _PD_ITEM.match(body, pos)
        if not match:
            snippet = body[pos : pos + 12]
            raise _parse_error(f"unexpected PD text at offset {pos}: {snippet!r}")
        labels = tuple(int(x) for x in match.group(2).split(","))
        if match.group(1) == "X":
            if len(labels) != 4:
                raise _parse_error(f"X item needs 4 labels, got {len(labels)}")
            crossings.append(labels)
        else:
            if len(labels) != 1:
                raise _parse_error("O item needs exactly one label")
            circles.append(labels[0])
        pos = match.end()
    return crossings, circles


def _orient_arcs(crossings: list[tuple[int, ...]]) -> dict[tuple[int, int], bool]:
    """Decide for every (crossing, slot) whether the arc there flows in or out."""
    ends: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for k, labels in enumerate(crossings):
        for slot, arc in enumerate(labels):
            ends[arc].append((k, slot))
    for arc, where in sorted(ends.items()):
        if len(where) == 1:
            raise DiagramError(
                DiagramErrorKind.DANGLING_CROSSING, f"arc {arc} has a single endpoint"
            )
        if len(where) > 2:
            raise DiagramError(
                DiagramErrorKind.BAD_ARITY, f"arc {arc} has {len(where)} endpoints"
            )

    state: dict[tuple[int, int], bool] = {}
    pending: list[tuple[tuple[int, int], bool]] = []
    for k in range(len(crossings)):
        pending.append(((k, 0), _IN))
        pending.append(((k, 2), _OUT))

    def settle() -> None:
        while pending:
            end, flow = pending.pop()
            known = state.get(end)
            if known is not None:
                if known != flow:
                    raise DiagramError(
                        DiagramErrorKind.INCONSISTENT_ORIENTATION,
                        f"arc flow at crossing {end[0]} slot {end[1]} is contradictory",
                    )
                continue
            state[end] = flow
            k, slot = end
            arc = crossings[k][slot]
            for other in ends[arc]:
                if other != end:
                    pending.append((other, not flow))
            if slot in (1, 3):
                pending.append(((k, 4 - slot), not flow))

    settle()
    for k, labels in enumerate(crossings):
        if (k, 1) in state:
            continue
        b, d = labels[1], labels[3]
        if d == b + 1:
            b_flow = _IN
        elif b == d + 1:
            b_flow = _OUT
        else:
            b_flow = _IN if b > d else _OUT
        pending.append(((k, 1), b_flow))
        settle()
    return state


def parse_pd(text: str) -> LinkDiagram:
    """Parse a PD code into a diagram.

    Crossing ids follow the order of X items; components, crossing-free
    circles included, are ordered by their least arc label.

    Raises:
        DiagramError: on malformed or inconsistent codes
    """
    crossings, circles = _tokenize_pd(text)
    if not crossings and not circles:
        return LinkDiagram.unlink(1)

    flow = _orient_arcs(crossings)
    signs = {
        k: 1 if flow[(k, 3)] == _IN else -1 for k in range(len(crossings))
    }
    heads: dict[int, tuple[int, int]] = {}
    for (k, slot), direction in flow.items():
        if direction == _IN:
            heads[crossings[k][slot]] = (k, slot)

    keyed: list[tuple[int, tuple[Passage, ...]]] = []
    seen: set[int] = set()
    for start in sorted(heads):
        if start in seen:
            continue
        passages = []
        arc = start
        while arc not in seen:
            seen.add(arc)
            k, slot = heads[arc]
            passages.append(Passage(k, slot in (1, 3)))
            arc = crossings[k][(slot + 2) % 4]
        if arc != start:
            raise DiagramError(
                DiagramErrorKind.INCONSISTENT_ORIENTATION,
                f"arc {start} does not close up into a component",
            )
        keyed.append((start, tuple(passages)))
    keyed.extend((label, ()) for label in circles)
    components = [comp for _, comp in sorted(keyed, key=lambda item: item[0])]
    return require_valid(LinkDiagram.build(components, signs))


def pd_items(d: LinkDiagram) -> tuple[dict[int, tuple[int, ...]], list[int]]:
    """Arc labels per crossing id, plus the labels of crossing-free circles.

    Arcs are numbered consecutively along each component.
    """
    slots: dict[int, list[int]] = {cid: [0, 0, 0, 0] for cid in sorted(d.signs)}
    circles: list[int] = []
    base = 1
    for comp in d.components:
        m = len(comp)
        if m == 0:
            circles.append(base)
            base += 1
            continue
        for j, passage in enumerate(comp):
            slot = slots[passage.crossing]
            arc_in, arc_out = base + j, base + (j + 1) % m
            if not passage.over:
                slot[0], slot[2] = arc_in, arc_out
            elif d.signs[passage.crossing] > 0:
                slot[3], slot[1] = arc_in, arc_out
            else:
                slot[1], slot[3] = arc_in, arc_out
        base += m
    return {cid: tuple(s) for cid, s in slots.items()}, circles


def emit_pd(d: LinkDiagram) -> str:
    items, circles = pd_items(d)
    text = [f"X[{','.join(str(a) for a in labels)}]" for labels in items.values()]
    text.extend(f"O[{label}]" for label in circles)
    return ", ".join(text)


def parse_gauss(text: str) -> LinkDiagram:
    """Parse a Gauss code (one component per non-blank line).

    Raises:
        DiagramError: on malformed tokens or sign disagreement
    """
    components: list[tuple[Passage, ...]] = []
    signs: dict[int, int] = {}
    for line in text.splitlines():
        tokens = line.split()
        if not tokens:
            continue
        if tokens == ["()"]:
            components.append(())
            continue
        passages = []
        for token in tokens:
            match = _GAUSS_TOKEN.fullmatch(token)
            if not match:
                raise _parse_error(f"bad Gauss token {token!r}")
            cid = int(match.group(2))
            sign = 1 if match.group(3) == "+" else -1
            if signs.setdefault(cid, sign) != sign:
                raise DiagramError(
                    DiagramErrorKind.INCONSISTENT_ORIENTATION,
                    f"crossing {cid} is given both signs",
                )
            passages.append(Passage(cid, match.group(1) == "O"))
        components.append(tuple(passages))
    if not components:
        raise _parse_error("empty Gauss code")
    return require_valid(LinkDiagram.build(components, signs))


def emit_gauss(d: LinkDiagram) -> str:
    lines = []
    for comp in d.components:
        if not comp:
            lines.append("()")
            continue
        lines.append(
            " ".join(
                ("O" if p.over else "U")
                + str(p.crossing)
                + ("+" if d.signs[p.crossing] > 0 else "-")
                for p in comp
            )
        )
    return "\n".join(lines)


def parse_diagram_text(text: str) -> LinkDiagram:
    """Parse PD or Gauss text, telling them apart by their first token"""
    stripped = text.strip()
    if not stripped or stripped[:2] in ("X[", "O[", "PD"):
        return parse_pd(stripped)
    return parse_gauss(stripped)
