"""
Normalized Kauffman bracket by a frontier state sum.

Crossings are smoothed one at a time in connectedness order. A partial state
is the matching of open arc ends left by the smoothings so far; states with
the same matching are merged, so the work follows the width of the frontier
rather than 2^crossings. Polynomials in A are dicts exponent -> coefficient.
"""

import logging
from collections import defaultdict
from collections.abc import Mapping

from .codes import pd_items
from .diagram import LinkDiagram

logger = logging.getLogger(__name__)

Poly = dict[int, int]
Matching = tuple[tuple[int, int], ...]

LOOP: Poly = {2: -1, -2: -1}  # -A^2 - A^-2


def _clean(p: Mapping[int, int]) -> Poly:
    return {e: c for e, c in sorted(p.items()) if c}


def poly_mul(p: Mapping[int, int], q: Mapping[int, int]) -> Poly:
    out: defaultdict[int, int] = defaultdict(int)
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            out[e1 + e2] += c1 * c2
    return _clean(out)


def poly_pow(p: Mapping[int, int], k: int) -> Poly:
    out: Poly = {0: 1}
    for _ in range(k):
        out = poly_mul(out, p)
    return out


def unlink_bracket(n: int) -> Poly:
    """(-A^2 - A^-2)^(n-1)"""
    return poly_pow(LOOP, max(n - 1, 0))


def _order(items: Mapping[int, tuple[int, ...]]) -> list[int]:
    """Greedy order: next is the crossing sharing most arcs with those placed"""
    remaining = set(items)
    placed: set[int] = set()
    order: list[int] = []
    while remaining:
        cid = max(
            sorted(remaining),
            key=lambda c: sum(1 for arc in items[c] if arc in placed),
        )
        remaining.remove(cid)
        placed.update(items[cid])
        order.append(cid)
    return order


def _join(ends: dict[int, int], x: int, y: int) -> bool:
    """Connect arc ends x and y in place; True when that closes a loop"""
    if x == y:
        return True
    if ends.get(x) == y:
        del ends[x], ends[y]
        return True
    a = ends.pop(x) if x in ends else x
    b = ends.pop(y) if y in ends else y
    ends[a] = b
    ends[b] = a
    return False


def _key(ends: dict[int, int]) -> Matching:
    return tuple(sorted((a, b) for a, b in ends.items() if a < b))


def bracket(d: LinkDiagram, max_states: int = 200_000) -> Poly | None:
    """Kauffman bracket <D> with <O> = 1, or None past max_states"""
    items, circles = pd_items(d)
    if not items:
        return unlink_bracket(len(circles))
    # (matching, closed a loop yet) -> polynomial
    states: dict[tuple[Matching, bool], Poly] = {((), False): {0: 1}}
    for cid in _order(items):
        a, b, c, e = items[cid]
        nxt: defaultdict[tuple[Matching, bool], defaultdict[int, int]] = defaultdict(
            lambda: defaultdict(int)
        )
        for (matching, closed), poly in states.items():
            for shift, pairs in ((1, ((a, b), (c, e))), (-1, ((a, e), (b, c)))):
                ends = {x: y for x, y in matching} | {y: x for x, y in matching}
                loops = [_join(ends, x, y) for x, y in pairs]
                factor: Poly = {shift: 1}
                now_closed = closed
                for looped in loops:
                    if looped and now_closed:
                        factor = poly_mul(factor, LOOP)
                    now_closed = now_closed or looped
                target = nxt[(_key(ends), now_closed)]
                for exp, coef in poly_mul(poly, factor).items():
                    target[exp] += coef
        states = {k: _clean(v) for k, v in nxt.items()}
        if len(states) > max_states:
            logger.debug("bracket state sum gave up at %d states", len(states))
            return None
    total = _clean(states.get(((), True), {}))
    return poly_mul(total, poly_pow(LOOP, len(circles)))


def writhe(d: LinkDiagram) -> int:
    return sum(d.signs.values())


def normalized_bracket(d: LinkDiagram, max_states: int = 200_000) -> Poly | None:
    """(-A^3)^-w <D>, an isotopy invariant of the oriented link"""
    raw = bracket(d, max_states)
    if raw is None:
        return None
    w = writhe(d)
    return {e - 3 * w: c * (-1) ** (w % 2) for e, c in raw.items()}


def format_poly(p: Mapping[int, int]) -> str:
    if not p:
        return "0"
    terms = []
    for e, c in sorted(p.items(), reverse=True):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = "" if mag == 1 and e else str(mag)
        if e:
            body += "A" if e == 1 else f"A^{e}"
        terms.append(f"{sign} {body}")
    text = " ".join(terms)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]
