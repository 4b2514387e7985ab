"""
SVG drawings of proofs.

Cancellation diagrams show a pregroup reduction: words on top, their simple
types below, a cup under each cancelled pair and a straight drop for the
surviving type. Innermost cups get ``class="cup"``; a cup that closes over
others is drawn deeper with ``class="nested"``.

Clasp diagrams show a Lambek derivation. Every basic type is a wire;
antecedent wires of an implication point upward and a small circle (the
clasp) binds the two sides of the implication. Evaluations are blobs holding
a cup, curryings and names are dashed frames whose bent wire comes out
clasped to the result.

Geometry is fixed on a grid so output is byte-for-byte reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from html import escape
from typing import Optional, Sequence

from .lambek import (Compose, CurryL, CurryR, Derivation, EvL, EvR, Id, NameL,
                     NameR, Par, check)
from .pregroup import Reduction, is_valid_reduction, link_levels
from .types import Basic, LambekType, LImpl, Product, RImpl, Unit, flatten

__all__ = ["render_cancellation", "render_baez_stay", "clasp_count"]

STEP = 60
PAD = 30
DEPTH = 22

_STYLE = (
    "<style>"
    "text{font-family:serif;font-size:16px;text-anchor:middle}"
    ".cup,.nested,.residual,.wire,.arrow{fill:none;stroke:#000;stroke-width:1.5}"
    ".blob{fill:#f2f2f2;stroke:#000}"
    ".curry{fill:none;stroke:#000;stroke-dasharray:4 3}"
    ".clasp{fill:#fff;stroke:#000}"
    "</style>"
)

_MARKER = ('<defs><marker id="head" viewBox="0 0 10 10" refX="5" refY="5" '
           'markerWidth="6" markerHeight="6" orient="auto-start-reverse">'
           '<path d="M0,0 L10,5 L0,10 z"/></marker></defs>')


def _svg(width: float, height: float, body: Sequence[str]) -> str:
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{_n(width)}" height="{_n(height)}" viewBox="0 0 {_n(width)} {_n(height)}">')
    return "\n".join([head, _STYLE, _MARKER, *body, "</svg>"]) + "\n"


def _n(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else f"{x:.1f}"


# --------------------------------------------------------------------------
# Cancellation diagrams
# --------------------------------------------------------------------------

def render_cancellation(r: Reduction, words: Sequence[str],
                        word_lengths: Optional[Sequence[int]] = None) -> str:
    """SVG cancellation diagram of ``r``; ``word_lengths`` says how many factors each word owns."""
    if not is_valid_reduction(r):
        raise ValueError("invalid reduction")
    n = len(r.input)
    lengths = [1] * len(words) if word_lengths is None else list(word_lengths)
    if len(lengths) != len(words) or sum(lengths) != n:
        raise ValueError(f"{len(words)} words do not align with {n} type factors")
    levels = link_levels(r.links)
    deepest = max(levels.values(), default=0)
    x = [PAD + STEP * k + STEP / 2 for k in range(n)]
    top = 70
    height = top + DEPTH * (deepest + 1) + 20
    body = []
    start = 0
    for w, length in zip(words, lengths):
        cx = (x[start] + x[start + length - 1]) / 2
        body.append(f'<text class="word" x="{_n(cx)}" y="24">{escape(w)}</text>')
        start += length
    for k, t in enumerate(r.input):
        label = escape(t.base)
        if t.z:
            sup = ("r" * t.z) if t.z > 0 else ("l" * -t.z)
            label += f'<tspan dy="-6" font-size="11">{sup}</tspan>'
        body.append(f'<text class="type" x="{_n(x[k])}" y="54">{label}</text>')
    for (i, j), level in sorted(levels.items()):
        y = top + DEPTH * level
        cls = "cup" if level == 1 else "nested"
        body.append(f'<path class="{cls}" d="M{_n(x[i])},{top} C{_n(x[i])},{_n(y)} '
                    f'{_n(x[j])},{_n(y)} {_n(x[j])},{top}"/>')
    for k in r.residual_indices:
        body.append(f'<line class="residual" x1="{_n(x[k])}" y1="{top}" '
                    f'x2="{_n(x[k])}" y2="{_n(height - 6)}"/>')
    return _svg(2 * PAD + STEP * n, height, body)


# --------------------------------------------------------------------------
# Clasp diagrams
# --------------------------------------------------------------------------

W = 40      # column width
H = 50      # height of one rule


def _leaves(t: LambekType, up: bool = False) -> list:
    """Basic wires of ``t`` in surface order, each with its direction (True = upward)."""
    if isinstance(t, Basic):
        return [(t.name, up)]
    if isinstance(t, Unit):
        return []
    if isinstance(t, LImpl):
        return _leaves(t.left, not up) + _leaves(t.right, up)
    if isinstance(t, RImpl):
        return _leaves(t.left, up) + _leaves(t.right, not up)
    return _leaves(t.left, up) + _leaves(t.right, up)


def _clasps(t: LambekType, start: int = 0) -> list:
    """``(left_leaf, right_leaf)`` index pair bound by each implication in ``t``."""
    if isinstance(t, (Basic, Unit)):
        return []
    nl = len(_leaves(t.left))
    inner = _clasps(t.left, start) + _clasps(t.right, start + nl)
    if isinstance(t, Product) or nl == 0 or not _leaves(t.right):
        return inner
    return inner + [(start + nl - 1, start + nl)]


def _bound(d: Derivation) -> int:
    """Wires bent into the result by a currying or name (0 for other rules)."""
    if isinstance(d, CurryL):
        return len(_leaves(d.a))
    if isinstance(d, CurryR):
        return len(_leaves(d.b))
    if isinstance(d, (NameL, NameR)):
        return len(_leaves(d.f.dom))
    return 0


def clasp_count(d: Derivation) -> int:
    """Implications in the domain plus one per currying or name that bends a wire."""
    total = sum(len(_clasps(t)) for t in flatten(d.dom))
    stack = [d]
    while stack:
        e = stack.pop()
        if _bound(e) and _leaves(e.f.cod):
            total += 1
        for attr in ("f", "g"):
            child = getattr(e, attr, None)
            if isinstance(child, Derivation):
                stack.append(child)
    return total


@dataclass
class _Block:
    width: float
    height: float
    ins: list                      # x of each input wire
    outs: list                     # x of each output wire
    items: list = field(default_factory=list)   # drawing primitives, block-relative


def _place(item, dx, dy):
    kind, *coords = item
    if kind == "line":
        x1, y1, x2, y2, cls = coords
        return ("line", x1 + dx, y1 + dy, x2 + dx, y2 + dy, cls)
    if kind == "curve":
        pts, cls = coords
        return ("curve", [(x + dx, y + dy) for x, y in pts], cls)
    if kind == "ellipse":
        cx, cy, rx, ry = coords
        return ("ellipse", cx + dx, cy + dy, rx, ry)
    if kind == "rect":
        x, y, w, h = coords
        return ("rect", x + dx, y + dy, w, h)
    if kind == "clasp":
        cx, cy = coords
        return ("clasp", cx + dx, cy + dy)
    raise ValueError(kind)


def _columns(k: int) -> list:
    return [W / 2 + W * i for i in range(k)]


def _straight(xs: Sequence[float], height: float) -> list:
    return [("line", x, 0, x, height, "wire") for x in xs]


def _layout(d: Derivation) -> _Block:
    if isinstance(d, Id):
        xs = _columns(len(_leaves(d.type)))
        return _Block(max(W, W * len(xs)), H / 2, xs, xs, _straight(xs, H / 2))

    if isinstance(d, (EvL, EvR)):
        na, nb = len(_leaves(d.a)), len(_leaves(d.b))
        if isinstance(d, EvL):
            total, pairs = 2 * na + nb, [(k, na + k) for k in range(na)]
            outs_idx = list(range(2 * na, 2 * na + nb))
        else:
            total, pairs = na + 2 * nb, [(na + k, na + nb + k) for k in range(nb)]
            outs_idx = list(range(na))
        xs = _columns(total)
        width, height = W * total, H
        items = [("ellipse", width / 2, height / 2, width / 2 - 2, height / 2 - 4)]
        for depth, (i, j) in enumerate(pairs):
            bottom = 14 + 8 * (len(pairs) - depth)
            items.append(("curve", [(xs[i], 0), (xs[i], bottom), (xs[j], bottom), (xs[j], 0)], "cup"))
        for k in outs_idx:
            items.append(("line", xs[k], 0, xs[k], height, "wire"))
        return _Block(width, height, xs, [xs[k] for k in outs_idx], items)

    if isinstance(d, Par):
        f, g = _layout(d.f), _layout(d.g)
        height = max(f.height, g.height)
        items = f.items + _pad(f, height) + [_place(it, f.width, 0) for it in g.items + _pad(g, height)]
        return _Block(f.width + g.width, height, f.ins + [x + f.width for x in g.ins],
                      f.outs + [x + f.width for x in g.outs], items)

    if isinstance(d, Compose):
        f, g = _layout(d.f), _layout(d.g)
        width = max(f.width, g.width)
        fx, gx = (width - f.width) / 2, (width - g.width) / 2
        band = H / 2
        items = [_place(it, fx, 0) for it in f.items]
        for a, b in zip(f.outs, g.ins):
            a, b = a + fx, b + gx
            items.append(("curve", [(a, f.height), (a, f.height + band / 2),
                                    (b, f.height + band / 2), (b, f.height + band)], "wire"))
        items += [_place(it, gx, f.height + band) for it in g.items]
        return _Block(width, f.height + band + g.height, [x + fx for x in f.ins],
                      [x + gx for x in g.outs], items)

    if isinstance(d, (CurryL, CurryR, NameL, NameR)):
        inner = _layout(d.f)
        left = isinstance(d, (CurryL, NameL))
        bent = _bound(d)
        top, margin = H / 2, 8
        body_h = top + inner.height + H / 2
        if left:
            new = _columns(bent)
            dx = W * bent
            taken, kept = inner.ins[:bent], inner.ins[bent:]
        else:
            dx = 0
            new = [inner.width + x for x in _columns(bent)]
            taken, kept = inner.ins[len(inner.ins) - bent:], inner.ins[:len(inner.ins) - bent]
        items = [("rect", margin / 2, margin / 2, inner.width + W * bent - margin, body_h - margin)]
        items += [_place(it, dx, top) for it in inner.items]
        for col, x in zip(new, taken):
            items.append(("curve", [(col, body_h), (col, 2), (x + dx, 2), (x + dx, top)], "wire"))
        for x in kept:
            items.append(("line", x + dx, 0, x + dx, top, "wire"))
        for x in inner.outs:
            items.append(("line", x + dx, top + inner.height, x + dx, body_h, "wire"))
        outs = [x + dx for x in inner.outs]
        outs = new + outs if left else outs + new
        if inner.outs and bent:
            a, b = (new[-1], outs[bent]) if left else (outs[len(outs) - bent - 1], new[0])
            items.append(("clasp", (a + b) / 2, body_h))
        return _Block(inner.width + W * bent, body_h, [x + dx for x in kept], outs, items)

    raise ValueError(f"unsupported constructor {type(d).__name__}")


def _pad(b: _Block, height: float) -> list:
    if b.height >= height:
        return []
    return [("line", x, b.height, x, height, "wire") for x in b.outs]


def _emit(item) -> str:
    kind = item[0]
    if kind == "line":
        _, x1, y1, x2, y2, cls = item
        return f'<line class="{cls}" x1="{_n(x1)}" y1="{_n(y1)}" x2="{_n(x2)}" y2="{_n(y2)}"/>'
    if kind == "curve":
        _, pts, cls = item
        (x0, y0), (x1, y1), (x2, y2), (x3, y3) = pts
        return (f'<path class="{cls}" d="M{_n(x0)},{_n(y0)} C{_n(x1)},{_n(y1)} '
                f'{_n(x2)},{_n(y2)} {_n(x3)},{_n(y3)}"/>')
    if kind == "ellipse":
        _, cx, cy, rx, ry = item
        return f'<ellipse class="blob" cx="{_n(cx)}" cy="{_n(cy)}" rx="{_n(rx)}" ry="{_n(ry)}"/>'
    if kind == "rect":
        _, x, y, w, h = item
        return f'<rect class="curry" x="{_n(x)}" y="{_n(y)}" width="{_n(w)}" height="{_n(h)}"/>'
    _, cx, cy = item
    return f'<circle class="clasp" cx="{_n(cx)}" cy="{_n(cy)}" r="4"/>'


def render_baez_stay(d: Derivation, words: Sequence[str] = ()) -> str:
    """
    SVG clasp diagram of ``d``. ``words`` label the factors of the domain,
    one per factor, when given.
    """
    check(d)
    factors = flatten(d.dom)
    if words and len(words) != len(factors):
        raise ValueError(f"{len(words)} words for {len(factors)} domain factors")
    block = _layout(d)
    label_h, stub = 28 if words else 6, 24
    ox, oy = PAD, label_h + stub
    body = []
    # domain: labels, arrows showing wire direction, clasps binding implications
    leaves = [leaf for t in factors for leaf in _leaves(t)]
    ins = [x + ox for x in block.ins]
    start = 0
    for k, t in enumerate(factors):
        n = len(_leaves(t))
        if words and n:
            cx = (ins[start] + ins[start + n - 1]) / 2
            body.append(f'<text class="word" x="{_n(cx)}" y="20">{escape(words[k])}</text>')
        for i, j in _clasps(t, start):
            body.append(_emit(("clasp", (ins[i] + ins[j]) / 2, label_h + 4)))
        start += n
    for x, (_, up) in zip(ins, leaves):
        y1, y2 = (oy, label_h + 4) if up else (label_h + 4, oy)
        body.append(f'<line class="arrow" x1="{_n(x)}" y1="{_n(y1)}" x2="{_n(x)}" '
                    f'y2="{_n(y2)}" marker-end="url(#head)"/>')
    items = [_place(it, ox, oy) for it in block.items]
    order = {"rect": 0, "ellipse": 1, "line": 2, "curve": 2, "clasp": 3}
    body += [_emit(it) for it in sorted(items, key=lambda it: order[it[0]])]
    bottom = oy + block.height
    for x in block.outs:
        body.append(f'<line class="wire" x1="{_n(x + ox)}" y1="{_n(bottom)}" '
                    f'x2="{_n(x + ox)}" y2="{_n(bottom + stub)}"/>')
    return _svg(block.width + 2 * PAD, bottom + stub + 6, body)
