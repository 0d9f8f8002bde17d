"""Deterministic text and SVG rendering of partitions, diagrams and
ramified pairs.

Diagram blocks spanning both rows draw their connecting line at the
leftmost position; ties (the coarse-only connections of a ramified
pair) are dashed.  Rendering is informational: nothing downstream
asserts pixel equality, only structure.
"""

from __future__ import annotations

from .diagrams import Diagram
from .errors import DomainError
from .ramified import Ramified
from .setpartitions import SetPartition

_STEP = 50
_MARGIN = 30


def _x(point_col: int) -> int:
    return _MARGIN + _STEP * (point_col - 1)


def _arc(x1: int, x2: int, y: int, bulge: int, cls: str) -> str:
    midx = (x1 + x2) / 2
    return (
        f'<path class="{cls}" d="M {x1} {y} Q {midx} {y + bulge} {x2} {y}" '
        f'fill="none"/>'
    )


def _line(x1, y1, x2, y2, cls) -> str:
    return f'<line class="{cls}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>'


def _svg(width: int, height: int, body: list[str]) -> str:
    head = (
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}">'
        "<style>"
        ".strand{stroke:#000;stroke-width:2} "
        ".tie{stroke:#555;stroke-width:2;stroke-dasharray:6 4} "
        ".point{fill:#000}"
        "</style>"
    )
    return head + "".join(body) + "</svg>"


def _diagram_parts(d: Diagram, y_top: int, y_bot: int, cls: str) -> list[str]:
    n = d.n
    body = []
    for block in d.part.blocks():
        tops = [x for x in block if x <= n]
        bots = [x - n for x in block if x > n]
        for a, b in zip(tops, tops[1:]):
            body.append(_arc(_x(a), _x(b), y_top, 28, cls))
        for a, b in zip(bots, bots[1:]):
            body.append(_arc(_x(a), _x(b), y_bot, -28, cls))
        if tops and bots:
            body.append(_line(_x(tops[0]), y_top, _x(bots[0]), y_bot, cls))
    for i in range(1, n + 1):
        body.append(f'<circle class="point" cx="{_x(i)}" cy="{y_top}" r="3"/>')
        body.append(f'<circle class="point" cx="{_x(i)}" cy="{y_bot}" r="3"/>')
    return body


def _render_diagram_svg(d: Diagram) -> str:
    body = _diagram_parts(d, 30, 130, "strand")
    return _svg(2 * _MARGIN + _STEP * (d.n - 1), 160, body)


def _render_ramified_svg(a: Ramified) -> str:
    body = _diagram_parts(a.fine, 30, 130, "strand")
    n = a.n
    # ties: connect representatives of the fine blocks grouped by the
    # coarse block, consecutively in canonical order
    groups: dict[int, list[int]] = {}
    for block in a.fine.part.blocks():
        groups.setdefault(a.coarse.part.block_of(block[0]), []).append(block[0])
    for cls in sorted(groups):
        reps = sorted(groups[cls])
        for p, q in zip(reps, reps[1:]):
            xp = _x(p if p <= n else p - n)
            yp = 30 if p <= n else 130
            xq = _x(q if q <= n else q - n)
            yq = 30 if q <= n else 130
            body.append(_line(xp, yp, xq, yq, "tie"))
    return _svg(2 * _MARGIN + _STEP * (n - 1), 160, body)


def _render_partition_svg(p: SetPartition) -> str:
    # linear graph: one row of points, consecutive same-block arcs above
    body = []
    y = 60
    for block in p.blocks():
        for a, b in zip(block, block[1:]):
            body.append(_arc(_x(a), _x(b), y, -30, "strand"))
    for i in range(1, p.m + 1):
        body.append(f'<circle class="point" cx="{_x(i)}" cy="{y}" r="3"/>')
    return _svg(2 * _MARGIN + _STEP * (p.m - 1), 90, body)


def render(elem, fmt: str = "text") -> str:
    """Render an element as canonical text or standalone SVG 1.1."""
    if fmt == "text":
        return elem.to_text()
    if fmt != "svg":
        raise DomainError(f"unknown render format {fmt!r}")
    if isinstance(elem, Ramified):
        return _render_ramified_svg(elem)
    if isinstance(elem, Diagram):
        return _render_diagram_svg(elem)
    if isinstance(elem, SetPartition):
        return _render_partition_svg(elem)
    raise DomainError(f"cannot render {type(elem).__name__}")
