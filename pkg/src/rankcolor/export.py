"""Static renderings of a coloring: Graphviz DOT and a per-class edge listing."""
from __future__ import annotations

import colorsys

from rankcolor.coloring import EdgeColoring
from rankcolor.errors import DomainError

_LINE_STYLES = ("solid", "dashed", "dotted", "bold")


def class_style(index: int, total: int) -> dict[str, str]:
    """Distinct (hue, line style) per class; deterministic in ``index``."""
    r, g, b = colorsys.hsv_to_rgb(index / max(total, 1), 0.85, 0.8)
    return {
        "color": f"#{round(r * 255):02x}{round(g * 255):02x}{round(b * 255):02x}",
        "style": _LINE_STYLES[index % len(_LINE_STYLES)],
    }


def to_dot(c: EdgeColoring) -> str:
    classes = c.classes()
    lines = [f"graph K{c.n} {{", "  layout=circo;", "  node [shape=circle];"]
    lines += [f"  {v};" for v in range(c.n)]
    for i, (color, edges) in enumerate(classes.items()):
        style = class_style(i, len(classes))
        for u, v in edges:
            lines.append(
                f'  {u} -- {v} [color="{style["color"]}", style={style["style"]}, '
                f'label="{color}", class="c{color}"];'
            )
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_class_listing(c: EdgeColoring) -> str:
    lines = []
    for color, edges in c.classes().items():
        pairs = " ".join(f"{u}-{v}" for u, v in edges)
        lines.append(f"color {color} ({len(edges)} edges): {pairs}")
    return "\n".join(lines) + "\n"


FORMATS = {"dot": to_dot, "classes": to_class_listing}


def export(c: EdgeColoring, fmt: str) -> str:
    try:
        return FORMATS[fmt](c)
    except KeyError:
        raise DomainError(f"unknown export format {fmt!r}; choose from {', '.join(FORMATS)}") from None
