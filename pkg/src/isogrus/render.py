"""Deterministic text renderings: ascii, TikZ, DOT and JSON."""

from __future__ import annotations

import json

from .cellmod import AlperinGraph
from .combinatorics import DOWN, UP, TilePartition, Weight
from .cups import CupDiagram


class RenderError(ValueError):
    pass


ARROWS = {UP: "u", DOWN: "d"}


def render_weight_ascii(w: Weight) -> str:
    return w.arrows


def render_cup_ascii(d: CupDiagram, labels: Weight | None = None) -> str:
    """Rows of text: vertex labels, then nested arcs drawn with box art."""
    n = d.n
    width = 2 * n - 1

    def col(v: int) -> int:
        return 2 * (v - 1)

    header = [" "] * width
    for v in range(1, n + 1):
        header[col(v)] = labels.arrows[v - 1] if labels else "."

    depth_of: dict[int, int] = {}
    for c in sorted(d.cups, key=lambda c: c.right - c.left):
        depth_of[id(c)] = 1 + max(
            (depth_of[id(o)] for o in d.cups if c.left < o.left and o.right < c.right),
            default=0,
        )
    maxdepth = max(list(depth_of.values()) + [1])

    rows = [[" "] * width for _ in range(maxdepth)]
    for r in d.rays:
        for i in range(maxdepth):
            rows[i][col(r.vertex)] = "|"
        if r.decorated:
            rows[maxdepth // 2][col(r.vertex)] = "*"
    for c in d.cups:
        dep = depth_of[id(c)] - 1
        row = rows[dep]
        row[col(c.left)] = "\\"
        row[col(c.right)] = "/"
        mid = (col(c.left) + col(c.right)) // 2
        for x in range(col(c.left) + 1, col(c.right)):
            if row[x] == " ":
                row[x] = "_"
        if c.decorated:
            row[mid] = "*"
    lines = ["".join(header)] + ["".join(r) for r in rows]
    return "\n".join(line.rstrip() for line in lines)


def render_cup_tikz(d: CupDiagram, labels: Weight | None = None) -> str:
    """One draw command per strand, dots as filled circles."""
    out = ["\\begin{tikzpicture}[scale=0.7]"]
    out.append(f"\\draw (0.5,0) -- ({d.n + 0.5},0);")
    for v in range(1, d.n + 1):
        out.append(f"\\fill ({v},0) circle (1.2pt);")
        if labels:
            sym = "\\wedge" if labels.arrows[v - 1] == UP else "\\vee"
            out.append(f"\\node at ({v},0.3) {{${sym}$}};")
    for c in d.cups:
        depth = 0.4 * (c.right - c.left)
        out.append(
            f"\\draw[thick] ({c.left},0) to[out=-90,in=180] "
            f"({(c.left + c.right) / 2},{-depth}) to[out=0,in=-90] ({c.right},0);"
        )
        if c.decorated:
            out.append(f"\\fill ({(c.left + c.right) / 2},{-depth}) circle (2pt);")
    for r in d.rays:
        out.append(f"\\draw[thick] ({r.vertex},0) -- ({r.vertex},-1.2);")
        if r.decorated:
            out.append(f"\\fill ({r.vertex},-0.6) circle (2pt);")
    out.append("\\end{tikzpicture}")
    return "\n".join(out)


def render_tiling_ascii(t: TilePartition) -> str:
    if not t.rows:
        return "(empty tiling)"
    lines = []
    for r in range(len(t.rows), 0, -1):
        lines.append(" " * (len(t.rows) - r) + "[]" * t.rows[r - 1])
    return "\n".join(lines)


def render_alperin_dot(g: AlperinGraph) -> str:
    """Layered digraph; solid edges add a cup, dashed ones remove it."""
    out = ["digraph alperin {", "  rankdir=TB;", "  node [shape=box];"]
    for k, layer in enumerate(g.layers):
        names = " ".join(f'"{w.arrows}"' for w in layer)
        out.append(f"  {{ rank=same; {names} }}")
    for e in g.edges:
        kind = "add" if e.added else "rem"
        style = "solid" if e.added else "dashed"
        sign = "" if e.coeff.re >= 0 else "-"
        out.append(
            f'  "{e.src.arrows}" -> "{e.dst.arrows}" '
            f'[label="{kind} ({e.cup.left},{e.cup.right}){sign}", style={style}];'
        )
    out.append("}")
    return "\n".join(out)


def render_alperin_json(g: AlperinGraph) -> str:
    data = {
        "lambda": g.lam.arrows,
        "layers": [[w.arrows for w in layer] for layer in g.layers],
        "edges": [
            {
                "src": e.src.arrows,
                "dst": e.dst.arrows,
                "cup": {"l": e.cup.left, "r": e.cup.right, "dec": e.cup.decorated},
                "move": "add" if e.added else "rem",
                "re": e.coeff.re,
                "im": e.coeff.im,
            }
            for e in g.edges
        ],
    }
    return json.dumps(data, sort_keys=True, indent=2)


def render_alperin_tikz(g: AlperinGraph) -> str:
    out = ["\\begin{tikzpicture}[yscale=-1.5,xscale=2.5]"]
    pos: dict[str, tuple[float, int]] = {}
    for k, layer in enumerate(g.layers):
        off = -(len(layer) - 1) / 2
        for j, w in enumerate(layer):
            pos[w.arrows] = (off + j, k)
            out.append(f"\\node (n{w.arrows}) at ({off + j},{k}) {{\\texttt{{{w.arrows}}}}};")
    for e in g.edges:
        style = "" if e.added else "[densely dashed]"
        out.append(f"\\draw{style} (n{e.src.arrows}) -- (n{e.dst.arrows});")
    out.append("\\end{tikzpicture}")
    return "\n".join(out)


def render(obj, target: str, labels: Weight | None = None) -> str:
    """Dispatch on (object type, target); unsupported pairs are rejected."""
    if isinstance(obj, CupDiagram):
        if target == "ascii":
            return render_cup_ascii(obj, labels)
        if target == "tikz":
            return render_cup_tikz(obj, labels)
        if target == "json":
            return json.dumps(obj.to_json(), sort_keys=True)
    if isinstance(obj, AlperinGraph):
        if target == "dot":
            return render_alperin_dot(obj)
        if target == "json":
            return render_alperin_json(obj)
        if target == "tikz":
            return render_alperin_tikz(obj)
    if isinstance(obj, TilePartition):
        if target == "ascii":
            return render_tiling_ascii(obj)
        if target == "json":
            return json.dumps(obj.to_json(), sort_keys=True)
    if isinstance(obj, Weight):
        if target == "ascii":
            return render_weight_ascii(obj)
        if target == "json":
            return json.dumps(obj.to_json(), sort_keys=True)
    raise RenderError(f"cannot render {type(obj).__name__} as {target}")
