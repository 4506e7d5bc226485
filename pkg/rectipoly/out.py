import csv

import numpy as np
import pandas as pd

from rectipoly.errors import EmptyNet

_obj_header = "# rectipoly OBJ export\n"

_panel_fill = "#f2f2f2"
_line_width = 0.3
_fold_dashes = "2,1"
_label_size = 3.0


def _obj(mesh):
    vertices = pd.DataFrame(mesh.points, columns=["X", "Y", "Z"])
    vertices.insert(0, "Record", "v")

    faces = "".join("f " + " ".join(str(v + 1) for v in loop) + "\n" for loop in mesh.faces)

    return (
        _obj_header
        + vertices.to_csv(sep=" ", header=False, index=False, float_format="%.17g", quoting=csv.QUOTE_NONE, lineterminator="\n")
        + faces
    )


def _to_obj(self, path=None):
    """Wavefront OBJ text with 1-based face records; written to path if given."""

    text = _obj(self)

    if path:
        with open(path, "w+") as f:
            f.write(text)
    else:
        return text


def _svg_frame(net, scale, margin):
    low, high = net.bounds
    width = (high[0] - low[0] + 2 * margin) * scale
    height = (high[1] - low[1] + 2 * margin) * scale

    def to_page(p):
        # SVG y runs downward
        return (p[0] - low[0] + margin) * scale, (high[1] - p[1] + margin) * scale

    return width, height, to_page


def _svg_line(p, q, dashed=False):
    dashes = f' stroke-dasharray="{_fold_dashes}"' if dashed else ""
    return (
        f'<line x1="{p[0]:.3f}" y1="{p[1]:.3f}" x2="{q[0]:.3f}" y2="{q[1]:.3f}" '
        f'stroke="black" stroke-width="{_line_width}"{dashes}/>'
    )


def _svg(net, scale=20.0, margin=0.5):
    if not net.panels:
        raise EmptyNet("the net has no panels to draw")

    width, height, to_page = _svg_frame(net, scale, margin)

    # every fold is drawn once, with its child panel
    fold_of_child = {}
    for fold in net.folds:
        fold_of_child.setdefault(fold.child, []).append(fold.edge)
    fold_edges = net.fold_edges

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.3f}mm" height="{height:.3f}mm" '
        f'viewBox="0 0 {width:.3f} {height:.3f}">',
    ]

    for face in sorted(net.panels):
        panel = net.panels[face]
        loop = net.faces[face]
        center = panel.mean(axis=0)

        lines.append(f'<g id="panel-{face}">')
        points = " ".join("{:.3f},{:.3f}".format(*to_page(p)) for p in panel)
        lines.append(f'<polygon points="{points}" fill="{_panel_fill}" stroke="none"/>')

        for i, (u, v) in enumerate(zip(loop, loop[1:] + loop[:1])):
            p, q = panel[i], panel[(i + 1) % len(loop)]
            edge = net.edge_ids.get((min(u, v), max(u, v)))

            if edge in fold_edges:
                if edge in fold_of_child.get(face, ()):
                    lines.append(_svg_line(to_page(p), to_page(q), dashed=True))
                continue

            lines.append(_svg_line(to_page(p), to_page(q)))

            label = net.cuts.get(edge)
            if label is not None:
                mid = (p + q) / 2
                spot = to_page(mid + 0.15 * (center - mid) / max(np.linalg.norm(center - mid), 1e-12))
                lines.append(
                    f'<text x="{spot[0]:.3f}" y="{spot[1]:.3f}" font-size="{_label_size}" '
                    f'text-anchor="middle" dominant-baseline="middle">{label}</text>'
                )

        lines.append("</g>")

    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _to_svg(self, path=None, scale=20.0):
    text = _svg(self, scale=scale)

    if path:
        with open(path, "w+") as f:
            f.write(text)
    else:
        return text
