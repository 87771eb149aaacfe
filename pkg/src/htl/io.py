"""File formats, analysis export and schematic rendering.

The labeling interchange format (HTL) is a plain text document::

    HTL 1
    <n> <m>
    <polygon line 1>
    ...
    <polygon line n>

with one space-separated label line per polygon in positive boundary
order, LF line endings, and ``#`` starting comment lines.  ``parse_htl``
and ``emit_htl`` round-trip byte-for-byte on canonically formatted
documents.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

from . import geom
from .labeling import EdgeRef, Labeling, LabelingError, StructureError, pairing, verify
from .search import CubicGraph
from .surface import genus, glue

FORMAT_HEADER = "HTL 1"


class HtlFormatError(LabelingError):
    """Malformed labeling document, with a 1-based line/column location."""

    def __init__(self, message: str, line: int, column: int = 1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


def _int_token(token: str, line_no: int, col: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise HtlFormatError(f"token {token!r} is not an integer", line_no, col) from None
    return value


def parse_htl(text: str) -> Labeling:
    """Parse a labeling document; structural validation only (the semantic
    conditions are checked separately by :func:`htl.labeling.verify`)."""
    significant: list[tuple[int, str]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        significant.append((line_no, raw))
    if not significant:
        raise HtlFormatError("empty document", 1)
    header_no, header = significant[0]
    if header.strip() != FORMAT_HEADER:
        raise HtlFormatError(f"expected header {FORMAT_HEADER!r}", header_no)
    if len(significant) < 2:
        raise HtlFormatError("missing polygon/label counts", header_no)
    counts_no, counts_line = significant[1]
    tokens = counts_line.split()
    if len(tokens) != 2:
        raise HtlFormatError("expected exactly two integers: n m", counts_no)
    n = _int_token(tokens[0], counts_no, counts_line.index(tokens[0]) + 1)
    m = _int_token(tokens[1], counts_no, counts_line.rindex(tokens[1]) + 1)
    if n < 1 or m < 1:
        raise HtlFormatError("counts must be positive", counts_no)
    body = significant[2:]
    if len(body) != n:
        raise HtlFormatError(f"expected {n} polygon lines, found {len(body)}",
                             body[-1][0] if body else counts_no)
    polygons = []
    total = 0
    for line_no, raw in body:
        poly = []
        col = 0
        for token in raw.split():
            col = raw.index(token, col) + 1
            value = _int_token(token, line_no, col)
            if not 1 <= value <= m:
                raise HtlFormatError(f"label {value} outside 1..{m}", line_no, col)
            poly.append(value)
        if not poly:
            raise HtlFormatError("empty polygon line", line_no)
        total += len(poly)
        polygons.append(tuple(poly))
    if total != 3 * m:
        raise HtlFormatError(f"vertex total {total} != 3m = {3 * m}", body[-1][0])
    return Labeling(tuple(polygons), m)


def emit_htl(lab: Labeling) -> str:
    """Canonical byte-exact document for a labeling."""
    if lab.total != 3 * lab.m:
        raise StructureError("refusing to emit a labeling with vertex total != 3m")
    lines = [FORMAT_HEADER, f"{lab.n} {lab.m}"]
    lines.extend(" ".join(str(x) for x in poly) for poly in lab.polygons)
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> CubicGraph:
    """Parse an edge list (one ``u v`` pair per line, 1-based vertices)."""
    edges = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        if len(tokens) != 2:
            raise HtlFormatError("expected two vertex ids per line", line_no)
        u = _int_token(tokens[0], line_no, raw.index(tokens[0]) + 1)
        v = _int_token(tokens[1], line_no, raw.rindex(tokens[1]) + 1)
        edges.append((u, v))
    if not edges:
        raise HtlFormatError("empty graph document", 1)
    return CubicGraph.from_edges(edges)


def _violation_record(v) -> dict:
    return {
        "condition": v.condition,
        "polygon": v.polygon,
        "position": v.position,
        "labels": list(v.labels),
        "message": v.message,
    }


def analyze_export(lab: Labeling) -> dict:
    """Machine-readable topology/geometry record for a labeling.

    Non-proper input yields the violation list instead of topology.
    """
    report = verify(lab)
    record: dict = {
        "n": lab.n,
        "m": lab.m,
        "sizes": list(lab.sizes),
        "k": lab.regular_size(),
        "proper": report.proper,
    }
    if not report.proper:
        record["violations"] = [_violation_record(v) for v in report.violations]
        return record

    surf = glue(lab)
    g = genus(surf)
    area = geom.area_from_chi(surf.chi)
    record.update({
        "oriented_labeling": report.oriented,
        "orientable_surface": surf.orientable,
        "vertices": surf.V,
        "edges": surf.E,
        "faces": surf.F,
        "chi": surf.chi,
        "genus": g.genus,
        "crosscap": g.crosscap,
        "area": {"exact": geom.pi_multiple_str(area),
                 "value": geom.pi_multiple_float(area)},
        "triangles": lab.m,
        "label_class_match": surf.label_class_match,
    })
    k = lab.regular_size()
    if k is not None and k >= 7:
        N = geom.n_min(k)
        minimal = lab.n == N or (surf.orientable and
                                 lab.n == (N if k % 12 in geom.ORIENTED_SAME_RESIDUES else 2 * N))
        bound = geom.triangle_bound_value(lab.n, Fraction(2, k))
        record.update({
            "n_min": N,
            "minimal": lab.n == N,
            "minimal_oriented": surf.orientable and area == geom.minimal_area(k).oriented,
            "eek_admissible": geom.eek_admissible(lab.m, k),
            "triangle_bound": {"exact": geom.pi_multiple_str(bound),
                               "equality": bound == area},
            "subgroup_index": 2 * N * k if minimal else None,
        })
    return record


def analyze_json(lab: Labeling) -> str:
    return json.dumps(analyze_export(lab), indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# schematic SVG rendering

RENDER_POLYGON_LIMIT = 24
_SVG_HEADER = (
    '<?xml version="1.0" encoding="UTF-8"?>\n'
    '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
    'width="{w}" height="{h}" viewBox="0 0 {w} {h}">\n'
)


def _pair_color(index: int, count: int) -> str:
    hue = int(360 * index / max(count, 1))
    return f"hsl({hue}, 70%, 45%)"


def render_svg(lab: Labeling) -> str:
    """Schematic drawing: each polygon as a regular Euclidean polygon with
    corner labels; the two edges of every proper pair share a colour and a
    pair id.  Deterministic output."""
    report = verify(lab, strict_size=False)
    if not report.proper:
        raise LabelingError("refusing to draw a non-proper labeling")
    if lab.n > RENDER_POLYGON_LIMIT:
        raise LabelingError(
            f"{lab.n} polygons exceed the drawing limit of {RENDER_POLYGON_LIMIT}"
        )
    table = pairing(lab)
    pair_index = {}
    for idx, pr in enumerate(table):
        pair_index[pr.first] = idx
        pair_index[pr.second] = idx

    radius = 110.0
    cell = 2 * radius + 70.0
    cols = max(1, math.ceil(math.sqrt(lab.n)))
    rows = math.ceil(lab.n / cols)
    width = int(cols * cell + 40)
    height = int(rows * cell + 40)

    def corner_xy(p: int, i: int) -> tuple[float, float]:
        size = len(lab.polygons[p])
        cx = 40 + cell / 2 + (p % cols) * cell
        cy = 40 + cell / 2 + (p // cols) * cell
        angle = -math.pi / 2 + 2 * math.pi * i / size
        return cx + radius * math.cos(angle), cy + radius * math.sin(angle)

    parts = [_SVG_HEADER.format(w=width, h=height)]
    parts.append('<g stroke-width="3" fill="none">\n')
    for p, poly in enumerate(lab.polygons):
        size = len(poly)
        for i in range(size):
            x1, y1 = corner_xy(p, i)
            x2, y2 = corner_xy(p, (i + 1) % size)
            idx = pair_index[EdgeRef(p, i)]
            color = _pair_color(idx, len(table))
            parts.append(
                f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
                f'stroke="{color}" data-pair="{idx}">'
                f"<title>pair {idx}</title></line>\n"
            )
    parts.append("</g>\n")
    parts.append('<g font-family="monospace" font-size="14" text-anchor="middle">\n')
    for p, poly in enumerate(lab.polygons):
        size = len(poly)
        cx = 40 + cell / 2 + (p % cols) * cell
        cy = 40 + cell / 2 + (p // cols) * cell
        parts.append(f'<text x="{cx:.2f}" y="{cy:.2f}">{p}</text>\n')
        for i, label in enumerate(poly):
            x, y = corner_xy(p, i)
            lx = cx + (x - cx) * 1.13
            ly = cy + (y - cy) * 1.13 + 5
            parts.append(f'<text x="{lx:.2f}" y="{ly:.2f}">{label}</text>\n')
    parts.append("</g>\n</svg>\n")
    return "".join(parts)
