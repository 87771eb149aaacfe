"""Gluing a proper labeling into a closed surface and reading off its topology.

Identifying the two edges of every proper pair (intrinsic tail to intrinsic
tail, head to head) turns the polygon family into a closed CW complex with
``F = n`` faces and ``E = 3m/2`` edges.  The corner slots merge into vertex
classes; in a valid tiling every class has exactly three corners and the
classes coincide with the label classes.  From ``V - E + F`` the Euler
characteristic follows, and a parity-free 2-colouring of the polygons
decides orientability.
"""

from __future__ import annotations

from dataclasses import dataclass

from .labeling import (
    EdgePair,
    EdgeRef,
    Labeling,
    LabelingError,
    NotProperError,
    PairingTable,
    edge_record,
    oriented,
    pairing,
    reverse_polygons,
    verify,
)


class GluingError(LabelingError):
    """The glued complex is not a valid closed-surface tiling."""


class AlreadyOrientableError(LabelingError):
    """Asked to build an orientation double cover of an orientable surface."""


class FoldObstructionError(LabelingError):
    """No labeling of polygon copies can encode the requested cover.

    When a labeling contains a repeated-label block, the block's two fold
    edges lift to four parallel edges between one pair of cover vertices;
    four parallel edges between two vertices cannot satisfy the two-edges-
    per-label-pair rule, so the cover of such a labeling has no proper
    labeling on plain polygon copies.
    """


@dataclass
class GenusDescriptor:
    orientable: bool
    genus: int | None = None
    crosscap: int | None = None

    def __str__(self):
        if self.orientable:
            return f"orientable, genus {self.genus}"
        return f"non-orientable, cross-caps {self.crosscap}"


def _corner_pairs(lab: Labeling, pair: EdgePair) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Corner identifications ((p,i) ~ (q,j)) induced by one edge pair."""
    if pair.kind == "fold":
        p = pair.first.polygon
        size = len(lab.polygons[p])
        c = pair.first.position
        assert pair.second == EdgeRef(p, (c + 1) % size)
        return [
            ((p, c), (p, (c + 1) % size)),
            ((p, (c + 1) % size), (p, (c + 2) % size)),
        ]
    i, j = pair.labels
    out = []
    ends = []
    for ref in (pair.first, pair.second):
        rec = edge_record(lab, ref)
        size = len(lab.polygons[ref.polygon])
        tail = (ref.polygon, ref.position)
        head = (ref.polygon, (ref.position + 1) % size)
        i_corner = tail if rec.tail_label == i else head
        j_corner = head if rec.tail_label == i else tail
        ends.append((i_corner, j_corner))
    out.append((ends[0][0], ends[1][0]))
    out.append((ends[0][1], ends[1][1]))
    return out


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, a: int) -> int:
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


@dataclass
class GluedSurface:
    """The quotient CW structure of a proper labeling."""

    labeling: Labeling
    pairs: PairingTable
    vertex_classes: tuple[tuple[tuple[int, int], ...], ...]
    V: int
    E: int
    F: int
    chi: int
    connected: bool
    orientable: bool
    polygon_signs: tuple[int, ...] | None
    label_class_match: bool

    def class_of(self, corner: tuple[int, int]) -> int:
        return self._class_index[corner]

    def __post_init__(self):
        self._class_index = {}
        for idx, cls in enumerate(self.vertex_classes):
            for corner in cls:
                self._class_index[corner] = idx


def _corner_offsets(lab: Labeling) -> list[int]:
    offsets = [0]
    for poly in lab.polygons:
        offsets.append(offsets[-1] + len(poly))
    return offsets


def glue(lab: Labeling) -> GluedSurface:
    """Identify proper pairs and compute V, E, F, chi and orientability."""
    report = verify(lab, strict_size=False)
    if not report.proper:
        raise NotProperError(report.first_failed() or "?",
                             f"cannot glue: condition {report.first_failed()} fails")
    table = pairing(lab)
    offsets = _corner_offsets(lab)
    total = offsets[-1]
    uf = _UnionFind(total)

    def flat(corner):
        p, i = corner
        return offsets[p] + i

    for pair in table:
        for a, b in _corner_pairs(lab, pair):
            uf.union(flat(a), flat(b))

    classes: dict[int, list[tuple[int, int]]] = {}
    for p, poly in enumerate(lab.polygons):
        for i in range(len(poly)):
            classes.setdefault(uf.find(offsets[p] + i), []).append((p, i))
    vertex_classes = tuple(tuple(sorted(cls)) for cls in sorted(classes.values()))

    V = len(vertex_classes)
    E = 3 * lab.m // 2
    F = lab.n
    chi = V - E + F

    # connectivity of the glued complex (condition (ii) should force it)
    puf = _UnionFind(lab.n)
    for pair in table:
        puf.union(pair.first.polygon, pair.second.polygon)
    connected = len({puf.find(p) for p in range(lab.n)}) == 1
    if not connected:
        raise GluingError("glued complex is disconnected despite passing verification")

    orientable, signs = _orientation_signs(lab, table)

    match = V == lab.m and all(
        len({lab.polygons[p][i] for p, i in cls}) == 1 and len(cls) == 3
        for cls in vertex_classes
    )

    return GluedSurface(
        labeling=lab,
        pairs=table,
        vertex_classes=vertex_classes,
        V=V,
        E=E,
        F=F,
        chi=chi,
        connected=connected,
        orientable=orientable,
        polygon_signs=signs,
        label_class_match=match,
    )


def _orientation_signs(lab: Labeling, table: PairingTable) -> tuple[bool, tuple[int, ...] | None]:
    """2-colouring sigma with sigma(P_e) sign(e) = -sigma(P_f) sign(f) per pair."""
    n = lab.n
    signs = [0] * n
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for pair in table:
        e, f = pair.first, pair.second
        se = edge_record(lab, e).intrinsic_sign
        sf = edge_record(lab, f).intrinsic_sign
        rel = -se * sf  # required sigma(P_e) * sigma(P_f)
        if e.polygon == f.polygon:
            if rel != 1:
                return False, None
        else:
            adj[e.polygon].append((f.polygon, rel))
            adj[f.polygon].append((e.polygon, rel))
    for start in range(n):
        if signs[start]:
            continue
        signs[start] = 1
        stack = [start]
        while stack:
            p = stack.pop()
            for q, rel in adj[p]:
                want = signs[p] * rel
                if signs[q] == 0:
                    signs[q] = want
                    stack.append(q)
                elif signs[q] != want:
                    return False, None
    return True, tuple(signs)


def orientability(surface: GluedSurface) -> tuple[bool, tuple[int, ...] | None]:
    """Whether the glued surface is orientable, with a polygon-sign witness."""
    return surface.orientable, surface.polygon_signs


def reorient(lab: Labeling, signs: tuple[int, ...]) -> Labeling:
    """Reverse the polygons with sign -1; on an orientable gluing this yields
    a labeling whose pairs all carry opposite signs."""
    return reverse_polygons(lab, [p for p, s in enumerate(signs) if s == -1])


def genus(surface: GluedSurface) -> GenusDescriptor:
    """Classify the surface from chi and orientability."""
    chi = surface.chi
    if surface.orientable:
        if chi % 2 != 0:
            raise GluingError(f"orientable surface with odd chi = {chi}")
        return GenusDescriptor(True, genus=(2 - chi) // 2)
    return GenusDescriptor(False, crosscap=2 - chi)


# ---------------------------------------------------------------------------
# dual triangle tiling


@dataclass(frozen=True)
class TriangleFace:
    """One triangle of the dual tiling: the three polygons around a vertex."""

    label: int
    polygons: tuple[int, ...]


@dataclass(frozen=True)
class DualTiling:
    triangles: tuple[TriangleFace, ...]
    adjacency: tuple[tuple[int, int], ...]
    vertices: int
    edges: int
    faces: int
    chi: int


def _end_partners(lab: Labeling, table: PairingTable):
    """Partner map on (edge, end) where end is "tail" or "head"."""
    partner: dict[tuple[EdgeRef, str], tuple[EdgeRef, str]] = {}

    def link(a, b):
        partner[a] = b
        partner[b] = a

    for pair in table:
        e, f = pair.first, pair.second
        if pair.kind == "fold":
            link((e, "tail"), (f, "tail"))
            link((e, "head"), (f, "head"))
        else:
            i, _ = pair.labels
            ends = []
            for ref in (e, f):
                rec = edge_record(lab, ref)
                i_end = "tail" if rec.tail_label == i else "head"
                ends.append(i_end)
            link((e, ends[0]), (f, ends[1]))
            other = {"tail": "head", "head": "tail"}
            link((e, other[ends[0]]), (f, other[ends[1]]))
    return partner


def dual(surface: GluedSurface, lab: Labeling | None = None) -> DualTiling:
    """The triangle tiling dual to the polygon tiling.

    One triangle per vertex class (equivalently per label), its corners at
    the polygons meeting that vertex, in rotation order around the vertex.
    """
    lab = lab or surface.labeling
    if not surface.label_class_match:
        raise GluingError("dual tiling needs vertex classes equal to label classes")
    k = lab.regular_size()
    if k is None:
        raise GluingError("dual tiling is defined for families of equal-size polygons only")

    partner = _end_partners(lab, surface.pairs)

    def corner_of(end):
        ref, which = end
        size = len(lab.polygons[ref.polygon])
        return (ref.polygon, ref.position if which == "tail" else (ref.position + 1) % size)

    def out_end(corner):
        p, i = corner
        return (EdgeRef(p, i), "tail")

    def in_end(corner):
        p, i = corner
        size = len(lab.polygons[p])
        return (EdgeRef(p, (i - 1) % size), "head")

    triangles = []
    for cls in surface.vertex_classes:
        start = min(cls)
        order = [start]
        end = out_end(start)
        while True:
            end = partner[end]
            corner = corner_of(end)
            if corner == start and len(order) == len(cls):
                break
            order.append(corner)
            arrived_out = end == out_end(corner)
            end = in_end(corner) if arrived_out else out_end(corner)
            if len(order) > len(cls):
                raise GluingError("vertex link walk does not close over the class")
        label = lab.polygons[start[0]][start[1]]
        triangles.append(TriangleFace(label, tuple(p for p, _ in order)))
    triangles.sort(key=lambda t: t.label)

    adjacency = []
    for pair in surface.pairs:
        e = pair.first
        size = len(lab.polygons[e.polygon])
        a = surface.class_of((e.polygon, e.position))
        b = surface.class_of((e.polygon, (e.position + 1) % size))
        adjacency.append((min(a, b), max(a, b)))
    adjacency.sort()

    t = len(triangles)
    assert t == lab.m
    assert 3 * t == lab.n * k
    vertices, edges_, faces = lab.n, 3 * lab.m // 2, t
    chi = vertices - edges_ + faces
    assert chi == surface.chi
    return DualTiling(tuple(triangles), tuple(adjacency), vertices, edges_, faces, chi)


# ---------------------------------------------------------------------------
# orientation double cover


def has_folds(lab: Labeling) -> bool:
    """Whether any polygon contains a repeated-label block."""
    for poly in lab.polygons:
        size = len(poly)
        if any(poly[i] == poly[(i + 1) % size] for i in range(size)):
            return True
    return False


def double_cover(lab: Labeling) -> Labeling:
    """A proper, oriented labeling of twice the polygons gluing to the
    orientation double cover (two copies of each polygon, second reversed).

    Compatible pairs (opposite signs) lift to both sheets unchanged;
    incompatible pairs lift crosswise between the sheets.  Labels are read
    off the cover's vertex classes in first-visit order.

    Labelings with repeated-label blocks admit no such lift (see
    :class:`FoldObstructionError`); for a family of equal-size polygons an
    equivalent block-free labeling of the same polygon count and size (same
    Euler characteristic) is covered instead.
    """
    surf = glue(lab)
    if surf.orientable:
        raise AlreadyOrientableError("surface is already orientable; use the labeling directly")

    if has_folds(lab):
        k = lab.regular_size()
        if k is None:
            raise FoldObstructionError(
                "labeling has repeated-label blocks and mixed polygon sizes; "
                "its orientation cover has no proper labeling"
            )
        from . import builders  # deferred: builders depends on this module

        expected = builders.predicted_chi(k, lab.n)
        if surf.chi != expected:
            raise FoldObstructionError(
                f"chi {surf.chi} differs from the counting value {expected}; "
                "no equivalent block-free relative applies"
            )
        return builders.cover_equivalent(k, lab.n)

    offsets = _corner_offsets(lab)
    total = offsets[-1]
    uf = _UnionFind(2 * total)

    def flat(corner, sheet):
        p, i = corner
        return sheet * total + offsets[p] + i

    for pair in surf.pairs:
        se = edge_record(lab, pair.first).intrinsic_sign
        sf = edge_record(lab, pair.second).intrinsic_sign
        compatible = se * sf == -1
        for a, b in _corner_pairs(lab, pair):
            if compatible:
                uf.union(flat(a, 0), flat(b, 0))
                uf.union(flat(a, 1), flat(b, 1))
            else:
                uf.union(flat(a, 0), flat(b, 1))
                uf.union(flat(a, 1), flat(b, 0))

    # first-visit class numbering along the output reading order
    new_label: dict[int, int] = {}

    def label_of(corner, sheet):
        root = uf.find(flat(corner, sheet))
        if root not in new_label:
            new_label[root] = len(new_label) + 1
        return new_label[root]

    rows: list[tuple[int, ...]] = []
    for p, poly in enumerate(lab.polygons):
        rows.append(tuple(label_of((p, i), 0) for i in range(len(poly))))
    for p, poly in enumerate(lab.polygons):
        rows.append(tuple(label_of((p, i), 1) for i in reversed(range(len(poly)))))

    if len(new_label) != 2 * lab.m:
        raise FoldObstructionError(
            f"cover produced {len(new_label)} vertex classes, expected {2 * lab.m}"
        )
    cover = Labeling(tuple(rows), 2 * lab.m)

    report = verify(cover, strict_size=False)
    if not report.proper:
        raise FoldObstructionError(
            f"cover labeling is not proper (condition {report.first_failed()})"
        )
    cover_surface = glue(cover)
    assert cover_surface.chi == 2 * surf.chi, "cover must double the Euler characteristic"
    assert cover_surface.orientable, "cover must be orientable"
    assert oriented(cover), "block-free cover must be oriented as labeled"
    return cover
