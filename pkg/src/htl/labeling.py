"""Vertex labelings of polygon families and the proper-labeling conditions.

A labeling assigns a label from ``1..m`` to every corner of ``n`` convex
polygons whose corner total is ``3m``.  Five conditions make a labeling
*proper*:

  (i)    every label is used exactly three times;
  (ii)   no proper non-empty subset of the polygons sees every label
         0 or 3 times (the family cannot be split);
  (iii)  a label repeated on consecutive corners always comes as a block
         of exactly three (never two, never more than three);
  (iv)   for distinct labels i, j the number of boundary edges whose
         endpoints are labeled {i, j} is 0 or 2;
  (v)    no corner has both neighbours carrying one common label that
         differs from its own.

A proper labeling matches the ``3m`` boundary edges into *proper pairs*:
the two edges sharing a two-label endpoint set (iv), or the two inner
edges of a repeated-label block (iii).  Identifying paired edges glues
the polygons into a closed surface (see :mod:`htl.surface`).

Every edge gets an intrinsic direction: from the smaller endpoint label
to the larger one, or along the polygon's positive boundary direction
when the endpoint labels coincide.  An edge is *positive* if its
intrinsic direction agrees with the positive boundary direction.  The
labeling is *oriented* when the two edges of every proper pair carry
opposite signs; only then does the glued surface inherit a consistent
orientation from the polygons directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence


class LabelingError(Exception):
    """Base class for all errors raised by this package."""


class StructureError(LabelingError):
    """The data does not even describe a labeling (ranges, totals)."""


class NotProperError(LabelingError):
    """An operation that needs a proper labeling was given a non-proper one."""

    def __init__(self, condition: str, message: str = ""):
        self.condition = condition
        super().__init__(message or f"labeling is not proper: condition {condition} fails")


MIN_POLYGON_SIZE = 7


@dataclass(frozen=True)
class Labeling:
    """An ordered family of cyclic label sequences over labels ``1..m``.

    ``polygons[p][i]`` is the label of corner ``i`` of polygon ``p``, read
    in the polygon's positive boundary direction.  The corner total is
    always ``3 * m``.
    """

    polygons: tuple[tuple[int, ...], ...]
    m: int

    def __post_init__(self):
        if not self.polygons:
            raise StructureError("labeling needs at least one polygon")
        if self.m < 1:
            raise StructureError(f"label count m={self.m} must be positive")
        for p, poly in enumerate(self.polygons):
            if not poly:
                raise StructureError(f"polygon {p} is empty")
            for i, lab in enumerate(poly):
                if not isinstance(lab, int) or isinstance(lab, bool):
                    raise StructureError(f"polygon {p} position {i}: label {lab!r} is not an integer")
                if lab < 1 or lab > self.m:
                    raise StructureError(
                        f"polygon {p} position {i}: label {lab} outside 1..{self.m}"
                    )
        # the corner total T = 3m is a *verified* invariant, not a construction
        # precondition: near-miss data must remain representable so that
        # verify() can report on it

    @staticmethod
    def from_rows(rows: Iterable[Sequence[int]], m: int | None = None) -> "Labeling":
        polys = tuple(tuple(int(x) for x in row) for row in rows)
        if m is None:
            m = max((max(p) for p in polys), default=0)
        return Labeling(polys, m)

    @property
    def n(self) -> int:
        return len(self.polygons)

    @property
    def total(self) -> int:
        return sum(len(p) for p in self.polygons)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.polygons)

    def regular_size(self) -> int | None:
        """Common polygon size, or None if the polygons differ in size."""
        sizes = set(self.sizes)
        return sizes.pop() if len(sizes) == 1 else None

    def label_positions(self) -> dict[int, list[tuple[int, int]]]:
        """Map each label to its list of (polygon, position) corners."""
        occ: dict[int, list[tuple[int, int]]] = {lab: [] for lab in range(1, self.m + 1)}
        for p, poly in enumerate(self.polygons):
            for i, lab in enumerate(poly):
                occ[lab].append((p, i))
        return occ

    def neighbor_labels(self, p: int, i: int) -> tuple[int, int]:
        """Labels of the two cyclic neighbours of corner (p, i)."""
        poly = self.polygons[p]
        size = len(poly)
        return poly[(i - 1) % size], poly[(i + 1) % size]

    def __str__(self):
        body = "; ".join(",".join(str(x) for x in poly) for poly in self.polygons)
        return f"<Labeling n={self.n} m={self.m}: {body}>"


@dataclass(frozen=True, order=True)
class EdgeRef:
    """Boundary edge from corner ``position`` to ``position + 1`` (cyclic)."""

    polygon: int
    position: int


@dataclass(frozen=True)
class EdgeRecord:
    """An edge with its endpoint labels and intrinsic direction sign.

    ``tail_label`` and ``head_label`` are read in positive boundary order.
    ``intrinsic_sign`` is +1 when the intrinsic direction (small label to
    large label; boundary direction for equal labels) agrees with the
    positive boundary direction, -1 otherwise.
    """

    edge: EdgeRef
    tail_label: int
    head_label: int
    intrinsic_sign: int

    @property
    def label_set(self) -> tuple[int, int]:
        a, b = self.tail_label, self.head_label
        return (a, b) if a <= b else (b, a)

    @property
    def is_flat(self) -> bool:
        """True when both endpoints carry the same label."""
        return self.tail_label == self.head_label


def edge_record(lab: Labeling, edge: EdgeRef) -> EdgeRecord:
    poly = lab.polygons[edge.polygon]
    size = len(poly)
    tail = poly[edge.position]
    head = poly[(edge.position + 1) % size]
    sign = 1 if tail <= head else -1
    return EdgeRecord(edge, tail, head, sign)


def edges(lab: Labeling) -> list[EdgeRecord]:
    """All 3m boundary edges in (polygon, position) order."""
    out = []
    for p, poly in enumerate(lab.polygons):
        for i in range(len(poly)):
            out.append(edge_record(lab, EdgeRef(p, i)))
    return out


@dataclass(frozen=True)
class EdgePair:
    """Two edges identified with each other by the gluing.

    ``kind`` is "distinct" for a two-label pair (condition (iv)) and
    "fold" for the two inner edges of a repeated-label block (iii).
    """

    first: EdgeRef
    second: EdgeRef
    kind: str
    labels: tuple[int, int]


class PairingTable:
    """Perfect matching of all 3m edges into proper pairs."""

    def __init__(self, pairs: Sequence[EdgePair]):
        self.pairs = tuple(pairs)
        self._partner: dict[EdgeRef, EdgeRef] = {}
        self._pair_of: dict[EdgeRef, EdgePair] = {}
        for pair in self.pairs:
            for a, b in ((pair.first, pair.second), (pair.second, pair.first)):
                if a in self._partner:
                    raise StructureError(f"edge {a} appears in two pairs")
                self._partner[a] = b
                self._pair_of[a] = pair

    def partner(self, edge: EdgeRef) -> EdgeRef:
        return self._partner[edge]

    def pair_of(self, edge: EdgeRef) -> EdgePair:
        return self._pair_of[edge]

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)


@dataclass(frozen=True)
class Violation:
    """One concrete failure of one condition."""

    condition: str
    polygon: int | None
    position: int | None
    labels: tuple[int, ...]
    message: str

    def __str__(self):
        where = "" if self.polygon is None else f" [polygon {self.polygon}" + (
            f", position {self.position}]" if self.position is not None else "]"
        )
        return f"({self.condition}){where} {self.message}"


CONDITION_IDS = ("total", "m-even", "size", "label-range", "i", "ii", "iii", "iv", "v")


@dataclass(frozen=True)
class VerificationReport:
    """Exhaustive verdicts for the structural checks and conditions (i)-(v)."""

    verdicts: dict[str, bool]
    violations: tuple[Violation, ...]
    proper: bool
    oriented: bool

    def first_failed(self) -> str | None:
        for cond in CONDITION_IDS:
            if not self.verdicts[cond]:
                return cond
        return None

    def __str__(self):
        lines = [
            "proper" if self.proper else "NOT proper",
            "oriented" if self.oriented else "not oriented",
        ]
        for cond in CONDITION_IDS:
            lines.append(f"  {cond}: {'ok' if self.verdicts[cond] else 'FAIL'}")
        for v in self.violations:
            lines.append(f"  - {v}")
        return "\n".join(lines)


def _cyclic_runs(poly: Sequence[int]) -> list[tuple[int, int]]:
    """Maximal blocks of equal consecutive labels as (start, length), cyclic."""
    size = len(poly)
    if size == 0:
        return []
    if all(x == poly[0] for x in poly):
        return [(0, size)]
    # rotate to a position where a block starts
    start = 0
    while poly[start] == poly[start - 1]:
        start -= 1  # negative indexing walks the wrap-around block
    start %= size
    runs = []
    i = 0
    while i < size:
        j = i
        while j + 1 < size and poly[(start + j + 1) % size] == poly[(start + i) % size]:
            j += 1
        runs.append(((start + i) % size, j - i + 1))
        i = j + 1
    return runs


def _label_counts(lab: Labeling) -> dict[int, int]:
    counts = dict.fromkeys(range(1, lab.m + 1), 0)
    for poly in lab.polygons:
        for x in poly:
            counts[x] += 1
    return counts


def _per_polygon_counts(lab: Labeling) -> list[dict[int, int]]:
    out = []
    for poly in lab.polygons:
        c: dict[int, int] = {}
        for x in poly:
            c[x] = c.get(x, 0) + 1
        out.append(c)
    return out


def condition_ii_subsets(lab: Labeling) -> list[Violation]:
    """Literal check of the split condition over all proper non-empty subsets."""
    n = lab.n
    per_poly = _per_polygon_counts(lab)
    bad = []
    for mask in range(1, (1 << n) - 1):
        counts: dict[int, int] = {}
        members = []
        for p in range(n):
            if mask >> p & 1:
                members.append(p)
                for lab_id, c in per_poly[p].items():
                    counts[lab_id] = counts.get(lab_id, 0) + c
        if not any(c in (1, 2) for c in counts.values()):
            bad.append(
                Violation(
                    "ii",
                    None,
                    None,
                    tuple(members),
                    f"polygon subset {tuple(members)} sees every label 0 or 3 times",
                )
            )
    return bad


def condition_ii_connectivity(lab: Labeling) -> list[Violation]:
    """Split condition via connectivity of the shares-a-label polygon graph.

    Agrees with the literal subset check on every proper labeling (the two
    are asserted equal in the test-suite for small families); used for
    families too large to enumerate subsets over.
    """
    n = lab.n
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    occ = lab.label_positions()
    for corners in occ.values():
        polys = sorted({p for p, _ in corners})
        for q in polys[1:]:
            ra, rb = find(polys[0]), find(q)
            if ra != rb:
                parent[rb] = ra
    roots = {find(p) for p in range(n)}
    if len(roots) == 1:
        return []
    comps: dict[int, list[int]] = {}
    for p in range(n):
        comps.setdefault(find(p), []).append(p)
    smallest = min(comps.values(), key=lambda c: (len(c), c))
    return [
        Violation(
            "ii",
            None,
            None,
            tuple(smallest),
            f"polygon family splits; component {tuple(smallest)} shares no label with the rest",
        )
    ]


SUBSET_CHECK_LIMIT = 12


@lru_cache(maxsize=8192)
def verify(lab: Labeling, strict_size: bool = True) -> VerificationReport:
    """Check every structural rule and condition; report all violations.

    ``strict_size`` enforces the minimum polygon size of 7; relaxed mode
    (for search experiments on small instances) drops that bound only.

    Labelings are immutable, so reports are cached; treat them as
    read-only values.
    """
    violations: list[Violation] = []
    verdicts: dict[str, bool] = {}

    verdicts["total"] = lab.total == 3 * lab.m
    if not verdicts["total"]:
        violations.append(
            Violation("total", None, None, (lab.total, lab.m),
                      f"corner total {lab.total} != 3m = {3 * lab.m}")
        )

    verdicts["m-even"] = lab.m % 2 == 0
    if not verdicts["m-even"]:
        violations.append(Violation("m-even", None, None, (lab.m,), f"m = {lab.m} is odd"))

    size_ok = True
    if strict_size:
        for p, poly in enumerate(lab.polygons):
            if len(poly) < MIN_POLYGON_SIZE:
                size_ok = False
                violations.append(
                    Violation("size", p, None, (), f"polygon {p} has {len(poly)} < {MIN_POLYGON_SIZE} corners")
                )
    verdicts["size"] = size_ok

    counts = _label_counts(lab)
    missing = [x for x, c in counts.items() if c == 0]
    verdicts["label-range"] = not missing
    for x in missing:
        violations.append(Violation("label-range", None, None, (x,), f"label {x} never occurs"))

    # (i) every label exactly three times
    bad_i = [(x, c) for x, c in counts.items() if c != 3]
    verdicts["i"] = not bad_i
    for x, c in bad_i:
        violations.append(Violation("i", None, None, (x, c), f"label {x} occurs {c} times, not 3"))

    # (ii) no splittable subset
    if lab.n <= SUBSET_CHECK_LIMIT:
        bad_ii = condition_ii_subsets(lab)
    else:
        bad_ii = condition_ii_connectivity(lab)
    verdicts["ii"] = not bad_ii
    violations.extend(bad_ii)

    # (iii) repeated-label blocks have length exactly 1 or 3
    bad_iii = []
    for p, poly in enumerate(lab.polygons):
        for start, length in _cyclic_runs(poly):
            if length == len(poly):
                bad_iii.append(
                    Violation("iii", p, start, (poly[start],),
                              f"polygon {p} is a single block of label {poly[start]}")
                )
            elif length not in (1, 3):
                bad_iii.append(
                    Violation("iii", p, start, (poly[start],),
                              f"label {poly[start]} repeats {length} times in a row in polygon {p}")
                )
    verdicts["iii"] = not bad_iii
    violations.extend(bad_iii)

    # (iv) each two-label edge class has 0 or 2 members
    pair_counts: dict[tuple[int, int], list[EdgeRef]] = {}
    for rec in edges(lab):
        if not rec.is_flat:
            pair_counts.setdefault(rec.label_set, []).append(rec.edge)
    bad_iv = [(labels, refs) for labels, refs in pair_counts.items() if len(refs) != 2]
    verdicts["iv"] = not bad_iv
    for labels, refs in sorted(bad_iv):
        violations.append(
            Violation("iv", refs[0].polygon, refs[0].position, labels,
                      f"{len(refs)} edges carry endpoint labels {labels}, expected 0 or 2")
        )

    # (v) no corner flanked on both sides by one foreign label
    bad_v = []
    for p, poly in enumerate(lab.polygons):
        for i, x in enumerate(poly):
            a, b = lab.neighbor_labels(p, i)
            if a == b and a != x:
                bad_v.append(
                    Violation("v", p, i, (x, a),
                              f"corner (polygon {p}, position {i}, label {x}) has both neighbours labeled {a}")
                )
    verdicts["v"] = not bad_v
    violations.extend(bad_v)

    proper = all(verdicts.values())
    is_oriented = _oriented_from_scratch(lab) if proper else False
    return VerificationReport(verdicts, tuple(violations), proper, is_oriented)


@lru_cache(maxsize=8192)
def pairing(lab: Labeling) -> PairingTable:
    """The proper-pair matching of all 3m edges.  Requires a proper labeling."""
    report = verify(lab, strict_size=False)
    if not report.proper:
        raise NotProperError(report.first_failed() or "?",
                             f"cannot pair edges: condition {report.first_failed()} fails")
    pairs: list[EdgePair] = []
    buckets: dict[tuple[int, int], list[EdgeRef]] = {}
    for rec in edges(lab):
        if not rec.is_flat:
            buckets.setdefault(rec.label_set, []).append(rec.edge)
    for labels in sorted(buckets):
        refs = buckets[labels]
        assert len(refs) == 2, "condition (iv) guarantees exactly two edges"
        pairs.append(EdgePair(refs[0], refs[1], "distinct", labels))
    for p, poly in enumerate(lab.polygons):
        size = len(poly)
        for start, length in _cyclic_runs(poly):
            if length == 3:
                e1 = EdgeRef(p, start)
                e2 = EdgeRef(p, (start + 1) % size)
                pairs.append(EdgePair(e1, e2, "fold", (poly[start], poly[start])))
    pairs.sort(key=lambda pr: (pr.first.polygon, pr.first.position))
    table = PairingTable(pairs)
    assert 2 * len(table) == 3 * lab.m, "pairing must be a perfect matching"
    return table


def _oriented_from_scratch(lab: Labeling) -> bool:
    records = {rec.edge: rec for rec in edges(lab)}
    buckets: dict[tuple[int, int], list[EdgeRecord]] = {}
    has_fold = False
    for rec in records.values():
        if rec.is_flat:
            has_fold = True
        else:
            buckets.setdefault(rec.label_set, []).append(rec)
    if has_fold:
        # both inner edges of a repeated block run along the boundary: signs +1, +1
        return False
    return all(a.intrinsic_sign == -b.intrinsic_sign for a, b in buckets.values())


def oriented(lab: Labeling) -> bool:
    """True when every proper pair carries opposite intrinsic signs."""
    report = verify(lab, strict_size=False)
    if not report.proper:
        raise NotProperError(report.first_failed() or "?")
    return report.oriented


# ---------------------------------------------------------------------------
# symmetry group and canonical form


def relabel(lab: Labeling, mapping: dict[int, int]) -> Labeling:
    """Apply a label permutation (a bijection on 1..m)."""
    if sorted(mapping) != list(range(1, lab.m + 1)) or sorted(mapping.values()) != list(range(1, lab.m + 1)):
        raise StructureError("mapping must be a permutation of 1..m")
    return Labeling(tuple(tuple(mapping[x] for x in poly) for poly in lab.polygons), lab.m)


def rotate_polygon(lab: Labeling, p: int, r: int) -> Labeling:
    """Rotate polygon p so that corner r comes first."""
    polys = list(lab.polygons)
    poly = polys[p]
    r %= len(poly)
    polys[p] = poly[r:] + poly[:r]
    return Labeling(tuple(polys), lab.m)


def reverse_all(lab: Labeling) -> Labeling:
    """Mirror the whole family: reverse every polygon simultaneously."""
    return Labeling(tuple(tuple(reversed(poly)) for poly in lab.polygons), lab.m)


def reverse_polygons(lab: Labeling, which: Iterable[int]) -> Labeling:
    """Reverse the boundary direction of selected polygons only."""
    chosen = set(which)
    polys = tuple(
        tuple(reversed(poly)) if p in chosen else poly for p, poly in enumerate(lab.polygons)
    )
    return Labeling(polys, lab.m)


def permute_polygons(lab: Labeling, order: Sequence[int]) -> Labeling:
    if sorted(order) != list(range(lab.n)):
        raise StructureError("order must be a permutation of polygon indices")
    return Labeling(tuple(lab.polygons[i] for i in order), lab.m)


def _window_key(poly: Sequence[int], r: int, rename: dict[int, int]) -> tuple[list[int], dict[int, int]]:
    """Encoded (size-prefixed, renamed) window of poly rotated by r."""
    ext = dict(rename)
    nxt = len(ext) + 1
    out = [len(poly)]
    size = len(poly)
    for t in range(size):
        x = poly[(r + t) % size]
        v = ext.get(x)
        if v is None:
            v = nxt
            ext[x] = v
            nxt += 1
        out.append(v)
    return out, ext


def canonicalize(lab: Labeling) -> Labeling:
    """Least representative under polygon reorderings, rotations, the global
    mirror (all polygons reversed together) and label renamings.

    Comparison key: the polygon windows in chosen order, each prefixed by
    its size, with labels renamed in first-use order.  Idempotent.
    """
    best: list[int] | None = None

    def descend(polys, remaining, rename, stream):
        nonlocal best
        if not remaining:
            if best is None or stream < best:
                best = list(stream)
            return
        candidates = []
        for idx in remaining:
            poly = polys[idx]
            for r in range(len(poly)):
                window, ext = _window_key(poly, r, rename)
                candidates.append((window, idx, r, ext))
        candidates.sort(key=lambda c: c[0])
        for window, idx, r, ext in candidates:
            trial = stream + window
            # a trial prefix can only exceed the incumbent's prefix when the
            # stream was equal so far, so breaking on the sorted windows is
            # safe; in a strictly smaller subtree nothing is pruned
            if best is not None and trial > best[:len(trial)]:
                break
            rest = [i for i in remaining if i != idx]
            descend(polys, rest, ext, trial)

    for polys in (lab.polygons, tuple(tuple(reversed(p)) for p in lab.polygons)):
        descend(polys, list(range(lab.n)), {}, [])

    assert best is not None
    out: list[tuple[int, ...]] = []
    i = 0
    while i < len(best):
        size = best[i]
        out.append(tuple(best[i + 1:i + 1 + size]))
        i += 1 + size
    return Labeling(tuple(out), lab.m)
