"""Growth rewrites on proper labelings.

Three verified rewrites enlarge a proper labeling while keeping it proper:

* ``apply_a`` and ``apply_b`` act at a *triangle site*: a label w whose
  three occurrences have neighbour pairs {x,y}, {y,z}, {z,x} on three
  further labels.  They splice two (respectively four) fresh labels into
  the three boundary paths through w, growing each affected path by two
  (respectively four) corners.  ``apply_b`` additionally preserves
  orientedness.

* ``apply_c`` acts at a *pair site*: a proper pair of edges with distinct
  endpoint labels {x,y}.  One chosen side is replaced by a seven-corner
  path carrying a fresh label block, the other side by a three-corner
  path, growing the two sides by five and one corners.

A boundary path may be read against the positive direction; the
replacement string is then spliced in reversed.  Every rewrite re-verifies
its output.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .labeling import (
    EdgeRef,
    Labeling,
    LabelingError,
    NotProperError,
    edge_record,
    pairing,
    verify,
)


class StaleSiteError(LabelingError):
    """The site was discovered on a different labeling."""


class RewriteError(LabelingError):
    """A rewrite produced something that fails verification."""


@dataclass(frozen=True)
class PathWitness:
    """Where one boundary path a-w-b sits: polygon, position of w, and
    whether the boundary reads the path backwards."""

    polygon: int
    center: int
    backwards: bool


@dataclass(frozen=True)
class TriangleSite:
    """Label w whose occurrence neighbourhoods form a triangle {x,y,z}.

    ``witnesses`` hold, in order, the paths (x w y), (y w z), (z w x).
    The ordering of (x, y, z) follows the directed boundary readings
    around w: when the three readings chain into a directed cycle, x is
    the smallest label and every path reads forward; otherwise x is the
    label that starts two readings and exactly one path reads backwards.
    """

    labeling: Labeling
    w: int
    x: int
    y: int
    z: int
    witnesses: tuple[PathWitness, PathWitness, PathWitness]

    def polygons_touched(self) -> tuple[int, ...]:
        return tuple(wit.polygon for wit in self.witnesses)

    def growth(self, per_path: int) -> dict[int, int]:
        """Corner growth per polygon when each path grows by per_path."""
        out: dict[int, int] = {}
        for wit in self.witnesses:
            out[wit.polygon] = out.get(wit.polygon, 0) + per_path
        return out


@dataclass(frozen=True)
class PairSite:
    """A proper pair of edges with distinct endpoint labels x < y."""

    labeling: Labeling
    e: EdgeRef
    f: EdgeRef
    x: int
    y: int

    def side(self, which: str) -> EdgeRef:
        if which == "e":
            return self.e
        if which == "f":
            return self.f
        raise ValueError(f"side must be 'e' or 'f', got {which!r}")


def _require_proper(lab: Labeling) -> None:
    report = verify(lab, strict_size=False)
    if not report.proper:
        raise NotProperError(report.first_failed() or "?")


def triangle_sites(lab: Labeling) -> tuple[TriangleSite, ...]:
    """All triangle sites, ordered by w (at most one site per label)."""
    return _triangle_sites_cached(lab)


@lru_cache(maxsize=4096)
def _triangle_sites_cached(lab: Labeling) -> tuple[TriangleSite, ...]:
    _require_proper(lab)
    occ = lab.label_positions()
    sites = []
    for w in range(1, lab.m + 1):
        corners = occ[w]
        if len(corners) != 3:
            continue
        readings = []  # (polygon, position, prev label, next label)
        ok = True
        for p, i in corners:
            a, b = lab.neighbor_labels(p, i)
            if w in (a, b):
                ok = False  # w sits in a repeated block
                break
            assert a != b, "equal flanks around a corner contradict properness"
            readings.append((p, i, a, b))
        if not ok:
            continue
        labels = sorted({lab_ for _, _, a, b in readings for lab_ in (a, b)})
        if len(labels) != 3 or w in labels:
            continue
        if len({frozenset((a, b)) for _, _, a, b in readings}) != 3:
            continue  # two occurrences share a neighbour pair: no triangle
        out_deg = {lab_: 0 for lab_ in labels}
        for _, _, a, _ in readings:
            out_deg[a] += 1
        if all(v == 1 for v in out_deg.values()):
            # readings chain into a directed cycle: follow it from min label
            succ = {a: b for _, _, a, b in readings}
            x = labels[0]
            y = succ[x]
            z = succ[y]
        else:
            # one label starts two readings; the remaining reading fixes y, z
            x = next(lab_ for lab_, v in out_deg.items() if v == 2)
            y, z = next((a, b) for _, _, a, b in readings if a != x)
        order = ((x, y), (y, z), (z, x))
        slots: list[PathWitness] = []
        for first, second in order:
            p, i, a, b = next(
                r for r in readings if {r[2], r[3]} == {first, second}
            )
            slots.append(PathWitness(p, i, backwards=a != first))
        sites.append(TriangleSite(lab, w, x, y, z, tuple(slots)))
    return tuple(sites)


def pair_sites(lab: Labeling) -> tuple[PairSite, ...]:
    """All distinct-label proper pairs, ordered by their label pair."""
    return _pair_sites_cached(lab)


@lru_cache(maxsize=4096)
def _pair_sites_cached(lab: Labeling) -> tuple[PairSite, ...]:
    _require_proper(lab)
    sites = []
    for pr in pairing(lab):
        if pr.kind == "distinct":
            x, y = pr.labels
            sites.append(PairSite(lab, pr.first, pr.second, x, y))
    sites.sort(key=lambda s: (s.x, s.y, s.e))
    return tuple(sites)


def _splice_polygon(poly, spans):
    """Replace disjoint corner spans (start, length, replacement) in a cyclic
    sequence.  Replacement strings repeat the span's endpoint labels."""
    size = len(poly)
    covered = set()
    for start, length, _ in spans:
        for off in range(length):
            pos = (start + off) % size
            if pos in covered:
                raise RewriteError("overlapping rewrite spans in one polygon")
            covered.add(pos)
    start_map = {start: (length, repl) for start, length, repl in spans}
    free = [p for p in range(size) if p not in covered]
    walk = free[0] if free else min(start_map)
    out = []
    consumed = 0
    t = walk
    while consumed < size:
        if t in start_map:
            length, repl = start_map[t]
            if repl[0] != poly[t] or repl[-1] != poly[(t + length - 1) % size]:
                raise RewriteError("replacement does not preserve the span endpoints")
            out.extend(repl)
            consumed += length
            t = (t + length) % size
        else:
            out.append(poly[t])
            consumed += 1
            t = (t + 1) % size
    return tuple(out)


def _apply_paths(lab: Labeling, site: TriangleSite, strings) -> Labeling:
    per_polygon: dict[int, list] = {}
    for wit, string in zip(site.witnesses, strings):
        poly = lab.polygons[wit.polygon]
        size = len(poly)
        repl = tuple(reversed(string)) if wit.backwards else tuple(string)
        start = (wit.center - 1) % size
        per_polygon.setdefault(wit.polygon, []).append((start, 3, repl))
    new_polys = list(lab.polygons)
    for p, spans in per_polygon.items():
        new_polys[p] = _splice_polygon(lab.polygons[p], spans)
    fresh = {lab_ for s in strings for lab_ in s if lab_ > lab.m}
    return Labeling(tuple(new_polys), lab.m + len(fresh))


def _check_site(lab: Labeling, site: TriangleSite) -> None:
    if site.labeling != lab:
        raise StaleSiteError("triangle site was found on a different labeling")


def apply_a(lab: Labeling, site: TriangleSite) -> Labeling:
    """Two-label growth at a triangle site: each of the three paths through
    w gains two corners; the label count grows by two."""
    _check_site(lab, site)
    w, x, y, z = site.w, site.x, site.y, site.z
    alpha, beta = lab.m + 1, lab.m + 2
    strings = (
        (x, alpha, w, beta, y),
        (y, beta, alpha, w, z),
        (z, w, beta, alpha, x),
    )
    result = _apply_paths(lab, site, strings)
    report = verify(result, strict_size=False)
    if not report.proper:
        raise RewriteError(f"two-label rewrite broke condition {report.first_failed()}")
    return result


def apply_b(lab: Labeling, site: TriangleSite) -> Labeling:
    """Four-label growth at a triangle site: each path gains four corners.
    Preserves orientedness."""
    _check_site(lab, site)
    w, x, y, z = site.w, site.x, site.y, site.z
    alpha, beta, gamma, delta = lab.m + 1, lab.m + 2, lab.m + 3, lab.m + 4
    # each fresh pair appears on exactly two strings, with opposite
    # directions, so the rewrite keeps pair counts and orientedness intact
    strings = (
        (x, alpha, gamma, w, delta, beta, y),
        (y, beta, gamma, alpha, delta, w, z),
        (z, w, gamma, beta, delta, alpha, x),
    )
    result = _apply_paths(lab, site, strings)
    report = verify(result, strict_size=False)
    if not report.proper:
        raise RewriteError(f"four-label rewrite broke condition {report.first_failed()}")
    return result


def apply_c(lab: Labeling, site: PairSite, long_side: str = "e") -> Labeling:
    """Pair-site growth: the chosen side becomes a seven-corner path through
    a fresh triple block, the other side a three-corner path (+5/+1)."""
    if site.labeling != lab:
        raise StaleSiteError("pair site was found on a different labeling")
    x, y = site.x, site.y
    alpha, beta = lab.m + 1, lab.m + 2
    long_ref = site.side(long_side)
    short_ref = site.side("f" if long_side == "e" else "e")
    long_string = (x, alpha, beta, beta, beta, alpha, y)
    short_string = (x, alpha, y)

    per_polygon: dict[int, list] = {}
    for ref, string in ((long_ref, long_string), (short_ref, short_string)):
        rec = edge_record(lab, ref)
        if (rec.tail_label, rec.head_label) == (x, y):
            repl = string
        elif (rec.tail_label, rec.head_label) == (y, x):
            repl = tuple(reversed(string))
        else:
            raise StaleSiteError(f"edge {ref} no longer carries labels {{{x},{y}}}")
        per_polygon.setdefault(ref.polygon, []).append((ref.position, 2, repl))

    new_polys = list(lab.polygons)
    for p, spans in per_polygon.items():
        new_polys[p] = _splice_polygon(lab.polygons[p], spans)
    result = Labeling(tuple(new_polys), lab.m + 2)
    report = verify(result, strict_size=False)
    if not report.proper:
        raise RewriteError(f"pair rewrite broke condition {report.first_failed()}")
    return result
