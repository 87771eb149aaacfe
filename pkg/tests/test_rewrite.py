import random

import pytest

from htl.labeling import verify
from htl.rewrite import (
    StaleSiteError,
    apply_a,
    apply_b,
    apply_c,
    pair_sites,
    triangle_sites,
)

from conftest import BASES


def _site_at(lab, w):
    return next(s for s in triangle_sites(lab) if s.w == w)


def test_heptagon_family_sites():
    sites = triangle_sites(BASES[7])
    by_w = {s.w: s for s in sites}
    assert {by_w[1].x, by_w[1].y, by_w[1].z} == {7, 6, 3}
    assert 10 in by_w
    assert {by_w[10].x, by_w[10].y, by_w[10].z} == {11, 12, 13}


def test_blocks_host_no_sites():
    # labels inside repeated blocks (1, 5, 7 in the octagon family) have
    # equal neighbours, so they cannot host triangle sites
    ws = {s.w for s in triangle_sites(BASES[8])}
    assert ws.isdisjoint({1, 5, 7})


def test_apply_a_counts_and_persistence():
    lab = BASES[7]
    site = _site_at(lab, 1)
    out = apply_a(lab, site)
    assert out.m == lab.m + 2
    assert out.total == lab.total + 6
    assert verify(out, strict_size=False).proper
    # fresh labels appear exactly three times each
    flat = [x for poly in out.polygons for x in poly]
    assert flat.count(lab.m + 1) == 3 and flat.count(lab.m + 2) == 3
    again = _site_at(out, 1)
    assert {again.x, again.y, again.z} == {lab.m + 1, lab.m + 2, site.z}


def test_apply_b_counts_and_persistence():
    lab = BASES[7]
    site = _site_at(lab, 1)
    out = apply_b(lab, site)
    assert out.m == lab.m + 4
    assert out.total == lab.total + 12
    beta, gamma, delta = lab.m + 2, lab.m + 3, lab.m + 4
    follow = _site_at(out, beta)
    assert {follow.x, follow.y, follow.z} == {site.y, gamma, delta}


def test_apply_b_keeps_orientedness():
    lab = BASES[10]
    site = _site_at(lab, 10)
    out = apply_b(lab, site)
    assert out.sizes == (14, 14, 14)
    assert verify(out, strict_size=False).oriented


def test_single_polygon_b_grows_by_twelve():
    lab = BASES[18]
    out = apply_b(lab, _site_at(lab, 1))
    assert out.sizes == (30,)
    assert verify(out, strict_size=False).oriented


def test_pair_sites_examples():
    sites = pair_sites(BASES[9])
    assert any((s.x, s.y) == (4, 5) for s in sites)
    twelve = pair_sites(BASES[12])
    assert len(twelve) == 6  # all six pairs, no folds
    octa = pair_sites(BASES[8])
    assert all(s.x != s.y for s in octa)
    assert len(octa) == 9  # 12 edges, minus the three folds


def test_apply_c_growth_split():
    lab = BASES[9]
    site = next(s for s in pair_sites(lab) if (s.x, s.y) == (4, 5))
    long_side = "e" if site.e.polygon == 0 else "f"
    out = apply_c(lab, site, long_side)
    assert out.m == lab.m + 2
    assert sorted(out.sizes) == [10, 14]
    flat = [x for poly in out.polygons for x in poly]
    assert flat.count(lab.m + 1) == 3 and flat.count(lab.m + 2) == 3
    # the follow-up pair on {x, alpha} exists
    assert any((s.x, s.y) == (4, lab.m + 1) for s in pair_sites(out))


def test_stale_sites_refused():
    lab = BASES[7]
    site = _site_at(lab, 1)
    moved = apply_a(lab, site)
    with pytest.raises(StaleSiteError):
        apply_a(moved, site)
    psite = pair_sites(BASES[9])[0]
    other = apply_c(BASES[9], psite, "e")
    with pytest.raises(StaleSiteError):
        apply_c(other, psite, "e")


def test_four_label_rewrite_keeps_orientation_along_chains():
    # grow the two oriented bases several rounds, checking every step
    for k in (10, 18):
        lab = BASES[k]
        center = 10 if k == 10 else 1
        for _ in range(6):
            site = _site_at(lab, center)
            center = lab.m + 2
            lab = apply_b(lab, site)
            assert verify(lab, strict_size=False).oriented


def test_randomized_rewrites_stay_proper(bases):
    rng = random.Random(20240817)
    pool = [lab for lab in bases.values()]
    checked_oriented_b = 0
    for _ in range(120):
        lab = rng.choice(pool)
        tri = triangle_sites(lab)
        pairs = pair_sites(lab)
        ops = []
        if tri:
            ops.extend([("a", s) for s in tri])
            ops.extend([("b", s) for s in tri])
        ops.extend([("c", s) for s in pairs])
        kind, site = rng.choice(ops)
        was_oriented = verify(lab, strict_size=False).oriented
        if kind == "a":
            out = apply_a(lab, site)
            assert out.m == lab.m + 2 and out.total == lab.total + 6
        elif kind == "b":
            out = apply_b(lab, site)
            assert out.m == lab.m + 4 and out.total == lab.total + 12
            if was_oriented:
                assert verify(out, strict_size=False).oriented
                checked_oriented_b += 1
        else:
            side = rng.choice(["e", "f"])
            out = apply_c(lab, site, side)
            assert out.m == lab.m + 2 and out.total == lab.total + 6
            long_poly = site.side(side).polygon
            short_poly = site.side("f" if side == "e" else "e").polygon
            grown = {p: len(out.polygons[p]) - len(lab.polygons[p])
                     for p in range(lab.n)}
            if long_poly == short_poly:
                assert grown[long_poly] == 6
            else:
                assert grown[long_poly] == 5 and grown[short_poly] == 1
        assert verify(out, strict_size=False).proper
        if out.total <= 120:
            pool.append(out)
