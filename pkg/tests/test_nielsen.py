"""Periodic structures, eigenrays, interior points, subdivision, INPs."""

import pytest

from ttlam import (
    GraphSelfMap,
    detect_inps,
    eigenray_prefix,
    interior_periodic_points,
    occurrences,
    periodic_structures,
    point_image,
    point_orbit,
    refine_index,
    stability_check,
    subdivide_at,
)
from ttlam.nielsen import reversed_to_preserving

from oracles import apply_map, brute_force_inps


def test_periodic_structures_trib(trib, rose3):
    pd = periodic_structures(trib)
    assert pd.periodic_vertices() == [0]
    assert pd.vertex_period_of(0) == 1
    name = rose3.dart_name
    periods = {name(d): p for d, p in pd.dart_period}
    assert periods == {"a": 3, "b": 3, "c": 3, "b~": 2, "c~": 2}


def test_periodic_structures_fib(fib, rose2):
    pd = periodic_structures(fib)
    name = rose2.dart_name
    periods = {name(d): p for d, p in pd.dart_period}
    assert periods == {"a": 1, "a~": 2, "b~": 2}


def test_eigen_darts_one_per_gate(all_maps):
    # at a periodic vertex every gate holds exactly one eigen dart
    from ttlam import gates

    for f in all_maps.values():
        pd = periodic_structures(f)
        gt = gates(f)
        eigen = set(pd.eigen_darts())
        for v in pd.periodic_vertices():
            for gid in gt.gates_at(v):
                assert sum(1 for d in gt.members[gid] if d in eigen) == 1


def test_eigenray_prefix_trib(trib, rose3):
    # frozen: the ray of dart a starts a b b c
    assert rose3.path_str(eigenray_prefix(trib, 0, 4)) == "a b b c"


def test_eigenray_prefix_nesting(trib):
    r64 = eigenray_prefix(trib, 0, 64)
    r256 = eigenray_prefix(trib, 0, 256)
    assert r256[:64] == r64


def test_eigenray_rejects_non_eigen(trib):
    from ttlam import MapError

    # dart a~ has Df-period 2 through b~, so a~ itself is not eigen
    with pytest.raises(MapError):
        eigenray_prefix(trib, 1, 8)


def test_eigenray_legal(trib, fib):
    from ttlam import gates, ilt_count

    for f in (trib, fib):
        gt = gates(f)
        pd = periodic_structures(f)
        for d in pd.eigen_darts():
            assert ilt_count(f, eigenray_prefix(f, d, 128), gt) == 0


def test_occurrences_fib(fib):
    # f^3(a) = a b a a b: edge a appears at 0 (initial), 2 and 3 (interior)
    occ = [o for o in occurrences(fib, 3) if o.edge == 0 and not o.reversed_]
    by_index = {(o.index, o.kind) for o in occ if o.edge == 0}
    assert (2, "interior") in by_index
    assert (3, "interior") in by_index
    assert (0, "initial-vertex") in by_index


def test_interior_points_fib_minimal_orbit(fib, rose2):
    pts = interior_periodic_points(fib, max_period=3)
    key = {(rose2.edge_names[p.edge], p.exponent, p.index, p.period) for p in pts}
    assert key == {("a", 3, 2, 3), ("a", 3, 3, 3), ("b", 3, 1, 3)}


def test_no_low_period_interior_points_fib(fib):
    assert interior_periodic_points(fib, max_period=2) == ()


def test_interior_points_trib_orbit(trib, rose3):
    pts = interior_periodic_points(trib, max_period=5)
    key = {(rose3.edge_names[p.edge], p.exponent, p.index) for p in pts}
    assert key == {("a", 5, 1), ("b", 5, 1), ("b", 5, 2), ("c", 5, 1), ("c", 5, 2)}
    assert all(p.period == 5 for p in pts)


def test_reversed_to_preserving_trib_inv(trib_inv):
    # f(a) = c a~ holds a reversed occurrence of a at index 1; doubling the
    # exponent produces an orientation-preserving descriptor
    e, t2, j = reversed_to_preserving(trib_inv, 0, 1, 1)
    assert (e, t2) == (0, 2)
    p2 = trib_inv.iterate((0,), 2)
    assert p2[j] == 0


def test_refine_index_consistent(fib):
    # the same point seen at exponent 3 and 6 refines consistently
    i6 = refine_index(fib, 0, 3, 2, 2)
    p6 = fib.iterate((0,), 6)
    assert p6[i6] == 0
    i12 = refine_index(fib, 0, 6, i6, 2)
    assert refine_index(fib, 0, 3, 2, 4) == i12


def test_point_image_closes_orbit(fib):
    orbit = point_orbit(fib, 0, 3, 2)
    assert len(orbit) == 3
    assert {p.edge for p in orbit} == {0, 1}


def test_point_image_lands_on_point(fib):
    e2, i2, _ = point_image(fib, 0, 3, 2)
    p = fib.iterate((2 * e2,), 3)
    assert p[i2] == 2 * e2 or p[i2] == 2 * e2 + 1


def test_subdivision_fib_frozen(fib, rose2):
    pts = interior_periodic_points(fib, max_period=3)
    res = subdivide_at(fib, pts[0])
    sg = res.map.graph
    assert res.edge_split == {"a": ("a.1", "a.2", "a.3"), "b": ("b.1", "b.2")}
    images = {
        sg.edge_names[i]: sg.path_str(res.map.edge_image[i]) for i in range(sg.num_edges)
    }
    assert images == {
        "a.1": "a.1 a.2",
        "a.2": "a.3 b.1",
        "a.3": "b.2",
        "b.1": "a.1",
        "b.2": "a.2 a.3",
    }


def test_subdivision_preserves_train_track(fib):
    from ttlam import is_train_track, pf_data

    pts = interior_periodic_points(fib, max_period=3)
    res = subdivide_at(fib, pts[0])
    assert res.map.is_expanding
    assert is_train_track(res.map)
    assert abs(pf_data(res.map).lam - pf_data(fib).lam) < 1e-9


def test_detect_inps_fib(fib, rose2):
    rep = detect_inps(fib)
    assert rep.conclusive
    assert len(rep.inps) == 1
    inp = rep.inps[0]
    assert rose2.path_str(inp.path) == "a~ b~ a b"
    assert inp.period == 2
    assert inp.closed
    assert inp.tip_index == 2
    # exact re-verification at the reported period
    assert apply_map(fib, apply_map(fib, inp.path)) == inp.path
    assert apply_map(fib, inp.path) != inp.path


def test_detect_inps_none_for_trib(trib, trib_inv):
    for f in (trib, trib_inv):
        rep = detect_inps(f)
        assert rep.conclusive
        assert rep.inps == ()


def test_detect_inps_matches_oracle_fib(fib):
    rep = detect_inps(fib)
    oracle = brute_force_inps(fib, max_len=8, max_period=4)
    ours = {min(p.path, tuple(x ^ 1 for x in reversed(p.path))) for p in rep.inps}
    assert ours == oracle


def test_detect_inps_subdivided_matches_oracle(fib):
    rep = detect_inps(fib)
    assert rep.subdivision is not None
    sub = rep.subdivision.map
    oracle = brute_force_inps(sub, max_len=12, max_period=4)
    ours = {
        min(p.path, tuple(x ^ 1 for x in reversed(p.path))) for p in rep.subdivided_inps
    }
    assert ours == oracle
    assert len(oracle) == 1
    (path,) = [p.path for p in rep.subdivided_inps]
    assert len(path) == 10


def test_inp_halves_balance(fib):
    from ttlam import pf_data

    rep = detect_inps(fib)
    pf = pf_data(fib)
    for inp in rep.inps:
        left, right = inp.halves()
        assert abs(pf.pf_length(left) - pf.pf_length(right)) < 1e-9


def test_reducible_carries_inps(reducible, rose3):
    rep = detect_inps(reducible)
    got = {rose3.path_str(p.path) for p in rep.inps}
    # the fibonacci INP survives inside the lower stratum, and the extra
    # stratum wraps a period-one fixed path around c
    assert "a~ b~ a b" in got or "b~ a~ b a" in got
    for p in rep.inps:
        w = p.path
        for _ in range(p.period):
            w = apply_map(reducible, w)
        assert w == p.path


def test_stability_fib_flags_closed_inp(fib):
    rep = stability_check(fib)
    assert rep.status == "fail"
    assert "conjugacy" in rep.reason


def test_stability_trib_passes(trib):
    rep = stability_check(trib)
    assert rep.status == "pass"
