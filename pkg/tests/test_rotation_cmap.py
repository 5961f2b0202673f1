import pytest

from atgraph.cmap import (
    CombinatorialMap,
    DisconnectedMapError,
    InconsistentDrawingError,
    build_map,
    is_spherical,
)
from atgraph.geometry import K4_CONVEX, circle_points, K4_TRIANGLE, convex_ers, mirror, segment_crossing, straight_line_ers
from atgraph.rotation import (
    ExtendedRotationSystem,
    compatible,
    cyclic_orders,
    invert_cycle,
    invert_rs,
    is_rotation_system,
    normalize_cycle,
    orient3,
    relabel_rs,
    restrict_cycle,
    restrict_orders,
    restrict_rs,
    same_up_to_inversion,
)


def test_cycle_helpers():
    assert normalize_cycle((3, 1, 2)) == (1, 2, 3)
    assert invert_cycle((0, 1, 2, 3)) == (0, 3, 2, 1)
    assert restrict_cycle((0, 4, 1, 3, 2), {1, 2, 4}) == (1, 2, 4)
    assert compatible((0, 1, 2, 3), (1, 3, 5))
    assert not compatible((0, 1, 2, 3), (3, 1, 0))
    assert len(cyclic_orders(range(5))) == 24
    assert orient3((0, 1, 2, 3), 1, 3, 0) and not orient3((0, 1, 2, 3), 3, 1, 0)


def test_rs_helpers():
    x = convex_ers(6)
    assert is_rotation_system(x.rs)
    assert same_up_to_inversion(x.rs, invert_rs(x.rs))
    assert restrict_rs(x.rs, range(6)) == x.rs
    perm = [1, 2, 3, 4, 5, 0]
    assert relabel_rs(relabel_rs(x.rs, perm), [5, 0, 1, 2, 3, 4]) == x.rs


def test_restrict_matches_geometry():
    pts_rs = convex_ers(7)
    pts = circle_points(7)
    sub = straight_line_ers([pts[i] for i in (0, 2, 3, 5, 6)])
    assert restrict_rs(pts_rs.rs, (0, 2, 3, 5, 6)) == sub.rs
    assert restrict_orders(pts_rs.orders, (0, 2, 3, 5, 6)) == sub.orders


def test_relabel_orders_reverses_flipped_edges():
    x = convex_ers(5)
    y = x.relabel([4, 3, 2, 1, 0])
    y.check()
    assert build_map(y).euler_characteristic() == 2


def test_segment_crossing_degenerate():
    with pytest.raises(ValueError):
        segment_crossing((0, 0), (2, 0), (1, 0), (1, 1))


def test_check_rejects_bad_data():
    x = convex_ers(4)
    bad = ExtendedRotationSystem(x.rs, x.crossings, {p: (0, 2, 1, 3) for p in x.crossings}, x.orders)
    with pytest.raises(ValueError):
        bad.check()


def test_planar_k4_map():
    x = straight_line_ers(K4_TRIANGLE)
    m = build_map(x)
    assert (m.num_vertices(), m.num_edges(), m.num_faces()) == (4, 6, 4)
    assert is_spherical(m)


def test_convex_k4_map():
    m = build_map(straight_line_ers(K4_CONVEX))
    assert (m.num_vertices(), m.num_edges(), m.num_faces()) == (5, 8, 5)
    assert is_spherical(m)


def test_convex_k5_map():
    m = build_map(convex_ers(5))
    assert (m.num_vertices(), m.num_edges()) == (10, 20)
    assert is_spherical(m)


@pytest.mark.parametrize("n", range(4, 9))
def test_convex_maps_spherical(n):
    assert is_spherical(build_map(convex_ers(n)))
    assert is_spherical(build_map(convex_ers(n).inverse()))


def test_inverted_crossing_rotation_breaks_sphericity():
    x = convex_ers(4)
    (p,) = x.crossings
    bad = ExtendedRotationSystem(x.rs, x.crossings, {p: invert_cycle(x.crossing_rotations[p])}, x.orders)
    m = build_map(bad)
    assert m.euler_characteristic() < 2
    assert not is_spherical(m)


def test_mirror_inverts_everything():
    a, b = straight_line_ers(K4_CONVEX), straight_line_ers(mirror(K4_CONVEX))
    assert b.rs == invert_rs(a.rs)
    assert a.crossings == b.crossings
    (p,) = a.crossings
    assert b.crossing_rotations[p] == invert_cycle(a.crossing_rotations[p])


def test_disconnected_map():
    m = CombinatorialMap((1, 0, 3, 2), (1, 0, 3, 2))
    with pytest.raises(DisconnectedMapError):
        is_spherical(m)


def test_map_validation():
    with pytest.raises(ValueError):
        CombinatorialMap((0, 1), (0, 1))
    with pytest.raises(ValueError):
        CombinatorialMap((0, 0), (1, 0))


def test_inconsistent_sequences():
    x = convex_ers(4)
    with pytest.raises(InconsistentDrawingError):
        build_map(ExtendedRotationSystem(x.rs, x.crossings, x.crossing_rotations, {}))
