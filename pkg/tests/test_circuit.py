import pytest

from ratlattice.circuit import (
    Arc2D,
    ConstructionError,
    NCircuit,
    build_circuit,
    central_segments,
    check_regular,
    diamond_corners,
    labels,
    move_horizontals,
    planar_conflicts,
    reroute_long_horizontals,
    segments_of,
    Seg,
)
from ratlattice.tangle import DomainError


def test_diamond_corners():
    assert diamond_corners(3, 1) == {"A": (0, 0), "B": (1, -1), "C": (4, 2), "D": (3, 3)}
    assert diamond_corners(17, 7) == {"A": (0, 0), "B": (7, -7), "C": (24, 10), "D": (17, 17)}


@pytest.mark.parametrize("p,q", [(3, 1), (5, 2), (7, 3), (17, 7), (12, 5)])
def test_central_diagram_is_axis_parallel_grid(p, q):
    segs = segments_of(central_segments(p, q))
    vertical = [s for s in segs if s.vertical]
    horizontal = [s for s in segs if s.horizontal]
    assert len(vertical) == p + q - 1
    assert len(horizontal) == p + q - 1


def test_trefoil_contact_points():
    # the side A'D' (x = y) is met by the billiard at p - 1 interior points
    p, q = 3, 1
    pts = {v for arc in central_segments(p, q) for v in arc.vertices}
    side = sorted(v for v in pts if v[0] == v[1] and 0 < v[0] < p)
    assert side == [(1, 1), (2, 2)]


def test_moves_keep_the_diagram_planar():
    p, q = 7, 3
    segs = segments_of(central_segments(p, q))
    segs = move_horizontals(segs, p, q)
    tags = {s.tag for s in segs}
    assert "moved" in tags
    assert sum(1 for s in segs if s.tag == "moved") == 2 * q
    segs = reroute_long_horizontals(segs, p, q)
    assert sum(1 for s in segs if s.tag == "rerouted") == 3 * (p - q - 1)


@pytest.mark.parametrize("p,q", [(2, 1), (3, 1), (4, 1), (5, 2), (8, 3), (17, 7), (30, 7)])
def test_regular_circuit(p, q):
    c = build_circuit(p, q)
    assert check_regular(c.circuit) == (True, [])
    assert c.census() == {"vertical": 2 * p, "horizontal": 2 * p - 2}
    assert len(c.p1.segments()) == 2 * p - 1
    assert len(c.p2.segments()) == 2 * p - 1
    assert c.circuit.pairs == labels(p, q)
    segs = [Seg(a, b) for arc in (c.p1, c.p2) for a, b in arc.segments()]
    assert planar_conflicts(segs) == []
    # vertical segments of P1 sit at even x, those of P2 at odd x
    for arc, parity in ((c.p1, 0), (c.p2, 1)):
        assert {a[0] % 2 for a, b in arc.segments() if a[0] == b[0]} == {parity}
    ends = {c.p2.start, c.p2.end}
    assert (ends == {c.v2, c.v2p}) == (p % 2 == 0)


def test_labels():
    assert labels(5, 2) == (((0, 5), (5, 5)), ((2, -2), (7, -2)))


def test_check_regular_reports_violations():
    bad = NCircuit(
        (Arc2D([(0, 0), (0, 1)]), Arc2D([(5, 5), (5, 6)])),
        (((0, 0), (2, 2)), ((1, 0), (3, 0))),
    )
    ok, violations = check_regular(bad)
    assert not ok
    assert any("pair 1" in v for v in violations)
    assert any("pairs 1,2" in v for v in violations)


def test_domain_errors():
    with pytest.raises(DomainError, match="coprime"):
        build_circuit(4, 2)
    with pytest.raises(DomainError):
        build_circuit(3, 3)
    with pytest.raises(DomainError):
        build_circuit(2, 0)


def test_arc_rejects_diagonals():
    with pytest.raises(ConstructionError):
        Arc2D([(0, 0), (1, 1)])
