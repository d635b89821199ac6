import pytest
from hypothesis import given, strategies as st

from ratlattice.lattice import (
    LatticeLink,
    StructuralError,
    canonicalize,
    canonicalize_loop,
    cube_symmetries,
    stick_census,
    validate_embedding,
)
from ratlattice.lift import build_lattice_link

SQUARE = [(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0)]


def test_unit_square_is_valid():
    link = LatticeLink([SQUARE])
    assert validate_embedding(link).ok
    assert stick_census(link) == {"x": 2, "y": 2, "z": 0}


def test_diagonal_step_reported():
    report = validate_embedding(LatticeLink([[(0, 0, 0), (1, 1, 0), (0, 1, 0), (0, 0, 1)]]))
    assert not report.axis_parallel and not report.ok


def test_non_maximal_sticks_reported():
    loop = [(0, 0, 0), (1, 0, 0), (2, 0, 0), (2, 1, 0), (0, 1, 0)]
    report = validate_embedding(LatticeLink([loop]))
    assert not report.maximal


def test_intersecting_loops_reported():
    a = SQUARE
    b = [(x + 1, y, z) for x, y, z in SQUARE]  # shares the edge x = 1
    report = validate_embedding(LatticeLink([a, b]))
    assert not report.disjoint
    assert report.offending


def test_self_touching_loop_reported():
    # the y-stick ending at (1,0,0) touches the interior of the first x-stick
    loop = [(0, 0, 0), (2, 0, 0), (2, 2, 0), (1, 2, 0), (1, 0, 0), (1, 0, 1), (0, 0, 1)]
    report = validate_embedding(LatticeLink([loop]))
    assert not report.disjoint


def test_repeated_vertex_raises():
    with pytest.raises(StructuralError):
        validate_embedding(LatticeLink([[(0, 0, 0), (0, 0, 0), (1, 0, 0), (1, 1, 0)]]))


def test_canonicalize_merges_straight_runs():
    loop = [(0, 0, 0), (1, 0, 0), (2, 0, 0), (2, 2, 0), (2, 2, 0), (0, 2, 0), (0, 1, 0)]
    out = canonicalize_loop(loop)
    expected = ((0, 0, 0), (2, 0, 0), (2, 2, 0), (0, 2, 0))
    assert out in {expected[k:] + expected[:k] for k in range(4)}


def test_canonicalize_rejects_degenerate():
    with pytest.raises(StructuralError):
        canonicalize_loop([(0, 0, 0), (1, 0, 0), (2, 0, 0)])


def test_cube_group_has_48_elements():
    assert len(set(cube_symmetries())) == 48


pairs = st.sampled_from([(3, 1), (4, 1), (5, 2), (7, 3), (8, 3), (9, 2)])
symmetries = st.sampled_from(cube_symmetries())


@given(pairs, symmetries, st.tuples(*[st.integers(-9, 9)] * 3))
def test_validity_invariant_under_lattice_symmetries(pq, sym, shift):
    link = build_lattice_link(*pq).link
    moved = link.transformed(*sym).translated(*shift)
    assert validate_embedding(moved).ok
    assert moved.total_sticks == link.total_sticks
    before, after = stick_census(link), stick_census(moved)
    perm, _ = sym
    assert [after[a] for a in "xyz"] == [before["xyz"[perm[i]]] for i in range(3)]


@given(
    st.integers(1, 6),
    st.integers(1, 6),
    st.lists(st.integers(0, 30), max_size=8),
    st.integers(0, 40),
)
def test_canonicalize_idempotent(w, h, cuts, rot):
    # rectangle perimeter with redundant vertices at arbitrary perimeter positions
    perimeter = (
        [(x, 0, 0) for x in range(w)]
        + [(w, y, 0) for y in range(h)]
        + [(x, h, 0) for x in range(w, 0, -1)]
        + [(0, y, 0) for y in range(h, 0, -1)]
    )
    keep = {0, w, w + h, 2 * w + h} | {c % len(perimeter) for c in cuts}
    loop = [v for k, v in enumerate(perimeter) if k in keep]
    r = rot % len(loop)
    loop = loop[r:] + loop[:r]
    once = canonicalize_loop(loop)
    assert len(once) == 4
    assert set(once) == {(0, 0, 0), (w, 0, 0), (w, h, 0), (0, h, 0)}
    assert canonicalize_loop(once) == once
    link = canonicalize([loop])
    assert canonicalize(link.loops) == link
