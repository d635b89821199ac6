import cmath
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from ratlattice.invariants import (
    Crossing,
    Diagram,
    NonRegularProjection,
    bracket,
    bracket_naive,
    component_count,
    crossing_signs,
    determinant,
    jones_orientation_classes,
    normalized_jones,
    project,
    reference_diagram,
    strands,
    writhe,
    CrossingLimitExceeded,
)
from ratlattice.lattice import LatticeLink, cube_symmetries
from ratlattice.laurent import LOOP, ONE, LaurentPoly
from ratlattice.lift import build_lattice_link
from ratlattice.tangle import ConwayWord, TangleFraction, expand_fraction

L = LaurentPoly

# planar-diagram code: ends listed counter-clockwise from the incoming under-strand
TREFOIL_PD = Diagram(tuple(Crossing(e, 1) for e in ((1, 5, 2, 4), (3, 1, 4, 6), (5, 3, 6, 2))))
RIGHT_TREFOIL_JONES = L({-4: 1, -12: 1, -16: -1})  # t + t^3 - t^4 with t = A^-4
FIGURE_EIGHT_JONES = L({8: 1, 4: -1, 0: 1, -4: -1, -8: 1})
SQUARE = [(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0)]


def test_unknot_values():
    assert bracket(Diagram((), 1)) == ONE
    assert bracket(Diagram((), 3)) == LOOP**2
    assert normalized_jones(Diagram((), 1)) == ONE
    assert determinant(Diagram((), 1)) == 1


def test_kink_is_unknot():
    d = Diagram((Crossing((0, 0, 1, 1), 1),))
    assert component_count(d) == 1
    assert normalized_jones(d) == ONE
    assert bracket(d) == bracket_naive(d)


def test_hopf_bracket_by_hand():
    # four states: AA and BB give two loops, AB and BA one loop
    hopf = reference_diagram(ConwayWord([2]))
    assert len(hopf) == 2
    expected = L({2: 1}) * LOOP + L({-2: 1}) * LOOP + 2 * ONE
    assert expected == L({4: -1, -4: -1})
    assert bracket(hopf) in (expected,)
    assert bracket_naive(hopf) == expected
    assert component_count(hopf) == 2
    assert determinant(hopf) == 2


def test_trefoil_pd_signs_and_jones():
    d = TREFOIL_PD
    w = writhe(d)
    assert abs(w) == 3
    assert bracket(d) == bracket_naive(d)
    j = normalized_jones(d)
    assert j == (RIGHT_TREFOIL_JONES if w == 3 else RIGHT_TREFOIL_JONES.mirror())
    assert determinant(d) == 3
    # the A-smoothing of every crossing of the positive trefoil gives 2 loops
    assert bracket(d) in (L({-7: 1, -3: -1, 5: -1}), L({7: 1, 3: -1, -5: -1}))


def test_mirror_pair():
    for d in (TREFOIL_PD, reference_diagram(ConwayWord([1, 3, 2]))):
        assert normalized_jones(d.mirror()) == normalized_jones(d).mirror()
        assert bracket(d.mirror()) == bracket(d).mirror()


def test_reference_diagrams():
    tref = reference_diagram(ConwayWord([3]))
    assert len(tref) == 3 and component_count(tref) == 1
    assert jones_orientation_classes(tref) <= {RIGHT_TREFOIL_JONES, RIGHT_TREFOIL_JONES.mirror()}
    d = reference_diagram(ConwayWord([3, 2, 2]))
    assert len(d) == 7
    assert determinant(d) == 17
    assert component_count(d) == 1
    fig8 = reference_diagram(expand_fraction(TangleFraction(5, 2)))
    assert jones_orientation_classes(fig8) == {FIGURE_EIGHT_JONES}


@pytest.mark.parametrize("entries", [[2], [3, 2, 2], [1, 1, 4], [2, 1, 1, 2, 3]])
def test_reference_crossing_count_and_alternation(entries):
    w = ConwayWord(entries)
    d = reference_diagram(w)
    assert len(d) == sum(entries)
    # reduced alternating diagrams have bracket span 4c
    b = bracket(d)
    assert b.max_degree - b.min_degree == 4 * len(d)


def test_pd_text_round_trip():
    d = reference_diagram(ConwayWord([2, 1, 3]))
    text = d.to_text()
    assert text.splitlines()[0] == "free_loops 0"
    assert len(text.splitlines()) == len(d) + 1
    assert Diagram.from_text(text) == d


def test_invalid_pd_rejected():
    with pytest.raises(ValueError):
        Diagram((Crossing((0, 1, 2, 3), 0),))
    with pytest.raises(ValueError):
        Crossing((0, 0, 1, 1), 2)


def test_crossing_limit():
    d = reference_diagram(ConwayWord([5]))
    with pytest.raises(CrossingLimitExceeded):
        bracket(d, limit=4)
    with pytest.raises(CrossingLimitExceeded):
        bracket_naive(d, limit=4)


def test_project_planar_square():
    d = project(LatticeLink([SQUARE]))
    assert len(d) == 0 and component_count(d) == 1
    assert normalized_jones(d) == ONE


def test_project_split_squares():
    upper = [(x + 5, y, 1) for x, y, _ in SQUARE]
    d = project(LatticeLink([SQUARE, upper]))
    assert len(d) == 0 and component_count(d) == 2
    assert determinant(d) == 0
    assert bracket(d) == LOOP


def test_unperturbed_projection_of_construction_is_not_regular():
    with pytest.raises(NonRegularProjection) as info:
        project(build_lattice_link(3, 1).link)
    assert info.value.pair is not None


def _linking_number(d):
    strand_of = {}
    for si, comp in enumerate(strands(d)):
        for ci, pos in comp:
            strand_of[(ci, pos % 2)] = si
    signs = crossing_signs(d)
    total = sum(sg for ci, sg in enumerate(signs) if strand_of[(ci, 0)] != strand_of[(ci, 1)])
    return total // 2


def test_over_is_larger_depth():
    # a: counter-clockwise square in z = 0 seen from +z; b climbs through it
    a = [(0, 0, 0), (2, 0, 0), (2, 2, 0), (0, 2, 0)]
    b = [(1, 1, -1), (1, 1, 1), (3, 1, 1), (3, 1, -1)]
    link = LatticeLink([a, b])
    for perturb in (1, 2, 3, 4):
        d = project(link, perturb=perturb)
        assert component_count(d) == 2
        assert determinant(d) == 2
        # right-hand rule: linking number +1
        assert _linking_number(d) == 1
    mirrored = LatticeLink([[(x, y, -z) for x, y, z in lp] for lp in (a, b)])
    assert _linking_number(project(mirrored, perturb=1)) == -1


@pytest.mark.parametrize("p,q", [(3, 1), (4, 1), (5, 2), (7, 3), (8, 3), (10, 3)])
def test_construction_matches_reference(p, q):
    link = build_lattice_link(p, q).link
    ref = reference_diagram(expand_fraction(TangleFraction(p, q)))
    target = jones_orientation_classes(ref)
    for perturb in (1, 2, 3, 4):
        d = project(link, perturb=perturb)
        assert jones_orientation_classes(d) == target
        assert determinant(d) == p
        assert component_count(d) == (2 if p % 2 == 0 else 1)


def test_determinant_matches_bracket_at_root_of_unity():
    # |<D>(e^{i pi/4})| = det for any diagram
    for entries in ([3], [2, 2, 1], [3, 2, 2], [1, 4, 2]):
        d = reference_diagram(ConwayWord(entries))
        value = abs(bracket(d).evaluate(cmath.exp(1j * cmath.pi / 4)))
        assert round(value) == determinant(d)


small_words = st.lists(st.integers(1, 3), min_size=1, max_size=4).filter(lambda w: sum(w) <= 8)


@settings(max_examples=60, deadline=None)
@given(small_words, st.lists(st.booleans(), min_size=9, max_size=9))
def test_naive_equals_memoized(entries, flips):
    d = reference_diagram(ConwayWord(entries))
    # flipping crossings gives non-alternating diagrams too
    d = Diagram(
        tuple(Crossing(c.ends, 1 - c.over if f else c.over) for c, f in zip(d.crossings, flips)),
        d.free_loops,
    )
    assert bracket(d) == bracket_naive(d)


pairs = st.sampled_from([(3, 1), (4, 1), (5, 2), (5, 3), (7, 2)])


@settings(max_examples=25, deadline=None)
@given(pairs, st.sampled_from(cube_symmetries()), st.sampled_from([1, 2, 3, 4]))
def test_jones_under_lattice_symmetry(pq, sym, perturb):
    perm, signs = sym
    link = build_lattice_link(*pq).link
    moved = link.transformed(perm, signs)
    # orientation of the signed permutation matrix
    parity = 1
    for i in range(3):
        for j in range(i + 1, 3):
            if perm[i] > perm[j]:
                parity = -parity
    det = parity * signs[0] * signs[1] * signs[2]
    before = jones_orientation_classes(project(link, perturb=1))
    after = jones_orientation_classes(project(moved, perturb=perturb))
    assert after == (before if det == 1 else frozenset(x.mirror() for x in before))


def test_signs_respond_to_reversal():
    hopf = reference_diagram(ConwayWord([2]))
    assert writhe(hopf, reverse=[1]) == -writhe(hopf)
    assert len(crossing_signs(hopf)) == 2


def test_oriented_pd_round_trip_and_checks():
    d = project(build_lattice_link(5, 2).link, perturb=1)
    assert d.entries is not None
    text = d.to_text()
    assert all(" in=" in line for line in text.splitlines()[1:])
    assert Diagram.from_text(text) == d
    broken = list(d.entries)
    broken[0] = (2 - broken[0][0], broken[0][1])
    with pytest.raises(ValueError, match="orientation"):
        Diagram(d.crossings, d.free_loops, tuple(broken))
