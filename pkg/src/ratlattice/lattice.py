"""Integer points, axis-parallel sticks and closed lattice polygons.

Everything here is exact integer arithmetic.  A link is stored as a tuple of
vertex cycles; the closing segment back to the first vertex is implicit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

Point3 = tuple[int, int, int]

AXES = "xyz"


class StructuralError(ValueError):
    """Malformed loop data (zero-length steps, diagonal steps, degenerate loops)."""


def axis_of(a: Sequence[int], b: Sequence[int]) -> int:
    """Index of the single coordinate in which ``a`` and ``b`` differ."""
    diff = [i for i in range(len(a)) if a[i] != b[i]]
    if len(diff) != 1:
        if not diff:
            raise StructuralError(f"zero-length step at {tuple(a)}")
        raise StructuralError(f"step {tuple(a)} -> {tuple(b)} is not axis-parallel")
    return diff[0]


@dataclass(frozen=True)
class Stick:
    a: Point3
    b: Point3
    axis: int
    loop: int = -1
    index: int = -1

    @property
    def axis_name(self) -> str:
        return AXES[self.axis]

    @property
    def length(self) -> int:
        return abs(self.b[self.axis] - self.a[self.axis])

    def box(self) -> tuple[tuple[int, int], ...]:
        return tuple((min(u, v), max(u, v)) for u, v in zip(self.a, self.b))


def boxes_meet(b1, b2) -> bool:
    """Closed-interval overlap in every coordinate."""
    for (lo1, hi1), (lo2, hi2) in zip(b1, b2):
        if hi1 < lo2 or hi2 < lo1:
            return False
    return True


@dataclass(frozen=True)
class LatticeLink:
    loops: tuple[tuple[Point3, ...], ...]

    def __init__(self, loops: Iterable[Iterable[Sequence[int]]]):
        object.__setattr__(
            self,
            "loops",
            tuple(tuple(tuple(int(c) for c in v) for v in loop) for loop in loops),
        )

    def sticks(self) -> list[Stick]:
        out = []
        for li, loop in enumerate(self.loops):
            n = len(loop)
            for k in range(n):
                a, b = loop[k], loop[(k + 1) % n]
                out.append(Stick(a, b, axis_of(a, b), li, k))
        return out

    @property
    def total_sticks(self) -> int:
        return sum(len(loop) for loop in self.loops)

    def translated(self, dx: int, dy: int, dz: int) -> LatticeLink:
        return LatticeLink(
            [[(x + dx, y + dy, z + dz) for x, y, z in loop] for loop in self.loops]
        )

    def transformed(self, perm: Sequence[int], signs: Sequence[int]) -> LatticeLink:
        """Apply a signed permutation of the axes (one of the 48 cube symmetries)."""
        return LatticeLink(
            [
                [tuple(signs[i] * v[perm[i]] for i in range(3)) for v in loop]
                for loop in self.loops
            ]
        )


@dataclass
class ValidationReport:
    axis_parallel: bool = True
    maximal: bool = True
    disjoint: bool = True
    offending: list[tuple[Stick, Stick]] = field(default_factory=list)
    messages: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.axis_parallel and self.maximal and self.disjoint

    def __bool__(self):
        return self.ok


def validate_embedding(link: LatticeLink) -> ValidationReport:
    """Check that ``link`` is an embedded union of maximal lattice sticks.

    Failures are reported, not raised.  Only an empty loop or a repeated
    consecutive vertex raises :class:`StructuralError`.
    """
    report = ValidationReport()
    sticks: list[Stick] = []
    for li, loop in enumerate(link.loops):
        n = len(loop)
        if n == 0:
            raise StructuralError(f"loop {li} is empty")
        if n < 4:
            report.axis_parallel = False
            report.messages.append(f"loop {li} has only {n} vertices")
        for k in range(n):
            a, b = loop[k], loop[(k + 1) % n]
            if a == b:
                raise StructuralError(f"loop {li} repeats vertex {a} at position {k}")
            diff = sum(1 for i in range(3) if a[i] != b[i])
            if diff != 1:
                report.axis_parallel = False
                report.messages.append(f"loop {li}: step {a} -> {b} is not axis-parallel")
                continue
            sticks.append(Stick(a, b, axis_of(a, b), li, k))
    if not report.axis_parallel:
        return report

    lengths = {li: len(loop) for li, loop in enumerate(link.loops)}

    def consecutive(s: Stick, t: Stick) -> bool:
        if s.loop != t.loop:
            return False
        n = lengths[s.loop]
        return (s.index + 1) % n == t.index or (t.index + 1) % n == s.index

    by_loop: dict[int, list[Stick]] = {}
    for s in sticks:
        by_loop.setdefault(s.loop, []).append(s)
    for li, ss in by_loop.items():
        for k, s in enumerate(ss):
            t = ss[(k + 1) % len(ss)]
            if s.axis == t.axis:
                report.maximal = False
                report.messages.append(f"loop {li}: sticks {s.index} and {t.index} are collinear")

    boxes = [s.box() for s in sticks]
    for i in range(len(sticks)):
        bi = boxes[i]
        for j in range(i + 1, len(sticks)):
            if not boxes_meet(bi, boxes[j]):
                continue
            s, t = sticks[i], sticks[j]
            if consecutive(s, t) and s.axis != t.axis:
                # perpendicular neighbours meet only in their shared vertex
                continue
            report.disjoint = False
            report.offending.append((s, t))
            report.messages.append(f"sticks {s.a}-{s.b} and {t.a}-{t.b} intersect")
    return report


def stick_census(link: LatticeLink) -> dict[str, int]:
    counts = {"x": 0, "y": 0, "z": 0}
    for s in link.sticks():
        counts[s.axis_name] += 1
    return counts


def canonicalize_loop(raw: Sequence[Sequence[int]]) -> tuple[Point3, ...]:
    """Drop repeated vertices and interior points of straight runs."""
    pts = [tuple(int(c) for c in v) for v in raw]
    while True:
        pts = _drop_repeats(pts)
        if len(pts) < 3:
            break
        n = len(pts)
        for k in range(n):
            if axis_of(pts[k - 1], pts[k]) == axis_of(pts[k], pts[(k + 1) % n]):
                del pts[k]
                break
        else:
            break
    if len(pts) < 4:
        raise StructuralError(f"loop degenerates to {len(pts)} vertices")
    return tuple(pts)


def _drop_repeats(pts: list) -> list:
    out = []
    for v in pts:
        if not out or out[-1] != v:
            out.append(v)
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return out


def canonicalize(loops: Iterable[Sequence[Sequence[int]]]) -> LatticeLink:
    return LatticeLink([canonicalize_loop(loop) for loop in loops])


def cube_symmetries() -> list[tuple[tuple[int, int, int], tuple[int, int, int]]]:
    from itertools import permutations, product

    return [
        (perm, signs)
        for perm in permutations(range(3))
        for signs in product((1, -1), repeat=3)
    ]
