"""Planar lattice circuits for rational links.

The pipeline for a coprime pair ``p > q``::

    segs = segments_of(central_segments(p, q))
    segs = move_horizontals(segs, p, q)
    segs = reroute_long_horizontals(segs, p, q)
    segs = extend_boundary(segs, p, q)
    circuit = assemble_circuit(segs, p, q)

``central_segments`` bounces lines of slope ``+-p/q`` around the unit
square ``A(0,0) B(0,-1) C(1,-1) D(1,0)`` with exact rationals and maps the
bounce points through ``(x, y) -> (p*x - q*y, p*x + q*y)``, which turns
every bounce segment horizontal or vertical.  The later steps rearrange
those segments into two disjoint planar arcs whose four endpoints are
``v1=(0,p)``, ``v1'=(p,p)``, ``v2=(q,-q)``, ``v2'=(p+q,-q)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .tangle import DomainError

Point2 = tuple[int, int]


class ConstructionError(RuntimeError):
    """A construction step found the diagram in an unexpected state."""


def check_pair(p: int, q: int) -> None:
    if not (isinstance(p, int) and isinstance(q, int)):
        raise DomainError("p and q must be integers")
    if q < 1 or p <= q:
        raise DomainError(f"need p > q >= 1, got p={p}, q={q}")
    if gcd(p, q) != 1:
        raise DomainError("p and q must be coprime")


@dataclass(frozen=True)
class Seg:
    """Axis-parallel planar segment with a provenance tag."""

    a: Point2
    b: Point2
    tag: str = "central"

    def __post_init__(self):
        if self.a == self.b:
            raise ConstructionError(f"zero-length segment at {self.a}")
        if self.a[0] != self.b[0] and self.a[1] != self.b[1]:
            raise ConstructionError(f"segment {self.a}-{self.b} is not axis-parallel")
        object.__setattr__(
            self,
            "_box",
            (
                (min(self.a[0], self.b[0]), max(self.a[0], self.b[0])),
                (min(self.a[1], self.b[1]), max(self.a[1], self.b[1])),
            ),
        )

    @property
    def vertical(self) -> bool:
        return self.a[0] == self.b[0]

    @property
    def horizontal(self) -> bool:
        return self.a[1] == self.b[1]

    def ends(self) -> tuple[Point2, Point2]:
        return (self.a, self.b)

    def has_end(self, pt: Point2) -> bool:
        return self.a == pt or self.b == pt

    def key(self) -> frozenset:
        return frozenset((self.a, self.b))

    def box(self):
        return self._box


@dataclass(frozen=True)
class Arc2D:
    vertices: tuple[Point2, ...]

    def __init__(self, vertices: Iterable[Sequence[int]]):
        vs = tuple((int(v[0]), int(v[1])) for v in vertices)
        if len(vs) < 2:
            raise ConstructionError("an arc needs at least two vertices")
        for a, b in zip(vs, vs[1:]):
            if (a[0] != b[0]) == (a[1] != b[1]):
                raise ConstructionError(f"arc step {a}->{b} is not axis-parallel")
        object.__setattr__(self, "vertices", vs)

    @property
    def start(self) -> Point2:
        return self.vertices[0]

    @property
    def end(self) -> Point2:
        return self.vertices[-1]

    def segments(self) -> list[tuple[Point2, Point2]]:
        return list(zip(self.vertices, self.vertices[1:]))

    def reversed(self) -> Arc2D:
        return Arc2D(self.vertices[::-1])


@dataclass(frozen=True)
class NCircuit:
    """Disjoint planar arcs plus labelled pairs ``(v_i, v'_i)``."""

    arcs: tuple[Arc2D, ...]
    pairs: tuple[tuple[Point2, Point2], ...]

    @property
    def n(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class RegularCircuit:
    circuit: NCircuit
    p: int
    q: int
    p1: Arc2D
    p2: Arc2D
    segments: tuple[Seg, ...] = field(repr=False)

    @property
    def v1(self) -> Point2:
        return self.circuit.pairs[0][0]

    @property
    def v1p(self) -> Point2:
        return self.circuit.pairs[0][1]

    @property
    def v2(self) -> Point2:
        return self.circuit.pairs[1][0]

    @property
    def v2p(self) -> Point2:
        return self.circuit.pairs[1][1]

    def census(self) -> dict[str, int]:
        segs = [s for arc in self.circuit.arcs for s in arc.segments()]
        vertical = sum(1 for a, b in segs if a[0] == b[0])
        return {"vertical": vertical, "horizontal": len(segs) - vertical}


# ---------------------------------------------------------------------------
# billiard


_CORNERS = {
    "A": ((Fraction(0), Fraction(0)), (1, -1)),
    "B": ((Fraction(0), Fraction(-1)), (1, 1)),
    "C": ((Fraction(1), Fraction(-1)), (-1, 1)),
    "D": ((Fraction(1), Fraction(0)), (-1, -1)),
}


def _corner_name(pt) -> str | None:
    for name, (c, _) in _CORNERS.items():
        if c == pt:
            return name
    return None


def _bounce(p: int, q: int, corner: str) -> list[tuple[Fraction, Fraction]]:
    """Trace one billiard path from ``corner`` until it reaches a corner."""
    (x, y), (sx, sy) = _CORNERS[corner]
    pts = [(x, y)]
    for _ in range(2 * (p + q) + 2):
        dx, dy = sx * q, sy * p
        # time to the next vertical and horizontal wall
        tx = ((1 - x) if dx > 0 else (0 - x)) / dx
        ty = ((0 - y) if dy > 0 else (-1 - y)) / dy
        t = min(tx, ty)
        x, y = x + t * dx, y + t * dy
        pts.append((x, y))
        if _corner_name((x, y)) is not None:
            return pts
        if tx == t:
            sx = -sx
        if ty == t:
            sy = -sy
    raise ConstructionError(f"billiard from {corner} did not close for {p}/{q}")


def transform(p: int, q: int, pt) -> Point2:
    x, y = pt
    u, v = p * x - q * y, p * x + q * y
    if u.denominator != 1 or v.denominator != 1:
        raise ConstructionError(f"non-integral image {u},{v} of {pt}")
    return (int(u), int(v))


def diamond_corners(p: int, q: int) -> dict[str, Point2]:
    return {name: transform(p, q, c) for name, (c, _) in _CORNERS.items()}


def central_segments(p: int, q: int) -> list[Arc2D]:
    """The two billiard arcs of the ``p/q`` pillowcase, mapped into Z^2."""
    check_pair(p, q)
    arcs = []
    used: set[str] = set()
    for start in "ABCD":
        if start in used:
            continue
        path = _bounce(p, q, start)
        used.add(start)
        used.add(_corner_name(path[-1]))
        arcs.append(Arc2D(transform(p, q, pt) for pt in path))
    if len(arcs) != 2:
        raise ConstructionError(f"expected two billiard arcs, got {len(arcs)}")
    return arcs


def segments_of(arcs: Iterable[Arc2D], tag: str = "central") -> list[Seg]:
    return [Seg(a, b, tag) for arc in arcs for a, b in arc.segments()]


# ---------------------------------------------------------------------------
# rewriting helpers


def _find(segs: list[Seg], a: Point2, b: Point2) -> int:
    want = frozenset((a, b))
    for k, s in enumerate(segs):
        if s.key() == want:
            return k
    raise ConstructionError(f"expected segment {a}-{b} is absent")


def _extend_vertical(segs: list[Seg], at: Point2, to: Point2) -> None:
    """Move the endpoint ``at`` of the vertical through it to ``to``.

    A corner of the diamond has no vertical; a new one is created there.
    """
    for k, s in enumerate(segs):
        if s.vertical and s.has_end(at):
            other = s.b if s.a == at else s.a
            segs[k] = Seg(other, to, s.tag if s.tag == "extended" else s.tag + "+extended")
            return
    segs.append(Seg(at, to, "extended"))


def move_horizontals(segs: Sequence[Seg], p: int, q: int) -> list[Seg]:
    """Lift the q horizontals meeting the right side above the diamond, and
    drop the q horizontals meeting the left side below it."""
    out = list(segs)
    for i in range(1, q + 1):
        k = _find(out, (p - i, p - i), (p + i, p - i))
        out[k] = Seg((p - i, p + i), (p + i, p + i), "moved")
        _extend_vertical(out, (p - i, p - i), (p - i, p + i))
        _extend_vertical(out, (p + i, p - i), (p + i, p + i))

        k = _find(out, (q - i, -q + i), (q + i, -q + i))
        out[k] = Seg((q - i, -q - i), (q + i, -q - i), "moved")
        _extend_vertical(out, (q - i, -q + i), (q - i, -q - i))
        _extend_vertical(out, (q + i, -q + i), (q + i, -q - i))
    return out


def reroute_long_horizontals(segs: Sequence[Seg], p: int, q: int) -> list[Seg]:
    """Send each of the remaining p-q-1 horizontals around the top-right."""
    out = list(segs)
    for i in range(1, p - q):
        y = p - q - i
        k = _find(out, (p - q - i, y), (p + q - i, y))
        del out[k]
        _extend_vertical(out, (p - q - i, y), (p - q - i, p + q + i))
        out.append(Seg((p - q - i, p + q + i), (p + q + i, p + q + i), "rerouted"))
        out.append(Seg((p + q + i, p + q + i), (p + q + i, y), "rerouted"))
        out.append(Seg((p + q + i, y), (p + q - i, y), "rerouted"))
    return out


def segments_meet_improperly(s: Seg, t: Seg) -> bool:
    """True unless ``s`` and ``t`` are disjoint or perpendicular and share
    exactly one common endpoint."""
    (sx0, sx1), (sy0, sy1) = s.box()
    (tx0, tx1), (ty0, ty1) = t.box()
    if sx1 < tx0 or tx1 < sx0 or sy1 < ty0 or ty1 < sy0:
        return False
    if s.vertical != t.vertical:
        shared = set(s.ends()) & set(t.ends())
        if shared:
            return False
    return True


def planar_conflicts(segs: Sequence[Seg]) -> list[tuple[Seg, Seg]]:
    """All pairs of segments that cross, overlap or touch at an interior point."""
    out = []
    boxes = [s.box() for s in segs]
    n = len(segs)
    for i in range(n):
        (ax0, ax1), (ay0, ay1) = boxes[i]
        for j in range(i + 1, n):
            (bx0, bx1), (by0, by1) = boxes[j]
            if ax1 < bx0 or bx1 < ax0 or ay1 < by0 or by1 < ay0:
                continue
            if segments_meet_improperly(segs[i], segs[j]):
                out.append((segs[i], segs[j]))
    return out


def extend_boundary(segs: Sequence[Seg], p: int, q: int) -> list[Seg]:
    """Stretch the two boundary verticals so that v1 and v1' share ``y = p``
    and v2, v2' share ``y = -q``; horizontals in the way are dropped below."""
    out = list(segs)
    k = _find(out, (0, 0), (0, -2 * q))
    out[k] = Seg((0, p), (0, -2 * q), "extended")
    left = out[k]
    k = _find(out, (p + q, p - q), (p + q, p + q))
    out[k] = Seg((p + q, -q), (p + q, p + q), "extended")
    right = out[k]

    for ext in (left, right):
        blocked = [s for s in out if s.horizontal and s is not ext and segments_meet_improperly(s, ext)]
        # innermost first; horizontals still waiting to drop are ignored
        blocked.sort(key=lambda s: abs(s.a[0] - s.b[0]))
        for k, h in enumerate(blocked):
            out = _drop(out, h, ext, 4 * p, pending=blocked[k + 1:])
    return out


def _drop(segs: list[Seg], h: Seg, ext: Seg, limit: int, pending=()) -> list[Seg]:
    y0 = h.a[1]
    floor = min(ext.a[1], ext.b[1])
    attached = [s for s in segs if s.vertical and (s.has_end(h.a) or s.has_end(h.b))]
    skip = {id(h)} | {id(s) for s in attached}
    others = [s for s in segs if id(s) not in skip]
    waiting = {id(s) for s in pending}
    rest = [s for s in others if id(s) not in waiting]
    # moved pieces stay inside the x-range of h
    x0, x1 = h.box()[0]
    rest = [s for s in rest if not (s.box()[0][1] < x0 or x1 < s.box()[0][0])]
    # offsets with y0 - d >= floor still cross the extension
    for d in range(max(1, y0 - floor + 1), limit + 1):
        y = y0 - d
        new_h = Seg((h.a[0], y), (h.b[0], y), h.tag + "+dropped")
        moved = [new_h]
        for s in attached:
            end = h.a if s.has_end(h.a) else h.b
            other = s.b if s.a == end else s.a
            moved.append(Seg(other, (end[0], y), s.tag))
        if any(segments_meet_improperly(m, r) for m in moved for r in rest):
            continue
        if planar_conflicts(moved):
            continue
        return others + moved
    raise ConstructionError(f"no drop offset <= {limit} clears horizontal {h.a}-{h.b}")


# ---------------------------------------------------------------------------
# assembly and regularity


def labels(p: int, q: int) -> tuple[tuple[Point2, Point2], tuple[Point2, Point2]]:
    return (((0, p), (p, p)), ((q, -q), (p + q, -q)))


def _trace(start: Point2, adj: dict[Point2, list[Point2]]) -> list[Point2]:
    path = [start]
    prev = None
    cur = start
    while True:
        nxt = [v for v in adj[cur] if v != prev]
        if not nxt or (prev is not None and len(adj[cur]) == 1):
            return path
        prev, cur = cur, nxt[0]
        path.append(cur)
        if len(path) > 4 * len(adj) + 4:
            raise ConstructionError("arc tracing did not terminate")


def assemble_circuit(segs: Sequence[Seg], p: int, q: int) -> RegularCircuit:
    conflicts = planar_conflicts(segs)
    if conflicts:
        s, t = conflicts[0]
        raise ConstructionError(f"arcs are not disjoint: {s.a}-{s.b} meets {t.a}-{t.b}")
    adj: dict[Point2, list[Point2]] = {}
    for s in segs:
        adj.setdefault(s.a, []).append(s.b)
        adj.setdefault(s.b, []).append(s.a)
    if any(len(v) > 2 for v in adj.values()):
        raise ConstructionError("a vertex has degree above two")
    pairs = labels(p, q)
    ends = {pt for pt, nb in adj.items() if len(nb) == 1}
    expected = {pt for pair in pairs for pt in pair}
    if ends != expected:
        raise ConstructionError(f"arc endpoints {sorted(ends)} differ from labels {sorted(expected)}")

    v1 = pairs[0][0]
    path1 = _trace(v1, adj)
    rest = sorted(expected - {path1[0], path1[-1]})
    path2 = _trace(rest[0], adj)
    if set(path2[::len(path2) - 1]) != set(rest):
        raise ConstructionError("second arc does not join the remaining labels")
    if len(path1) + len(path2) - 2 != len(segs):
        raise ConstructionError("tracing left segments unused (closed loop present)")
    # orient P2 so it starts at v1' when that is one of its ends
    if path2[-1] == pairs[0][1]:
        path2.reverse()
    p1, p2 = Arc2D(path1), Arc2D(path2)
    circuit = NCircuit((p1, p2), pairs)
    ok, violations = check_regular(circuit)
    if not ok:
        raise ConstructionError(f"circuit is not regular: {violations}")
    return RegularCircuit(circuit, p, q, p1, p2, tuple(segs))


def _overlap(a: int, b: int, c: int, d: int) -> bool:
    return max(min(a, b), min(c, d)) <= min(max(a, b), max(c, d))


def check_regular(c: NCircuit) -> tuple[bool, list[str]]:
    """Both regularity conditions; violations name the offending indices (1-based)."""
    violations = []
    for i, (v, w) in enumerate(c.pairs, 1):
        if v[0] != w[0] and v[1] != w[1]:
            violations.append(f"pair {i}: {v} and {w} share neither x nor y")
    for i in range(len(c.pairs)):
        for j in range(i + 1, len(c.pairs)):
            (a, b), (u, w) = c.pairs[i], c.pairs[j]
            if _overlap(a[0], b[0], u[0], w[0]) and _overlap(a[1], b[1], u[1], w[1]):
                violations.append(f"pairs {i + 1},{j + 1}: x- and y-intervals both intersect")
    return (not violations, violations)


def build_circuit(p: int, q: int) -> RegularCircuit:
    check_pair(p, q)
    segs = segments_of(central_segments(p, q))
    segs = move_horizontals(segs, p, q)
    segs = reroute_long_horizontals(segs, p, q)
    segs = extend_boundary(segs, p, q)
    return assemble_circuit(segs, p, q)
