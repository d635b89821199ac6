"""Planar diagrams of lattice links and the invariants used to check them.

A :class:`Diagram` is a planar-diagram code.  Each crossing lists the four
edge labels met when walking counter-clockwise around it, and records which
diagonal (positions 0,2 or 1,3) is the over-strand.  Larger projected-out
coordinate means "over".

Bracket convention: ``<cross> = A <A-smoothing> + A^-1 <B-smoothing>``, a free
loop is ``-A^2 - A^-2`` and the one-loop diagram is 1.  The A-smoothing joins
each under-strand end to the end following it counter-clockwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .lattice import LatticeLink
from .laurent import LOOP, ONE, LaurentPoly
from .tangle import ConwayWord, normalize_word

DEFAULT_CROSSING_LIMIT = 24
NAIVE_CROSSING_LIMIT = 24


class NonRegularProjection(ValueError):
    """The chosen projection has a tangency, overlap or multiple point."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class CrossingLimitExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Crossing:
    ends: tuple[int, int, int, int]
    over: int  # over-strand sits at positions (over, over + 2)

    def __post_init__(self):
        if self.over not in (0, 1):
            raise ValueError("over must be 0 or 1")

    def a_pairs(self) -> tuple[tuple[int, int], tuple[int, int]]:
        u = 1 - self.over
        return ((u, u + 1), ((u + 2) % 4, (u + 3) % 4))

    def b_pairs(self) -> tuple[tuple[int, int], tuple[int, int]]:
        o = self.over
        return ((o, o + 1), ((o + 2) % 4, (o + 3) % 4))


@dataclass(frozen=True)
class Diagram:
    """Planar-diagram code.

    ``entries`` optionally orients every strand: for each crossing, the
    position (0 or 2) where the strand along positions 0,2 enters, and the
    position (1 or 3) where the other strand enters.  Without it strands are
    oriented by traversal order.
    """

    crossings: tuple[Crossing, ...]
    free_loops: int = 0
    entries: tuple[tuple[int, int], ...] | None = None

    def __post_init__(self):
        counts: dict[int, int] = {}
        for c in self.crossings:
            for e in c.ends:
                counts[e] = counts.get(e, 0) + 1
        bad = [e for e, n in counts.items() if n != 2]
        if bad:
            raise ValueError(f"edges {bad[:5]} do not appear exactly twice")
        if self.entries is not None:
            self._check_entries()

    def _check_entries(self):
        if len(self.entries) != len(self.crossings):
            raise ValueError("one entry pair per crossing is required")
        darts = self.darts()
        for ci, (e0, e1) in enumerate(self.entries):
            if e0 not in (0, 2) or e1 not in (1, 3):
                raise ValueError(f"crossing {ci}: invalid entry positions {(e0, e1)}")
            for e in (e0, e1):
                out = (e + 2) % 4
                cj, pj = _other_dart(darts, self.crossings[ci].ends[out], (ci, out))
                if self.entries[cj][pj % 2] != pj:
                    raise ValueError(f"orientation breaks between crossings {ci} and {cj}")

    def __len__(self):
        return len(self.crossings)

    def darts(self) -> dict[int, list[tuple[int, int]]]:
        out: dict[int, list[tuple[int, int]]] = {}
        for ci, c in enumerate(self.crossings):
            for k, e in enumerate(c.ends):
                out.setdefault(e, []).append((ci, k))
        return out

    def mirror(self) -> Diagram:
        return Diagram(
            tuple(Crossing(c.ends, 1 - c.over) for c in self.crossings),
            self.free_loops,
            self.entries,
        )

    def to_text(self) -> str:
        """One crossing per line: four edge ids counter-clockwise, ``over=0|1``
        and, for oriented diagrams, ``in=<entry>,<entry>``."""
        lines = [f"free_loops {self.free_loops}"]
        for ci, c in enumerate(self.crossings):
            line = " ".join(map(str, c.ends)) + f" over={c.over}"
            if self.entries is not None:
                line += " in={},{}".format(*self.entries[ci])
            lines.append(line)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> Diagram:
        free = 0
        crossings = []
        entries = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            if line.startswith("free_loops"):
                free = int(line.split()[1])
                continue
            fields = line.split()
            tags = dict(f.split("=") for f in fields[4:])
            crossings.append(Crossing(tuple(int(e) for e in fields[:4]), int(tags["over"])))
            if "in" in tags:
                entries.append(tuple(int(v) for v in tags["in"].split(",")))
        if entries and len(entries) != len(crossings):
            raise ValueError("either every crossing or none carries in=")
        return cls(tuple(crossings), free, tuple(entries) if entries else None)


# ---------------------------------------------------------------------------
# traversal


def _other_dart(darts, e, here):
    a, b = darts[e]
    return b if a == here else a


def strands(d: Diagram) -> list[list[tuple[int, int]]]:
    """Closed strands as lists of passages ``(crossing, entry position)``."""
    darts = d.darts()
    seen: set[tuple[int, int]] = set()
    out = []
    for ci in range(len(d.crossings)):
        for k in (0, 1):
            if (ci, k) in seen:
                continue
            comp = []
            cur = (ci, d.entries[ci][k] if d.entries is not None else k)
            while (cur[0], cur[1] % 2) not in seen:
                seen.add((cur[0], cur[1] % 2))
                comp.append(cur)
                exit_pos = (cur[1] + 2) % 4
                e = d.crossings[cur[0]].ends[exit_pos]
                cur = _other_dart(darts, e, (cur[0], exit_pos))
            out.append(comp)
    return out


def component_count(d: Diagram) -> int:
    return len(strands(d)) + d.free_loops


def crossing_signs(d: Diagram, reverse: Iterable[int] = ()) -> list[int]:
    """Sign of every crossing, with the listed strands traversed backwards."""
    flip = set(reverse)
    entry: dict[tuple[int, int], int] = {}
    for si, comp in enumerate(strands(d)):
        for ci, pos in comp:
            entry[(ci, pos % 2)] = (pos + 2) % 4 if si in flip else pos
    signs = []
    for ci, c in enumerate(d.crossings):
        over_in = entry[(ci, c.over)]
        under_in = entry[(ci, 1 - c.over)]
        signs.append(1 if over_in == (under_in + 3) % 4 else -1)
    return signs


def writhe(d: Diagram, reverse: Iterable[int] = ()) -> int:
    return sum(crossing_signs(d, reverse))


# ---------------------------------------------------------------------------
# Kauffman bracket


def _guard(d: Diagram, limit: int | None):
    if limit is not None and len(d.crossings) > limit:
        raise CrossingLimitExceeded(f"{len(d.crossings)} crossings exceed the limit {limit}")


def bracket_naive(d: Diagram, limit: int | None = NAIVE_CROSSING_LIMIT) -> LaurentPoly:
    """Sum over all ``2^c`` states."""
    _guard(d, limit)
    if not d.crossings:
        return LOOP ** (d.free_loops - 1) if d.free_loops else ONE
    edges = sorted(d.darts())
    index = {e: k for k, e in enumerate(edges)}
    terms: dict[int, int] = {}
    loop_powers: dict[int, LaurentPoly] = {}
    for state in product((0, 1), repeat=len(d.crossings)):
        parent = list(range(len(edges)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for c, s in zip(d.crossings, state):
            for i, j in (c.a_pairs() if s == 0 else c.b_pairs()):
                ri, rj = find(index[c.ends[i % 4]]), find(index[c.ends[j % 4]])
                if ri != rj:
                    parent[ri] = rj
        loops = len({find(x) for x in range(len(edges))}) + d.free_loops
        exp = state.count(0) - state.count(1)
        key = loops - 1
        if key not in loop_powers:
            loop_powers[key] = LOOP**key
        for e, c in loop_powers[key].terms.items():
            terms[e + exp] = terms.get(e + exp, 0) + c
    return LaurentPoly(terms)


def _crossing_order(d: Diagram) -> list[int]:
    """Greedy order keeping the open-edge frontier small."""
    n = len(d.crossings)
    left = set(range(n))
    frontier: set[int] = set()
    order = []
    while left:
        best = max(sorted(left), key=lambda ci: sum(e in frontier for e in d.crossings[ci].ends))
        left.remove(best)
        order.append(best)
        for e in d.crossings[best].ends:
            if e in frontier:
                frontier.remove(e)
            else:
                frontier.add(e)
    return order


def bracket(d: Diagram, limit: int | None = None) -> LaurentPoly:
    """Bracket by contracting crossings one at a time.

    The partial state is a perfect matching on the currently open edge
    labels; states with equal matchings are merged.
    """
    _guard(d, limit)
    if not d.crossings:
        return LOOP ** (d.free_loops - 1) if d.free_loops else ONE
    # state: (sorted tuple of pairs, loops closed) -> polynomial
    states: dict[tuple, LaurentPoly] = {((), 0): ONE}
    for ci in _crossing_order(d):
        c = d.crossings[ci]
        nxt: dict[tuple, LaurentPoly] = {}
        for (pairs, loops), poly in states.items():
            for smoothing, weight in ((c.a_pairs(), 1), (c.b_pairs(), -1)):
                match = {}
                for a, b in pairs:
                    match[a] = b
                    match[b] = a
                closed = loops
                for i, j in smoothing:
                    x, y = c.ends[i % 4], c.ends[j % 4]
                    if x == y:
                        closed += 1
                        continue
                    if x in match:
                        ex = match.pop(x)
                        del match[ex]
                    else:
                        ex = x
                    if y in match:
                        ey = match.pop(y)
                        del match[ey]
                    else:
                        ey = y
                    if ex == ey:
                        closed += 1
                    else:
                        match[ex] = ey
                        match[ey] = ex
                key = (tuple(sorted((a, b) for a, b in match.items() if a < b)), closed)
                term = poly.shift(weight)
                nxt[key] = nxt[key] + term if key in nxt else term
        states = nxt
    total = LaurentPoly()
    for (pairs, loops), poly in states.items():
        if pairs:
            raise RuntimeError("contraction left open edges")
        total = total + poly * LOOP ** (loops + d.free_loops - 1)
    return total


def normalized_jones(d: Diagram, reverse: Iterable[int] = (), limit: int | None = None) -> LaurentPoly:
    """``(-A^3)^(-writhe) <D>``; substitute ``A = t^(-1/4)`` for the Jones polynomial."""
    w = writhe(d, reverse)
    factor = LaurentPoly.monomial(-3 * w, -1 if w % 2 else 1)
    return factor * bracket(d, limit)


def jones_orientation_classes(d: Diagram, limit: int | None = None) -> frozenset:
    """Normalized Jones for every relative orientation of the strands.

    For links the polynomial depends on how components are oriented relative
    to one another; comparing these sets makes the check orientation-free.
    """
    n = len(strands(d))
    br = bracket(d, limit)
    out = set()
    for mask in range(2 ** max(n - 1, 0)):
        rev = [k + 1 for k in range(n - 1) if mask >> k & 1]
        w = writhe(d, rev)
        out.add(LaurentPoly.monomial(-3 * w, -1 if w % 2 else 1) * br)
    return frozenset(out)


# ---------------------------------------------------------------------------
# faces and determinant


def faces(d: Diagram) -> list[list[tuple[int, int]]]:
    """Regions as lists of corners ``(crossing, k)``; corner k lies between
    positions k and k+1."""
    darts = d.darts()
    seen: set[tuple[int, int]] = set()
    out = []
    for ci in range(len(d.crossings)):
        for k in range(4):
            if (ci, k) in seen:
                continue
            face = []
            cur = (ci, k)
            while cur not in seen:
                seen.add(cur)
                face.append(cur)
                # leave along position k+1, arrive at the far dart, turn ccw
                pos = (cur[1] + 1) % 4
                e = d.crossings[cur[0]].ends[pos]
                far = _other_dart(darts, e, (cur[0], pos))
                cur = far
            out.append(face)
    return out


def _bareiss_det(m: list[list[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def goeritz_matrix(d: Diagram) -> list[list[int]]:
    fs = faces(d)
    face_of = {corner: fi for fi, f in enumerate(fs) for corner in f}
    # two colours: corners k and k+1 of a crossing lie in different regions
    colour = {0: 0}
    stack = [0]
    adj: dict[int, set[tuple[int, int]]] = {}
    for ci in range(len(d.crossings)):
        for k in range(4):
            a, b = face_of[(ci, k)], face_of[(ci, (k + 1) % 4)]
            adj.setdefault(a, set()).add((b, 1))
            adj.setdefault(b, set()).add((a, 1))
    while stack:
        f = stack.pop()
        for g, _ in adj.get(f, ()):
            if g not in colour:
                colour[g] = 1 - colour[f]
                stack.append(g)
            elif colour[g] == colour[f]:
                raise ValueError("diagram regions are not two-colourable")
    shaded = sorted(f for f, c in colour.items() if c == 0)
    idx = {f: i for i, f in enumerate(shaded)}
    n = len(shaded)
    g = [[0] * n for _ in range(n)]
    for ci, c in enumerate(d.crossings):
        k = 0 if colour[face_of[(ci, 0)]] == 0 else 1
        r1, r2 = face_of[(ci, k)], face_of[(ci, k + 2)]
        eta = 1 if k == c.over else -1
        if r1 != r2:
            i, j = idx[r1], idx[r2]
            g[i][j] += eta
            g[j][i] += eta
            g[i][i] -= eta
            g[j][j] -= eta
    return g


def determinant(d: Diagram) -> int:
    """|det| of the reduced Goeritz matrix (0 for split diagrams)."""
    if not d.crossings:
        return 1 if d.free_loops == 1 else 0
    if d.free_loops:
        return 0
    if len(faces(d)) != len(d.crossings) + 2:
        # disconnected projection: the link is split
        return 0
    g = goeritz_matrix(d)
    reduced = [row[1:] for row in g[1:]]
    return abs(_bareiss_det(reduced))


# ---------------------------------------------------------------------------
# reference rational diagrams

# crossing positions counter-clockwise: 0=NE, 1=NW, 2=SW, 3=SE
_NE, _NW, _SW, _SE = 0, 1, 2, 3
# the twist box keeps the NE-SW diagonal over; this matches the handedness
# produced by the lattice construction
REFERENCE_OVER = 0


def reference_diagram(word: ConwayWord, over: int = REFERENCE_OVER) -> Diagram:
    """Alternating diagram: ``a1`` horizontal twists on the zero tangle, ``a2``
    vertical ones, ..., closed by joining the top ends and the bottom ends."""
    word = normalize_word(word)
    fresh = iter(range(10**9))
    top, bottom = next(fresh), next(fresh)
    ends = {"NW": top, "NE": top, "SW": bottom, "SE": bottom}
    raw: list[list[int]] = []
    for k, a in enumerate(word.entries):
        for _ in range(a):
            c = [0, 0, 0, 0]
            if k % 2 == 0:
                c[_NW], c[_SW] = ends["NE"], ends["SE"]
                c[_NE], c[_SE] = next(fresh), next(fresh)
                ends["NE"], ends["SE"] = c[_NE], c[_SE]
            else:
                c[_NW], c[_NE] = ends["SW"], ends["SE"]
                c[_SW], c[_SE] = next(fresh), next(fresh)
                ends["SW"], ends["SE"] = c[_SW], c[_SE]
            raw.append(c)
    # numerator closure
    alias = {ends["NE"]: ends["NW"], ends["SE"]: ends["SW"]}

    def resolve(e):
        while e in alias and alias[e] != e:
            e = alias[e]
        return e

    labels: dict[int, int] = {}
    crossings = []
    for c in raw:
        ends4 = tuple(labels.setdefault(resolve(e), len(labels)) for e in c)
        crossings.append(Crossing(ends4, over))
    return Diagram(tuple(crossings))


# ---------------------------------------------------------------------------
# projection


_AXIS_ORDER = {"z": (0, 1, 2), "x": (1, 2, 0), "y": (2, 0, 1)}
# tilt choices (horizontal factor, vertical factor) in units of M and 1
PERTURBATIONS = {1: (-1, 0), 2: (0, -1), 3: (1, 0), 4: (0, 1)}


@dataclass
class _ImageSeg:
    loop: int
    a: tuple  # 2D image endpoints (integers)
    b: tuple
    a3: tuple  # 3D endpoints in (u, v, depth) order
    b3: tuple


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _on_segment(p, a, b) -> bool:
    return (
        _cross(a, b, p) == 0
        and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def _depth(seg: _ImageSeg, t: Fraction) -> Fraction:
    return seg.a3[2] + t * (seg.b3[2] - seg.a3[2])


def _image_map(link: LatticeLink, axis: str, perturb: int):
    order = _AXIS_ORDER[axis]
    pts = [tuple(v[i] for i in order) for loop in link.loops for v in loop]
    if not perturb:
        return order, lambda u, v, w: (u, v)
    span = max(abs(c) for pt in pts for c in pt) + 1
    m = 4 * span + 3
    if perturb not in PERTURBATIONS:
        raise ValueError(f"unknown perturbation {perturb}")
    hx, vx = PERTURBATIONS[perturb]
    # tilt: one image coordinate moves by M per unit depth, the other by 1
    tx = hx * m if hx else (1 if vx > 0 else -1)
    ty = vx * m if vx else (1 if hx > 0 else -1)
    return order, lambda u, v, w: (m * m * u + tx * w, m * m * v + ty * w)


def project(link: LatticeLink, axis: str = "z", perturb: int = 0) -> Diagram:
    """Diagram of ``link`` seen from the positive ``axis`` direction.

    ``perturb`` selects a tiny tilt of the viewing direction (1-4).  It is a
    verification-only device: for a valid lattice embedding any tilt gives a
    regular projection.  Without it, overlapping images raise
    :class:`NonRegularProjection`.
    """
    order, image = _image_map(link, axis, perturb)
    segs: list[_ImageSeg] = []
    loop_segs: list[list[int]] = []
    for li, loop in enumerate(link.loops):
        ids = []
        n = len(loop)
        for k in range(n):
            a3 = tuple(loop[k][i] for i in order)
            b3 = tuple(loop[(k + 1) % n][i] for i in order)
            a, b = image(*a3), image(*b3)
            if a == b:
                continue
            ids.append(len(segs))
            segs.append(_ImageSeg(li, a, b, a3, b3))
        if len(ids) < 2:
            raise NonRegularProjection(f"loop {li} projects to a point or a segment")
        loop_segs.append(ids)

    neighbours: dict[int, set[int]] = {}
    for ids in loop_segs:
        for k, s in enumerate(ids):
            t = ids[(k + 1) % len(ids)]
            neighbours.setdefault(s, set()).add(t)
            neighbours.setdefault(t, set()).add(s)

    hits: dict[int, list[tuple[Fraction, int]]] = {i: [] for i in range(len(segs))}
    records = []  # (seg i, t_i, seg j, t_j)
    seen_points: set[tuple[Fraction, Fraction]] = set()
    boxes = [
        (min(s.a[0], s.b[0]), max(s.a[0], s.b[0]), min(s.a[1], s.b[1]), max(s.a[1], s.b[1]))
        for s in segs
    ]
    for i in range(len(segs)):
        s = segs[i]
        bi = boxes[i]
        for j in range(i + 1, len(segs)):
            bj = boxes[j]
            if bi[1] < bj[0] or bj[1] < bi[0] or bi[3] < bj[2] or bj[3] < bi[2]:
                continue
            t = segs[j]
            d1, d2 = _cross(s.a, s.b, t.a), _cross(s.a, s.b, t.b)
            d3, d4 = _cross(t.a, t.b, s.a), _cross(t.a, t.b, s.b)
            adjacent = j in neighbours.get(i, ())
            if d1 == 0 and d2 == 0:
                # collinear
                shared = {s.a, s.b} & {t.a, t.b}
                overlap = _collinear_overlap(s, t)
                if overlap == 0 and (not shared or adjacent):
                    continue
                if overlap == 0 and not shared:
                    continue
                raise NonRegularProjection(
                    f"images of {s.a3}-{s.b3} and {t.a3}-{t.b3} overlap", (s, t)
                )
            if (d1 > 0 and d2 > 0) or (d1 < 0 and d2 < 0) or (d3 > 0 and d4 > 0) or (d3 < 0 and d4 < 0):
                continue
            if 0 in (d1, d2, d3, d4):
                if adjacent and ({s.a, s.b} & {t.a, t.b}):
                    continue
                raise NonRegularProjection(
                    f"image of {s.a3}-{s.b3} touches {t.a3}-{t.b3} at a vertex", (s, t)
                )
            ti = Fraction(d3, d3 - d4)
            tj = Fraction(d1, d1 - d2)
            pt = (s.a[0] + ti * (s.b[0] - s.a[0]), s.a[1] + ti * (s.b[1] - s.a[1]))
            if pt in seen_points:
                raise NonRegularProjection(f"triple point at {pt}", (s, t))
            seen_points.add(pt)
            records.append((i, ti, j, tj))

    # over/under and passage order
    over_of = {}
    for r, (i, ti, j, tj) in enumerate(records):
        di, dj = _depth(segs[i], ti), _depth(segs[j], tj)
        if di == dj:
            raise NonRegularProjection("sticks meet in space", (segs[i], segs[j]))
        over_of[r] = i if di > dj else j
        hits[i].append((ti, r))
        hits[j].append((tj, r))

    passages: dict[int, dict[str, tuple]] = {r: {} for r in range(len(records))}
    next_edge = 0
    free = 0
    for li, ids in enumerate(loop_segs):
        seq = []  # (record, segment)
        for sid in ids:
            for _, r in sorted(hits[sid]):
                seq.append((r, sid))
        m = len(seq)
        if m == 0:
            free += 1
            continue
        base = next_edge
        next_edge += m
        for k, (r, sid) in enumerate(seq):
            role = "over" if over_of[r] == sid else "under"
            s = segs[sid]
            direction = (s.b[0] - s.a[0], s.b[1] - s.a[1])
            passages[r][role] = (base + (k - 1) % m, base + k, direction)

    crossings = []
    entries = []
    for r in range(len(records)):
        u_in, u_out, u_dir = passages[r]["under"]
        o_in, o_out, o_dir = passages[r]["over"]
        positive = o_dir[0] * u_dir[1] - o_dir[1] * u_dir[0] > 0
        if positive:
            crossings.append(Crossing((u_in, o_out, u_out, o_in), 1))
            entries.append((0, 3))
        else:
            crossings.append(Crossing((u_in, o_in, u_out, o_out), 1))
            entries.append((0, 1))
    return Diagram(tuple(crossings), free, tuple(entries))


def _collinear_overlap(s: _ImageSeg, t: _ImageSeg) -> int:
    """Length (in the dominant coordinate) of the shared part of two collinear images."""
    k = 0 if s.a[0] != s.b[0] else 1
    lo = max(min(s.a[k], s.b[k]), min(t.a[k], t.b[k]))
    hi = min(max(s.a[k], s.b[k]), max(t.a[k], t.b[k]))
    return max(0, hi - lo)


def project_regular(link: LatticeLink, axis: str = "z") -> tuple[Diagram, bool]:
    """Project, falling back to a tilted view.  Returns (diagram, perturbed)."""
    try:
        return project(link, axis), False
    except NonRegularProjection:
        return project(link, axis, perturb=1), True
