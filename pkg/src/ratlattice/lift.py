"""Lift a regular 2-circuit into the cubic lattice and shorten it.

Stages:

``baseline``
    The circuit lies in ``z = 0``; ``v1`` and ``v1'`` are joined by a bridge
    at ``z = 1`` (two z-sticks and one x-stick), likewise ``v2`` and ``v2'``.
``corner``
    The bridge over ``v1`` and the two planar sticks after ``v1`` are
    replaced by a four-stick detour at ``z = 2``.
``final``
    The arc P2 is pushed to ``z = -1`` and straightened to one stick (when
    its ends are ``v2``, ``v2'``) or an L of two sticks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .circuit import ConstructionError, RegularCircuit, build_circuit, check_pair
from .lattice import (
    LatticeLink,
    Point3,
    StructuralError,
    canonicalize,
    stick_census,
    validate_embedding,
)
from .tangle import DomainError

STAGES = ("baseline", "corner", "final")


@dataclass(frozen=True)
class LiftedLink:
    link: LatticeLink
    stage: str
    p: int
    q: int
    circuit: RegularCircuit = field(repr=False, compare=False)

    @property
    def component_count_expected(self) -> int:
        return 2 if self.p % 2 == 0 else 1

    @property
    def total(self) -> int:
        return self.link.total_sticks

    def census(self) -> dict[str, int]:
        return stick_census(self.link)

    def expected_total(self) -> int:
        p = self.p
        if self.stage == "baseline":
            return 4 * p + 4
        if self.stage == "corner":
            return 4 * p + 3
        return 2 * p + 6 if p % 2 else 2 * p + 5


def _lift(pt, z: int = 0) -> Point3:
    return (pt[0], pt[1], z)


def _join(pieces: list[list[Point3]]) -> list[list[Point3]]:
    """Chain open paths that share endpoints into closed vertex cycles."""
    unused = [list(pc) for pc in pieces]
    loops = []
    while unused:
        cur = unused.pop(0)
        while cur[-1] != cur[0]:
            for k, pc in enumerate(unused):
                if pc[0] == cur[-1]:
                    break
                if pc[-1] == cur[-1]:
                    pc = pc[::-1]
                    break
            else:
                raise ConstructionError(f"open end {cur[-1]} has no continuation")
            unused.pop(k)
            cur.extend(pc[1:])
        loops.append(cur[:-1])
    return loops


def lift_baseline(c: RegularCircuit) -> LiftedLink:
    (v1, v1p), (v2, v2p) = c.circuit.pairs
    if v1[1] != v1p[1] or v2[1] != v2p[1]:
        raise ConstructionError("labelled pairs must share their y-coordinate")
    pieces = [
        [_lift(v) for v in c.p1.vertices],
        [_lift(v) for v in c.p2.vertices],
        [_lift(v1), _lift(v1, 1), _lift(v1p, 1), _lift(v1p)],
        [_lift(v2), _lift(v2, 1), _lift(v2p, 1), _lift(v2p)],
    ]
    link = canonicalize(_join(pieces))
    return LiftedLink(link, "baseline", c.p, c.q, c)


def _find_run(loop: Sequence[Point3], run: Sequence[Point3]) -> tuple[int, bool] | None:
    """Start index of ``run`` as consecutive cyclic vertices, and whether it is reversed."""
    n, m = len(loop), len(run)
    for rev, seq in ((False, list(run)), (True, list(run)[::-1])):
        for k in range(n):
            if all(loop[(k + j) % n] == seq[j] for j in range(m)):
                return k, rev
    return None


def _replace_run(loops, run, replacement) -> list[list[Point3]]:
    """Swap the first occurrence of ``run`` (either direction) for ``replacement``."""
    for li, loop in enumerate(loops):
        hit = _find_run(loop, run)
        if hit is None:
            continue
        k, rev = hit
        seq = list(replacement)[::-1] if rev else list(replacement)
        n, m = len(loop), len(run)
        rotated = [loop[(k + j) % n] for j in range(n)]
        new = seq + rotated[m:]
        out = [list(lp) for lp in loops]
        out[li] = new
        return out
    raise ConstructionError(f"path {list(run)} not found in link")


def reduce_corner(ll: LiftedLink) -> LiftedLink:
    if ll.stage != "baseline":
        raise ValueError(f"reduce_corner expects the baseline stage, got {ll.stage}")
    p, q = ll.p, ll.q
    old = [(p, p, 0), (p, p, 1), (0, p, 1), (0, p, 0), (0, -2 * q, 0), (2 * q, -2 * q, 0)]
    new = [(p, p, 0), (p, p, 2), (p, -2 * q, 2), (2 * q, -2 * q, 2), (2 * q, -2 * q, 0)]
    loops = _replace_run(ll.link.loops, old, new)
    return LiftedLink(canonicalize(loops), "corner", p, q, ll.circuit)


def _p2_replacements(c: RegularCircuit):
    """Candidate z = -1 paths joining the ends of P2, preferred first."""
    s, e = c.p2.start, c.p2.end
    if s[1] == e[1]:
        yield [(s[0], s[1], -1), (e[0], e[1], -1)]
        return
    # s is v1' (y = p): corner below it first, then the other L
    yield [(s[0], s[1], -1), (s[0], e[1], -1), (e[0], e[1], -1)]
    yield [(s[0], s[1], -1), (e[0], s[1], -1), (e[0], e[1], -1)]


def push_down_p2(ll: LiftedLink) -> LiftedLink:
    if ll.stage != "corner":
        raise ValueError(f"push_down_p2 expects the corner stage, got {ll.stage}")
    c = ll.circuit
    ends = {c.p2.start, c.p2.end}
    two_component = ends == {c.v2, c.v2p}
    if two_component != (ll.p % 2 == 0):
        raise ConstructionError(f"P2 ends {sorted(ends)} contradict the parity of p={ll.p}")
    run = [_lift(v) for v in c.p2.vertices]
    tried = []
    for path in _p2_replacements(c):
        loops = _replace_run(ll.link.loops, run, path)
        try:
            link = canonicalize(loops)
        except StructuralError as exc:
            tried.append(str(exc))
            continue
        report = validate_embedding(link)
        if report.ok:
            return LiftedLink(link, "final", ll.p, ll.q, c)
        tried.append("; ".join(report.messages[:2]))
    raise ConstructionError(f"no valid replacement for P2: {tried}")


def build_stages(p: int, q: int) -> dict[str, LiftedLink]:
    if p == 1:
        raise DomainError("p = 1 is the trivial knot and is not constructed")
    check_pair(p, q)
    base = lift_baseline(build_circuit(p, q))
    corner = reduce_corner(base)
    final = push_down_p2(corner)
    return {"baseline": base, "corner": corner, "final": final}


def build_lattice_link(p: int, q: int) -> LiftedLink:
    """Lattice embedding of the rational ``p/q`` link with four z-sticks."""
    return build_stages(p, q)["final"]
