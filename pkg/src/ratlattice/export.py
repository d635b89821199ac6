"""JSON, OBJ and SVG serialization of lattice links and planar circuits."""

from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from dataclasses import dataclass

from .circuit import RegularCircuit
from .lattice import LatticeLink, stick_census
from .lift import STAGES, LiftedLink

SVG_SCALE = 10
P1_COLOUR = "#1f5fbf"
P2_COLOUR = "#c0392b"
SVG_MARGIN = 2


class FormatError(ValueError):
    pass


@dataclass(frozen=True)
class LinkRecord:
    """The serialized view of a constructed link."""

    p: int
    q: int
    stage: str
    link: LatticeLink

    @classmethod
    def of(cls, ll: LiftedLink) -> LinkRecord:
        return cls(ll.p, ll.q, ll.stage, ll.link)

    @property
    def components(self) -> int:
        return len(self.link.loops)

    def stick_counts(self) -> dict[str, int]:
        return stick_census(self.link)


def to_dict(rec: LinkRecord) -> dict:
    return {
        "p": rec.p,
        "q": rec.q,
        "components": rec.components,
        "loops": [[list(v) for v in loop] for loop in rec.link.loops],
        "stick_counts": rec.stick_counts(),
        "stage": rec.stage,
    }


def emit_json(rec: LinkRecord | LiftedLink) -> str:
    if isinstance(rec, LiftedLink):
        rec = LinkRecord.of(rec)
    return json.dumps(to_dict(rec), indent=None, separators=(",", ":")) + "\n"


def _int(value, name):
    if type(value) is not int:
        raise FormatError(f"{name} must be an integer, got {value!r}")
    return value


def parse_json(text: str) -> LinkRecord:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    keys = {"p", "q", "components", "loops", "stick_counts", "stage"}
    if not isinstance(data, dict) or set(data) != keys:
        raise FormatError(f"top-level object must have exactly the keys {sorted(keys)}")
    if data["stage"] not in STAGES:
        raise FormatError(f"unknown stage {data['stage']!r}")
    loops = []
    for loop in data["loops"]:
        pts = []
        for v in loop:
            if not isinstance(v, list) or len(v) != 3:
                raise FormatError(f"vertex {v!r} is not a triple")
            pts.append(tuple(_int(c, "coordinate") for c in v))
        loops.append(pts)
    rec = LinkRecord(_int(data["p"], "p"), _int(data["q"], "q"), data["stage"], LatticeLink(loops))
    if _int(data["components"], "components") != rec.components:
        raise FormatError("components does not match the number of loops")
    counts = data["stick_counts"]
    if not isinstance(counts, dict) or set(counts) != {"x", "y", "z"}:
        raise FormatError("stick_counts must have keys x, y, z")
    if {k: _int(v, "stick count") for k, v in counts.items()} != rec.stick_counts():
        raise FormatError("stick_counts disagree with the loops")
    return rec


def emit_obj(rec: LinkRecord | LiftedLink) -> str:
    """Wavefront OBJ: ``v`` per vertex, one closed ``l`` polyline per loop."""
    if isinstance(rec, LiftedLink):
        rec = LinkRecord.of(rec)
    lines = [f"# rational {rec.p}/{rec.q} link, stage {rec.stage}, {rec.link.total_sticks} sticks"]
    index = 1
    polylines = []
    for li, loop in enumerate(rec.link.loops):
        ids = []
        for v in loop:
            lines.append("v {} {} {}".format(*v))
            ids.append(index)
            index += 1
        polylines.append(f"o loop{li}")
        polylines.append("l " + " ".join(map(str, ids + ids[:1])))
    return "\n".join(lines + polylines) + "\n"


def parse_obj(text: str) -> LatticeLink:
    verts: list[tuple[int, int, int]] = []
    loops = []
    for line in text.splitlines():
        parts = line.split()
        if not parts or parts[0] in ("#", "o"):
            continue
        if parts[0] == "v":
            verts.append(tuple(int(c) for c in parts[1:4]))
        elif parts[0] == "l":
            ids = [int(i) for i in parts[1:]]
            if len(ids) < 2 or ids[0] != ids[-1]:
                raise FormatError("line element does not close its loop")
            loops.append([verts[i - 1] for i in ids[:-1]])
    return LatticeLink(loops)


def emit_svg(circuit: RegularCircuit) -> str:
    """Planar circuit at 10 px per lattice unit; y grows upwards."""
    pts = [v for arc in circuit.circuit.arcs for v in arc.vertices]
    xs = [x for x, _ in pts]
    ys = [y for _, y in pts]
    x0, x1 = min(xs) - SVG_MARGIN, max(xs) + SVG_MARGIN
    y0, y1 = min(ys) - SVG_MARGIN, max(ys) + SVG_MARGIN

    def px(pt):
        return (pt[0] - x0) * SVG_SCALE, (y1 - pt[1]) * SVG_SCALE

    root = ET.Element(
        "svg",
        xmlns="http://www.w3.org/2000/svg",
        width=str((x1 - x0) * SVG_SCALE),
        height=str((y1 - y0) * SVG_SCALE),
    )
    ET.SubElement(root, "title").text = f"regular 2-circuit for {circuit.p}/{circuit.q}"
    for name, arc, colour in (("P1", circuit.p1, P1_COLOUR), ("P2", circuit.p2, P2_COLOUR)):
        ET.SubElement(
            root,
            "polyline",
            id=name,
            fill="none",
            stroke=colour,
            points=" ".join("{},{}".format(*px(v)) for v in arc.vertices),
        )
    named = (("v1", circuit.v1), ("v1'", circuit.v1p), ("v2", circuit.v2), ("v2'", circuit.v2p))
    for label, v in named:
        cx, cy = px(v)
        ET.SubElement(root, "circle", cx=str(cx), cy=str(cy), r="3", fill="black")
        text = ET.SubElement(root, "text", x=str(cx + 4), y=str(cy - 4), attrib={"font-size": "10"})
        text.text = label
    return ET.tostring(root, encoding="unicode") + "\n"
