"""Reading and writing graph snapshots.

Two inputs are supported: the native ERG interchange format, which carries
the rotation system verbatim, and a geographic segment format from which
rotations are derived by clockwise bearing sort.  Polyline inputs are first
collapsed to their endpoints so curved roads do not introduce chains of
degree-2 vertices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InputError
from .graph import DEFAULT_D_MAX, EmbeddedGraph

ERG_HEADER = "ERG 1"


@dataclass
class SegmentSet:
    """Polylines of (lon, lat) points, one per road."""

    polylines: list[list[tuple[float, float]]]

    def __post_init__(self):
        for i, line in enumerate(self.polylines):
            if len(line) < 2:
                raise InputError(f"polyline {i} has fewer than 2 points")


# --- ERG format ---------------------------------------------------------


def parse_erg(text: str, d_max: int = DEFAULT_D_MAX) -> EmbeddedGraph:
    n = None
    coords: dict[int, tuple[float, float]] = {}
    adjacency: dict[int, tuple[int, ...]] = {}
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not header_seen:
            if line != ERG_HEADER:
                raise InputError(f"line {lineno}: expected '{ERG_HEADER}' header")
            header_seen = True
            continue
        parts = line.split()
        tag = parts[0]
        try:
            if tag == "n":
                if n is not None:
                    raise InputError(f"line {lineno}: duplicate 'n' line")
                n = int(parts[1])
                if n < 0 or len(parts) != 2:
                    raise ValueError
            elif tag == "v":
                if n is None:
                    raise InputError(f"line {lineno}: 'v' before 'n'")
                vid = int(parts[1])
                if not 0 <= vid < n:
                    raise InputError(f"line {lineno}: undeclared vertex {vid}")
                if vid in coords:
                    raise InputError(f"line {lineno}: duplicate vertex id {vid}")
                if len(parts) == 4:
                    coords[vid] = (float(parts[2]), float(parts[3]))
                elif len(parts) != 2:
                    raise ValueError
            elif tag == "a":
                if n is None:
                    raise InputError(f"line {lineno}: 'a' before 'n'")
                vid = int(parts[1])
                if not 0 <= vid < n:
                    raise InputError(f"line {lineno}: undeclared vertex {vid}")
                if vid in adjacency:
                    raise InputError(f"line {lineno}: duplicate adjacency for vertex {vid}")
                nbrs = tuple(int(p) for p in parts[2:])
                for u in nbrs:
                    if not 0 <= u < n:
                        raise InputError(f"line {lineno}: undeclared vertex {u} in adjacency")
                adjacency[vid] = nbrs
            else:
                raise InputError(f"line {lineno}: unknown record '{tag}'")
        except (ValueError, IndexError):
            raise InputError(f"line {lineno}: malformed record: {line!r}") from None
    if not header_seen:
        if text.strip():
            raise InputError("line 1: missing ERG header")
        raise InputError("empty document: missing ERG header")
    if n is None:
        raise InputError("missing 'n' line")
    rotation = tuple(adjacency.get(v, ()) for v in range(n))
    graph_coords = None
    if coords:
        graph_coords = tuple(coords.get(v) for v in range(n))
    try:
        return EmbeddedGraph(rotation, graph_coords, d_max=d_max)
    except InputError as e:
        raise InputError(f"invalid graph: {e}") from None


def emit_erg(g: EmbeddedGraph) -> str:
    """Deterministic inverse of parse_erg: vertices ascending, rotations as stored."""
    lines = [ERG_HEADER, f"n {g.vertex_count}"]
    if g.coords is not None:
        for v, c in enumerate(g.coords):
            if c is not None:
                lines.append(f"v {v} {c[0]!r} {c[1]!r}")
    for v, rot in enumerate(g.rotation):
        if rot:
            lines.append("a " + " ".join(str(x) for x in (v, *rot)))
    return "\n".join(lines) + "\n"


# --- segment format -----------------------------------------------------


def parse_segments(text: str) -> SegmentSet:
    polylines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] != "s":
            raise InputError(f"line {lineno}: expected 's' record")
        points = []
        try:
            for p in parts[1:]:
                lon, lat = p.split(",")
                points.append((float(lon), float(lat)))
        except ValueError:
            raise InputError(f"line {lineno}: malformed point in {line!r}") from None
        if len(points) < 2:
            raise InputError(f"line {lineno}: polyline needs at least 2 points")
        polylines.append(points)
    return SegmentSet(polylines)


def collapse_polylines(s: SegmentSet) -> SegmentSet:
    """Reduce every polyline to its two endpoints."""
    return SegmentSet([[line[0], line[-1]] for line in s.polylines])


def bearing_degrees(src: tuple[float, float], dst: tuple[float, float]) -> float:
    """Compass bearing of dst as seen from src: 0 = due north, clockwise positive."""
    dlon = dst[0] - src[0]
    dlat = dst[1] - src[1]
    return math.degrees(math.atan2(dlon, dlat)) % 360.0


def rotation_from_coords(coords, neighbor_lists) -> tuple[tuple[int, ...], ...]:
    """Sort each vertex's neighbors by compass bearing (clockwise from north).

    Bearing ties break by ascending neighbor id so construction stays
    deterministic.
    """
    rotation = []
    for v, nbrs in enumerate(neighbor_lists):
        rotation.append(tuple(sorted(nbrs, key=lambda u: (bearing_degrees(coords[v], coords[u]), u))))
    return tuple(rotation)


def build_graph_from_segments(
    s: SegmentSet, snap_epsilon: float = 0.0, d_max: int = DEFAULT_D_MAX
) -> EmbeddedGraph:
    """One vertex per distinct endpoint, one edge per segment.

    Endpoints are identified exactly by default; a positive snap_epsilon
    quantizes coordinates to that grid first.
    """
    collapsed = collapse_polylines(s)

    def key(p):
        if snap_epsilon > 0:
            return (round(p[0] / snap_epsilon), round(p[1] / snap_epsilon))
        return p

    vertex_of: dict = {}
    coords: list[tuple[float, float]] = []
    edges = []
    for i, (a, b) in enumerate(collapsed.polylines):
        ka, kb = key(a), key(b)
        if ka == kb:
            raise InputError(f"segment {i} has identical endpoints {a}")
        for k, p in ((ka, a), (kb, b)):
            if k not in vertex_of:
                vertex_of[k] = len(coords)
                coords.append(p)
        edges.append((vertex_of[ka], vertex_of[kb]))

    nbrs: list[set[int]] = [set() for _ in coords]
    for i, (u, v) in enumerate(edges):
        if v in nbrs[u]:
            raise InputError(f"segment {i} duplicates an existing edge ({u},{v})")
        nbrs[u].add(v)
        nbrs[v].add(u)
    rotation = rotation_from_coords(coords, nbrs)
    return EmbeddedGraph(rotation, tuple(coords), d_max=d_max)


def load_graph(path: str, fmt: str = "erg", d_max: int = DEFAULT_D_MAX) -> EmbeddedGraph:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if fmt == "erg":
        return parse_erg(text, d_max=d_max)
    if fmt == "segments":
        return build_graph_from_segments(parse_segments(text), d_max=d_max)
    raise InputError(f"unknown format {fmt!r}")
