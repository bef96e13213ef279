"""Undirected embedded graphs with explicit rotation systems.

A rotation system stores, for every vertex, the clockwise cyclic order of
its neighbors.  That ordering is the only topological information the
matching pipeline relies on; coordinates are carried along purely for
validation metrics and may be absent.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InputError

DEFAULT_D_MAX = 16

LonLat = tuple[float, float]


@dataclass
class EmbeddedGraph:
    """Simple undirected graph; ``rotation[v]`` lists v's neighbors clockwise.

    Immutable by convention after construction (all fields are tuples).
    """

    rotation: tuple[tuple[int, ...], ...]
    coords: tuple[LonLat | None, ...] | None = None
    d_max: int = field(default=DEFAULT_D_MAX, repr=False)

    def __post_init__(self):
        self.rotation = tuple(tuple(r) for r in self.rotation)
        if self.coords is not None:
            self.coords = tuple(
                None if c is None else (float(c[0]), float(c[1])) for c in self.coords
            )
        _validate(self)

    @property
    def vertex_count(self) -> int:
        return len(self.rotation)

    def degree(self, v: int) -> int:
        if not 0 <= v < len(self.rotation):
            raise InputError(f"vertex {v} out of range 0..{len(self.rotation) - 1}")
        return len(self.rotation[v])

    def neighbors_clockwise_from(self, v: int, incoming: int) -> tuple[int, ...]:
        """Neighbors of v other than ``incoming``, clockwise starting just after it."""
        rot = self.rotation[v] if 0 <= v < len(self.rotation) else None
        if rot is None:
            raise InputError(f"vertex {v} out of range 0..{len(self.rotation) - 1}")
        try:
            i = rot.index(incoming)
        except ValueError:
            raise InputError(f"vertex {incoming} is not adjacent to {v}") from None
        return rot[i + 1 :] + rot[:i]

    def adjacency_sets(self) -> list[set[int]]:
        return [set(r) for r in self.rotation]

    def edge_count(self) -> int:
        return sum(len(r) for r in self.rotation) // 2


def _validate(g: EmbeddedGraph) -> None:
    n = len(g.rotation)
    if g.coords is not None and len(g.coords) != n:
        raise InputError(f"coords length {len(g.coords)} != vertex count {n}")
    for v, rot in enumerate(g.rotation):
        if len(rot) > g.d_max:
            raise InputError(f"vertex {v} has degree {len(rot)} > d_max {g.d_max}")
        seen = set()
        for u in rot:
            if not 0 <= u < n:
                raise InputError(f"adjacency of vertex {v} names unknown vertex {u}")
            if u == v:
                raise InputError(f"self-loop at vertex {v}")
            if u in seen:
                raise InputError(f"parallel edge between {v} and {u}")
            seen.add(u)
    # Symmetry: each directed entry must have its reverse, exactly once each way.
    adj = [set(r) for r in g.rotation]
    for v, rot in enumerate(g.rotation):
        for u in rot:
            if v not in adj[u]:
                raise InputError(f"asymmetric adjacency: {u} in rotation[{v}] but not vice versa")
    if g.coords is not None:
        for v, c in enumerate(g.coords):
            if c is None:
                continue
            lon, lat = c
            if not (lon == lon and lat == lat) or abs(lon) > 180 or abs(lat) > 90:
                raise InputError(f"vertex {v} has invalid coordinates {c}")


def verify_conformal(
    g1: EmbeddedGraph, g2: EmbeddedGraph, pairs
) -> tuple[bool, str | None]:
    """Check that a partial map is a conformal matching.

    Conditions: the map is injective both ways, every pair has equal
    full-graph degrees, matched edges of G1 map onto edges of G2, and the
    clockwise cyclic order of matched neighbors is preserved.  Returns
    (True, None) or (False, description-of-first-violation).
    """
    f: dict[int, int] = {}
    seen2: set[int] = set()
    for v, w in pairs:
        if not 0 <= v < g1.vertex_count or not 0 <= w < g2.vertex_count:
            raise InputError(f"pair ({v},{w}) names an out-of-range vertex")
        if v in f or w in seen2:
            return False, f"not injective at pair ({v},{w})"
        f[v] = w
        seen2.add(w)

    for v, w in f.items():
        if g1.degree(v) != g2.degree(w):
            return False, f"degree mismatch: deg({v})={g1.degree(v)} vs deg({w})={g2.degree(w)}"

    adj2 = g2.adjacency_sets()
    for v, w in f.items():
        for u in g1.rotation[v]:
            if u in f and f[u] not in adj2[w]:
                return False, f"edge ({v},{u}) maps to non-edge ({w},{f[u]})"

    for v, w in f.items():
        images = [f[u] for u in g1.rotation[v] if u in f]
        if len(images) <= 2:
            continue  # any two elements are in cyclic agreement
        image_set = set(images)
        around_w = [x for x in g2.rotation[w] if x in image_set]
        i = around_w.index(images[0])
        if around_w[i:] + around_w[:i] != images:
            return False, f"cyclic order around {v} not preserved at {w}"

    return True, None
