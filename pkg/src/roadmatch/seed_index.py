"""Seed selection: per-label cross products with a vEB priority structure.

For every label L present in both graphs the index tracks the product
n1(L)*n2(L) of its occurrence counts.  A vEB tree over products answers
min-product queries; a product table maps each product back to the labels
currently holding it.  Matched vertices are removed incrementally and the
affected label's product is recomputed.  Labels are interned to integer ids
at build time; all internal structures work on ids.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import ConfigurationError, InputError, InternalError
from .graph import EmbeddedGraph
from .labeling import Label, MasterTable, label_nodes
from .veb import VebTree

DEFAULT_MAX_PRODUCT = 24


class SeedIndex:
    def __init__(self, mt1: MasterTable, mt2: MasterTable, max_product: int):
        if max_product < 1:
            raise InputError(f"max_product must be >= 1, got {max_product}")
        self.max_product = max_product
        all_labels = sorted(set(mt1) | set(mt2))
        self.labels: list[Label] = all_labels
        self.label_id: dict[Label, int] = {lab: i for i, lab in enumerate(all_labels)}
        # Per side: label id -> set of still-unmatched vertices with that label.
        self.side_vertices: tuple[list[set[int]], list[set[int]]] = (
            [set() for _ in all_labels],
            [set() for _ in all_labels],
        )
        self.vertex_label: tuple[dict[int, int], dict[int, int]] = ({}, {})
        for side, mt in ((0, mt1), (1, mt2)):
            for lab, verts in mt.items():
                lid = self.label_id[lab]
                self.side_vertices[side][lid].update(verts)
                for v in verts:
                    self.vertex_label[side][v] = lid
        self.product: dict[int, int] = {}
        self.bucket: dict[int, set[int]] = {}
        self.retired: set[int] = set()
        self.veb = VebTree(max_product)
        for lid in range(len(all_labels)):
            n1 = len(self.side_vertices[0][lid])
            n2 = len(self.side_vertices[1][lid])
            if n1 and n2:
                p = n1 * n2
                if p > max_product:
                    raise ConfigurationError(
                        f"label {self.labels[lid]} has product {p} > bound "
                        f"{max_product}; re-tune k (see the tune-k command)"
                    )
                self._index_label(lid, p)

    def _index_label(self, lid: int, p: int) -> None:
        self.product[lid] = p
        b = self.bucket.get(p)
        if b is None:
            b = self.bucket[p] = set()
            self.veb.insert(p)
        b.add(lid)

    def _unindex_label(self, lid: int) -> None:
        p = self.product.pop(lid)
        b = self.bucket[p]
        b.discard(lid)
        if not b:
            del self.bucket[p]
            self.veb.delete(p)

    def _reindex(self, lid: int) -> None:
        if lid in self.product:
            self._unindex_label(lid)
        if lid in self.retired:
            return
        n1 = len(self.side_vertices[0][lid])
        n2 = len(self.side_vertices[1][lid])
        if n1 and n2:
            self._index_label(lid, n1 * n2)

    def retire_label(self, lid: int) -> None:
        """Permanently stop offering this label as a seed source.

        Its vertices stay tracked and can still be matched through floods
        seeded elsewhere.
        """
        self.retired.add(lid)
        if lid in self.product:
            self._unindex_label(lid)

    def __bool__(self) -> bool:
        return bool(self.veb)

    def pop_min_label(self, rng: random.Random) -> int | None:
        """Label id with minimal product, ties broken uniformly by rng.

        Returns None when no cross-present label remains (termination
        signal).  The label stays indexed until its vertices are consumed.
        """
        p = self.veb.min()
        if p is None:
            return None
        candidates = sorted(self.bucket[p])
        return candidates[rng.randrange(len(candidates))]

    def vertices(self, side: int, lid: int) -> list[int]:
        return sorted(self.side_vertices[side][lid])

    def remove_vertex(self, side: int, v: int) -> None:
        lid = self.vertex_label[side].get(v)
        if lid is None or v not in self.side_vertices[side][lid]:
            raise InternalError(f"vertex {v} not present on side {side} (double removal?)")
        self.side_vertices[side][lid].discard(v)
        self._reindex(lid)

    def add_vertex(self, side: int, v: int) -> None:
        """Reverse of remove_vertex; used by trial rollback."""
        lid = self.vertex_label[side].get(v)
        if lid is None or v in self.side_vertices[side][lid]:
            raise InternalError(f"vertex {v} already present on side {side}")
        self.side_vertices[side][lid].add(v)
        self._reindex(lid)

    def snapshot(self):
        """Canonical structural fingerprint, for rollback-exactness checks."""
        return (
            tuple(tuple(sorted(s)) for s in self.side_vertices[0]),
            tuple(tuple(sorted(s)) for s in self.side_vertices[1]),
            tuple(sorted(self.product.items())),
            tuple(sorted((p, tuple(sorted(b))) for p, b in self.bucket.items())),
            tuple(sorted(self.bucket)),
            tuple(sorted(self.retired)),
        )


def build_seed_index(
    mt1: MasterTable, mt2: MasterTable, max_product: int = DEFAULT_MAX_PRODUCT
) -> SeedIndex:
    return SeedIndex(mt1, mt2, max_product)


def max_cross_product(mt1: MasterTable, mt2: MasterTable) -> int:
    """Largest n1(L)*n2(L) over labels present in both tables; 0 if none."""
    return max(
        (len(v1) * len(mt2[lab]) for lab, v1 in mt1.items() if lab in mt2),
        default=0,
    )


@dataclass
class TuneReport:
    k: int
    max_product: int
    bounded: bool  # whether max_product <= requested bound
    per_k: list[tuple[int, int]]
    tables: tuple[MasterTable, MasterTable] | None = None


def auto_tune_k(
    g1: EmbeddedGraph,
    g2: EmbeddedGraph,
    max_product: int = DEFAULT_MAX_PRODUCT,
    k_max: int = 12,
) -> TuneReport:
    """Smallest k in [1, k_max] whose max cross product is within the bound.

    Scans k ascending (monotonicity of the max product is not guaranteed:
    small symmetric components can hold a floor).  If no k qualifies,
    returns the k minimizing the max product, smallest k on ties, flagged
    as unbounded.
    """
    if max_product < 1 or k_max < 1:
        raise InputError("max_product and k_max must be >= 1")
    per_k = []
    best = None  # (max product, k, tables)
    for k in range(1, k_max + 1):
        mt1, _ = label_nodes(g1, k)
        mt2, _ = label_nodes(g2, k)
        p = max_cross_product(mt1, mt2)
        per_k.append((k, p))
        if best is None or p < best[0]:
            best = (p, k, (mt1, mt2))
        if p <= max_product:
            return TuneReport(k, p, True, per_k, (mt1, mt2))
    p, k, tables = best
    return TuneReport(k, p, False, per_k, tables)
