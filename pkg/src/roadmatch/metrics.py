"""Validation metrics: haversine distances, approximation ratio, 5-mile
threshold ratio, and label-pair distance histograms.

The matcher itself never looks at geometry; these metrics use coordinates,
when present, to audit the quality of a topology-only matching.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InputError
from .labeling import MasterTable

EARTH_RADIUS_KM = 6371.0088  # IUGG mean radius
KM_PER_MILE = 1.609344
DEFAULT_THRESHOLD_MILES = 5.0
DEFAULT_BUCKET_KM = 0.5


def haversine_km(p: tuple[float, float], q: tuple[float, float]) -> float:
    """Great-circle distance between two (lon, lat) points in km."""
    lon1, lat1 = map(math.radians, p)
    lon2, lat2 = map(math.radians, q)
    s = (
        math.sin((lat2 - lat1) / 2) ** 2
        + math.cos(lat1) * math.cos(lat2) * math.sin((lon2 - lon1) / 2) ** 2
    )
    return 2 * EARTH_RADIUS_KM * math.asin(min(1.0, math.sqrt(s)))


def approximation_ratio(
    mt1: MasterTable, mt2: MasterTable, n1_total: int, n2_total: int
) -> float:
    """Cross-graph same-label pair count over the smaller graph's size.

    Small is good: it means the labeling leaves few ambiguous seed
    candidates.
    """
    if n1_total == 0 or n2_total == 0:
        raise InputError("approximation ratio undefined for empty graphs")
    a = sum(len(v1) * len(mt2[lab]) for lab, v1 in mt1.items() if lab in mt2)
    return a / min(n1_total, n2_total)


@dataclass
class ThresholdReport:
    ratio: float
    within: int
    total: int
    excluded_missing_coords: int


def threshold_ratio(
    pairs,
    coords1,
    coords2,
    threshold_miles: float = DEFAULT_THRESHOLD_MILES,
) -> ThresholdReport:
    """Fraction of matched pairs within threshold_miles of each other.

    Pairs missing coordinates on either side are excluded and counted.
    """
    limit_km = threshold_miles * KM_PER_MILE
    within = total = excluded = 0
    for v, w in pairs:
        c1 = coords1[v] if coords1 is not None else None
        c2 = coords2[w] if coords2 is not None else None
        if c1 is None or c2 is None:
            excluded += 1
            continue
        total += 1
        if haversine_km(c1, c2) <= limit_km:
            within += 1
    ratio = within / total if total else 0.0
    return ThresholdReport(ratio, within, total, excluded)


def pair_distance_histogram(
    mt1: MasterTable,
    mt2: MasterTable,
    coords1,
    coords2,
    bucket_km: float = DEFAULT_BUCKET_KM,
) -> list[tuple[float, int]]:
    """Distance histogram over every cross-graph vertex pair sharing a label.

    Returns (bucket lower edge in km, count) rows, suitable for CSV output.
    Ideal matchings put all mass in the first bucket.
    """
    if bucket_km <= 0:
        raise InputError("bucket width must be positive")
    counts: dict[int, int] = {}
    for lab, verts1 in mt1.items():
        verts2 = mt2.get(lab)
        if not verts2:
            continue
        for v in verts1:
            c1 = coords1[v]
            if c1 is None:
                continue
            for w in verts2:
                c2 = coords2[w]
                if c2 is None:
                    continue
                b = int(haversine_km(c1, c2) // bucket_km)
                counts[b] = counts.get(b, 0) + 1
    return [(b * bucket_km, counts[b]) for b in sorted(counts)]


@dataclass
class EvalReport:
    approximation_ratio: float
    threshold: ThresholdReport
    seed_time_s: float | None = None
    match_time_s: float | None = None
