"""Neighbor tables, cosine series and absolute-drift rankings over time.

All computations read an aligned series, so cosines taken across months are
comparable. Drift of a candidate word w around a key word is the summed
absolute month-to-month change of cos(key, w); large drift flags words whose
association with the key fluctuated the most.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .alignment import AlignedSeries
from .embeddings import EmbeddingSlice
from .errors import TooFewSlices, UnknownWord


@dataclass
class NeighborTable:
    key: str
    n: int
    per_slice: dict[str, list[tuple[str, float]]]  # label -> [(word, cosine)]


@dataclass
class DriftReport:
    key: str
    candidates: list[tuple[str, float]]  # (word, drift), drift descending
    series: dict[str, list[float]]  # word -> cosine per slice, chronological


def _all_cosines(slice_: EmbeddingSlice, key: str) -> np.ndarray:
    idx = slice_.vocab.index[key]
    M = slice_.matrix
    norms = np.linalg.norm(M, axis=1)
    norms[norms == 0.0] = 1.0
    return (M @ M[idx]) / (norms * norms[idx])


def neighbors(series: AlignedSeries, key: str, n: int) -> NeighborTable:
    """Per slice, the n words with highest cosine to the key (key excluded).

    Ties break lexicographically; slices lacking the key yield empty lists.
    Raises UnknownWord when no slice contains the key.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if all(key not in s.vocab.index for s in series.slices):
        raise UnknownWord(key)
    table: dict[str, list[tuple[str, float]]] = {}
    for s in series.slices:
        if key not in s.vocab.index:
            table[s.slice.label] = []
            continue
        cos = _all_cosines(s, key)
        ranked = sorted(
            (w for w in s.vocab.words if w != key),
            key=lambda w: (-cos[s.vocab.index[w]], w),
        )
        table[s.slice.label] = [(w, float(cos[s.vocab.index[w]])) for w in ranked[:n]]
    return NeighborTable(key, n, table)


def similarity_series(
    series: AlignedSeries, key: str, other: str
) -> list[float | None]:
    """cos(key, other) per slice; None marks slices missing either word."""
    out: list[float | None] = []
    for s in series.slices:
        ia = s.vocab.index.get(key)
        ib = s.vocab.index.get(other)
        if ia is None or ib is None:
            out.append(None)
            continue
        u, v = s.matrix[ia], s.matrix[ib]
        nu, nv = float(np.linalg.norm(u)), float(np.linalg.norm(v))
        out.append(0.0 if nu == 0.0 or nv == 0.0 else float(u @ v) / (nu * nv))
    return out


def drift(series_values: list[float]) -> float:
    """Sum of absolute first differences of a cosine series."""
    if len(series_values) < 2:
        raise TooFewSlices(f"need at least 2 values, got {len(series_values)}")
    return float(sum(abs(b - a) for a, b in zip(series_values, series_values[1:])))


def top_drift_words(
    series: AlignedSeries, key: str, pool_n: int, k: int
) -> DriftReport:
    """Rank the key's neighborhood by absolute drift.

    The candidate pool is the union over slices of the key's top-``pool_n``
    neighbors, intersected with the vocabulary shared by every slice (words
    missing somewhere have no total series and are excluded rather than
    imputed). The report carries the top ``k`` by drift, ties lexicographic.
    """
    if pool_n < 1 or k < 1:
        raise ValueError("pool_n and k must be at least 1")
    missing = [s.slice.label for s in series.slices if key not in s.vocab.index]
    if missing:
        raise UnknownWord(f"{key} absent from slice {missing[0]}")
    if len(series.slices) < 2:
        raise TooFewSlices("need at least 2 slices for drift")

    table = neighbors(series, key, pool_n)
    everywhere = set.intersection(*(set(s.vocab.index) for s in series.slices))
    pool = sorted(
        {w for ranked in table.per_slice.values() for w, _ in ranked if w in everywhere}
    )
    report_series: dict[str, list[float]] = {}
    drifts: list[tuple[str, float]] = []
    for w in pool:
        values = similarity_series(series, key, w)
        assert all(v is not None for v in values)
        report_series[w] = [float(v) for v in values]  # type: ignore[arg-type]
        drifts.append((w, drift(report_series[w])))
    drifts.sort(key=lambda wd: (-wd[1], wd[0]))
    top = drifts[:k]
    return DriftReport(key, top, {w: report_series[w] for w, _ in top})
