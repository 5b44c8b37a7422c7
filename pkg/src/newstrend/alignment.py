"""Orthogonal alignment of per-month embedding spaces.

Each month's skip-gram model lives in its own arbitrary coordinate frame.
For every adjacent pair of months we fit the rotation minimizing
||A Q - B||_F over orthogonal Q (rows of A and B are the shared-vocabulary
word vectors), then chain the pairwise rotations so every month lands in a
single anchor frame. Rotations preserve within-slice cosines exactly; only
cross-month comparisons change.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputWarning, InsufficientOverlap
from .embeddings import EmbeddingSlice


@dataclass
class AlignmentMap:
    transforms: dict[str, np.ndarray]  # slice label -> composed orthogonal d x d
    anchor: str
    shared_vocab: dict[tuple[str, str], list[str]]


@dataclass
class AlignedSeries:
    slices: list[EmbeddingSlice]  # chronological, all in the anchor frame

    @property
    def labels(self) -> list[str]:
        return [s.slice.label for s in self.slices]

    def by_label(self, label: str) -> EmbeddingSlice:
        for s in self.slices:
            if s.slice.label == label:
                return s
        raise KeyError(label)


def procrustes(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Orthogonal matrix Q minimizing ||A Q - B||_F, via SVD of A^T B.

    Singular-vector sign ambiguity is resolved by flipping each left singular
    vector so its largest-magnitude entry is positive (the paired flip leaves
    the product unchanged but pins the decomposition). An all-zero
    cross-covariance yields the identity plus a DegenerateInputWarning.
    """
    A = np.asarray(A, dtype=np.float64)
    B = np.asarray(B, dtype=np.float64)
    if A.shape != B.shape or A.ndim != 2:
        raise ValueError(f"paired matrices must share shape, got {A.shape} and {B.shape}")
    d = A.shape[1]
    M = A.T @ B
    if not M.any():
        warnings.warn(
            "cross-covariance is identically zero; returning identity",
            DegenerateInputWarning,
            stacklevel=2,
        )
        return np.eye(d)
    U, _, Vt = np.linalg.svd(M)
    for j in range(d):
        i = int(np.argmax(np.abs(U[:, j])))
        if U[i, j] < 0:
            U[:, j] = -U[:, j]
            Vt[j, :] = -Vt[j, :]
    return U @ Vt


def _shared_words(a: EmbeddingSlice, b: EmbeddingSlice, top: int | None) -> list[str]:
    common = set(a.vocab.index) & set(b.vocab.index)
    ranked = sorted(
        common,
        key=lambda w: (
            -(int(a.vocab.counts[a.vocab.index[w]]) + int(b.vocab.counts[b.vocab.index[w]])),
            w,
        ),
    )
    return ranked[:top] if top else ranked


def align_series(
    slices: list[EmbeddingSlice],
    anchor: str | None = None,
    shared_top: int | None = 5000,
) -> tuple[AlignedSeries, AlignmentMap]:
    """Rotate every slice into the anchor slice's frame (default: latest).

    Adjacent pairs are fitted on their shared vocabulary, restricted to the
    ``shared_top`` most frequent shared words to damp rare-word noise, and
    the pairwise rotations are composed along the chain to the anchor.
    Raises InsufficientOverlap when a pair shares fewer words than the
    embedding dimension.
    """
    if len(slices) < 2:
        raise ValueError("need at least two slices to align")
    ordered = sorted(slices, key=lambda s: s.slice.label)
    labels = [s.slice.label for s in ordered]
    if anchor is None:
        anchor = labels[-1]
    if anchor not in labels:
        raise ValueError(f"anchor {anchor!r} is not one of {labels}")
    d = ordered[0].d
    if any(s.d != d for s in ordered):
        raise ValueError("all slices must share the embedding dimension")

    pairwise: list[np.ndarray] = []  # Q[t] maps frame t into frame t+1
    shared_map: dict[tuple[str, str], list[str]] = {}
    for a, b in zip(ordered, ordered[1:]):
        shared = _shared_words(a, b, shared_top)
        if len(shared) < d:
            raise InsufficientOverlap((a.slice.label, b.slice.label), len(shared), d)
        rows_a = a.matrix[[a.vocab.index[w] for w in shared]]
        rows_b = b.matrix[[b.vocab.index[w] for w in shared]]
        pairwise.append(procrustes(rows_a, rows_b))
        shared_map[(a.slice.label, b.slice.label)] = shared

    a_idx = labels.index(anchor)
    transforms: dict[str, np.ndarray] = {}
    for i, label in enumerate(labels):
        R = np.eye(d)
        if i < a_idx:
            for t in range(i, a_idx):
                R = R @ pairwise[t]
        elif i > a_idx:
            for t in range(i - 1, a_idx - 1, -1):
                R = R @ pairwise[t].T
        transforms[label] = R

    aligned = [
        EmbeddingSlice(
            s.slice,
            s.vocab,
            s.matrix @ transforms[s.slice.label],
            s.d,
            aligned_to=anchor,
        )
        for s in ordered
    ]
    return AlignedSeries(aligned), AlignmentMap(transforms, anchor, shared_map)
