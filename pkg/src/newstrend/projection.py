"""2D maps of a key word's neighborhood across months, via exact t-SNE.

The key's aligned vector from every month is pooled together with its top
neighbors, each labeled word_slice, and the pooled set is embedded in two
dimensions. The t-SNE here is the exact O(N^2) variant: per-point bandwidths
found by binary search to match the target perplexity, symmetrized
affinities, and plain gradient descent with early exaggeration, momentum and
per-element gains. Point sets stay small, so exactness beats approximation.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .alignment import AlignedSeries
from .errors import PerplexityTooHigh, TooFewPoints, UnknownWord
from .trends import neighbors

EARLY_EXAGGERATION = 12.0
EXAGGERATION_ITERS = 250
LEARNING_RATE = 200.0
INIT_SIGMA = 1e-4
_EPS = 1e-12


@dataclass
class LabeledPointSet:
    labels: list[str]
    vectors: np.ndarray  # (N, d)

    def __post_init__(self):
        if len(self.labels) != len(set(self.labels)):
            raise ValueError("labels must be unique")
        if self.vectors.shape[0] != len(self.labels):
            raise ValueError("one vector per label required")


@dataclass
class Projection2D:
    coords: dict[str, tuple[float, float]]
    params: dict = field(default_factory=dict)
    kl_history: list[tuple[int, float]] = field(default_factory=list)


def pool_neighbors(series: AlignedSeries, key: str, n: int) -> LabeledPointSet:
    """Collect key_<slice> plus its top-n neighbors word_<slice> per slice.

    Slices missing the key contribute nothing. Labels are unique by
    construction since (word, slice) pairs never repeat.
    """
    table = neighbors(series, key, n)
    labels: list[str] = []
    rows: list[np.ndarray] = []
    for s in series.slices:
        ranked = table.per_slice[s.slice.label]
        if key not in s.vocab.index:
            continue
        labels.append(f"{key}_{s.slice.label}")
        rows.append(s.matrix[s.vocab.index[key]])
        for word, _ in ranked:
            labels.append(f"{word}_{s.slice.label}")
            rows.append(s.matrix[s.vocab.index[word]])
    if not rows:
        raise UnknownWord(key)
    return LabeledPointSet(labels, np.vstack(rows))


def _conditional_p(dist_row: np.ndarray, beta: float) -> np.ndarray:
    p = np.exp(-dist_row * beta)
    s = p.sum()
    return p / s if s > 0 else np.full_like(p, 1.0 / len(p))


def _entropy(p: np.ndarray) -> float:
    nz = p[p > _EPS]
    return float(-(nz * np.log(nz)).sum())


def _joint_affinities(X: np.ndarray, perplexity: float, tol: float = 1e-5) -> np.ndarray:
    n = X.shape[0]
    sq = np.sum(X * X, axis=1)
    D = np.maximum(sq[:, None] + sq[None, :] - 2.0 * (X @ X.T), 0.0)
    target = np.log(perplexity)
    P = np.zeros((n, n))
    for i in range(n):
        row = np.delete(D[i], i)
        beta, lo, hi = 1.0, 0.0, np.inf
        p = _conditional_p(row, beta)
        h = _entropy(p)
        for _ in range(64):
            diff = h - target
            if abs(diff) < tol:
                break
            if diff > 0:  # entropy too high -> sharpen
                lo = beta
                beta = beta * 2.0 if hi == np.inf else (beta + hi) / 2.0
            else:
                hi = beta
                beta = (beta + lo) / 2.0
            p = _conditional_p(row, beta)
            h_new = _entropy(p)
            if abs(h_new - h) < 1e-12:
                # entropy has stopped responding: the target is unreachable
                # (e.g. exactly equidistant neighbors); keep the symmetric
                # distribution instead of chasing float dust with huge betas
                h = h_new
                break
            h = h_new
        P[i, np.arange(n) != i] = p
    P = (P + P.T) / (2.0 * n)
    return np.maximum(P, _EPS)


def tsne(
    points: LabeledPointSet,
    perplexity: float = 15.0,
    iterations: int = 1000,
    seed: int = 42,
) -> Projection2D:
    """Exact t-SNE to 2D; identical seed and input give identical output.

    Requires N >= 3 points and perplexity < (N - 1) / 3. KL divergence
    against the unexaggerated affinities is recorded every 25 iterations.
    """
    N = points.vectors.shape[0]
    if N < 3:
        raise TooFewPoints(f"need at least 3 points, got {N}")
    if perplexity <= 0:
        raise ValueError("perplexity must be positive")
    if perplexity >= (N - 1) / 3.0:
        raise PerplexityTooHigh(
            f"perplexity {perplexity} too high for {N} points (needs < {(N - 1) / 3:.2f})"
        )
    if iterations < 1:
        raise ValueError("iterations must be positive")

    P = _joint_affinities(np.asarray(points.vectors, dtype=np.float64), perplexity)
    rng = np.random.default_rng(seed)
    Y = rng.normal(0.0, INIT_SIGMA, size=(N, 2))
    velocity = np.zeros_like(Y)
    gains = np.ones_like(Y)
    exaggeration_until = min(EXAGGERATION_ITERS, iterations // 2)
    # A fixed step of 200 overshoots badly below a few hundred points (the
    # map blows up, then repulsion decays like 1/distance and never pulls it
    # back); scale with N as the auto-rate heuristics do, capped at 200.
    step = float(np.clip(N / EARLY_EXAGGERATION, 25.0, LEARNING_RATE))
    kl_history: list[tuple[int, float]] = []

    for it in range(iterations):
        sq = np.sum(Y * Y, axis=1)
        num = 1.0 / (1.0 + np.maximum(sq[:, None] + sq[None, :] - 2.0 * (Y @ Y.T), 0.0))
        np.fill_diagonal(num, 0.0)
        Q = np.maximum(num / num.sum(), _EPS)

        P_eff = P * EARLY_EXAGGERATION if it < exaggeration_until else P
        PQ = (P_eff - Q) * num
        grad = 4.0 * ((np.diag(PQ.sum(axis=1)) - PQ) @ Y)

        momentum = 0.5 if it < exaggeration_until else 0.8
        same_sign = np.sign(grad) == np.sign(velocity)
        gains = np.where(same_sign, gains * 0.8, gains + 0.2)
        np.clip(gains, 0.01, None, out=gains)
        velocity = momentum * velocity - step * gains * grad
        Y = Y + velocity
        Y = Y - Y.mean(axis=0)

        if (it + 1) % 25 == 0 or it + 1 == iterations:
            kl = float((P * np.log(P / Q)).sum())
            kl_history.append((it + 1, kl))

    coords = {label: (float(x), float(y)) for label, (x, y) in zip(points.labels, Y)}
    return Projection2D(
        coords,
        params={"perplexity": perplexity, "iterations": iterations, "seed": seed},
        kl_history=kl_history,
    )
