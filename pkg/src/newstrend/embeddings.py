"""Per-month word embeddings: phrase detection plus skip-gram training.

Multi-word units ("white house") are promoted to single tokens by iterated
bigram joining with the co-occurrence score

    score(a, b) = (count(ab) - min_count) * N / (count(a) * count(b))

where N is the running token total; a join never produces a unit of more
than four source tokens. Each time slice then trains its own skip-gram model
with negative sampling: unigram^(3/4) negative distribution, per-pair linear
learning-rate decay, and a single-threaded update loop so a fixed seed gives
a bitwise-identical matrix.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from numba import njit

from .corpus import Corpus, TimeSlice
from .errors import EmptyVocabulary, OutOfVocabulary

PHRASE_MAX_LEN = 4
PHRASE_DELIM = "_"


def token_sentences(corpus: Corpus, lowercase: bool = True) -> list[list[str]]:
    out = []
    for doc in corpus.documents:
        for sent in doc.sentences:
            toks = [t.lower() for t in sent.tokens] if lowercase else list(sent.tokens)
            if toks:
                out.append(toks)
    return out


@dataclass
class PhraseModel:
    phrase_scores: dict[str, float] = field(default_factory=dict)
    max_len: int = PHRASE_MAX_LEN
    min_count: int = 5
    score_threshold: float = 10.0
    passes: int = 3

    def apply(self, tokens: Sequence[str]) -> list[str]:
        """Re-join adjacent units exactly as the learning passes did."""
        units = list(tokens)
        for _ in range(self.passes):
            units = self._join_pass(units)
        return units

    def _join_pass(self, units: list[str]) -> list[str]:
        out = []
        i = 0
        while i < len(units):
            if i + 1 < len(units):
                joined = units[i] + PHRASE_DELIM + units[i + 1]
                if joined in self.phrase_scores:
                    out.append(joined)
                    i += 2
                    continue
            out.append(units[i])
            i += 1
        return out

    def apply_all(self, sentences: Iterable[Sequence[str]]) -> list[list[str]]:
        return [self.apply(s) for s in sentences]


def _source_len(unit: str) -> int:
    return unit.count(PHRASE_DELIM) + 1


def learn_phrases(
    sentences: Iterable[Sequence[str]],
    min_count: int = 5,
    score_threshold: float = 10.0,
    max_len: int = PHRASE_MAX_LEN,
    passes: int = 3,
) -> PhraseModel:
    """Detect collocations by up to ``passes`` bigram-joining sweeps.

    Pass one can form 2-token units, later passes join what previous ones
    built, capped so no unit ever spans more than ``max_len`` source tokens.
    Purely count-based, hence deterministic.
    """
    corpus = [list(s) for s in sentences]
    model = PhraseModel({}, max_len, min_count, score_threshold, passes)
    for _ in range(passes):
        unigram: Counter = Counter()
        bigram: Counter = Counter()
        total = 0
        for sent in corpus:
            unigram.update(sent)
            total += len(sent)
            for a, b in zip(sent, sent[1:]):
                if _source_len(a) + _source_len(b) <= max_len:
                    bigram[(a, b)] += 1
        accepted = {}
        for (a, b), n_ab in bigram.items():
            score = (n_ab - min_count) * total / (unigram[a] * unigram[b])
            if score > score_threshold:
                accepted[a + PHRASE_DELIM + b] = score
        if not accepted:
            break
        model.phrase_scores.update(accepted)
        corpus = [model._join_pass(sent) for sent in corpus]
    return model


@dataclass(eq=False)
class Vocabulary:
    words: list[str]
    counts: np.ndarray
    index: dict[str, int]

    @classmethod
    def from_counts(cls, counter: Counter, min_count: int) -> "Vocabulary":
        kept = sorted(
            ((w, c) for w, c in counter.items() if c >= min_count),
            key=lambda wc: (-wc[1], wc[0]),
        )
        words = [w for w, _ in kept]
        counts = np.array([c for _, c in kept], dtype=np.int64)
        return cls(words, counts, {w: i for i, w in enumerate(words)})

    @property
    def size(self) -> int:
        return len(self.words)

    def __len__(self) -> int:
        return len(self.words)


@dataclass(eq=False)
class EmbeddingSlice:
    slice: TimeSlice
    vocab: Vocabulary
    matrix: np.ndarray  # (V, d), one row per word
    d: int
    aligned_to: str | None = None
    loss_history: list[float] | None = None


@dataclass(frozen=True)
class TrainConfig:
    d: int = 100
    window: int = 5
    negatives: int = 5
    epochs: int = 5
    initial_lr: float = 0.025
    min_count: int = 5
    seed: int = 42

    def __post_init__(self):
        for name in ("d", "window", "negatives", "epochs", "min_count"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.initial_lr <= 0:
            raise ValueError("initial_lr must be positive")


@njit(cache=True)
def _count_pairs(sent_lens, windows):
    total = 0
    pos = 0
    for s in range(sent_lens.shape[0]):
        n = sent_lens[s]
        for i in range(n):
            b = windows[pos]
            lo = i - b if i - b > 0 else 0
            hi = i + b if i + b < n - 1 else n - 1
            total += hi - lo
            pos += 1
    return total


@njit(cache=True)
def _build_pairs(tokens, sent_lens, windows, centers, contexts):
    k = 0
    pos = 0
    base = 0
    for s in range(sent_lens.shape[0]):
        n = sent_lens[s]
        for i in range(n):
            b = windows[pos]
            lo = i - b if i - b > 0 else 0
            hi = i + b if i + b < n - 1 else n - 1
            for j in range(lo, hi + 1):
                if j == i:
                    continue
                centers[k] = tokens[base + i]
                contexts[k] = tokens[base + j]
                k += 1
            pos += 1
        base += n
    return k


@njit(cache=True)
def _sgns_epoch(W, C, centers, contexts, negatives, lr0, lr_floor, start, total):
    """One pass of single-threaded SGD over (center, context) pairs.

    W holds input vectors (the embeddings), C output vectors. Each pair
    trains one positive target and the given negative samples; a negative
    equal to the positive target is skipped, as is standard.
    """
    d = W.shape[1]
    k = negatives.shape[1]
    acc = np.empty(d, dtype=np.float64)
    for p in range(centers.shape[0]):
        lr = lr0 * (1.0 - (start + p) / total)
        if lr < lr_floor:
            lr = lr_floor
        w = centers[p]
        pos = contexts[p]
        for q in range(d):
            acc[q] = 0.0
        for t in range(k + 1):
            if t == 0:
                target = pos
                label = 1.0
            else:
                target = negatives[p, t - 1]
                if target == pos:
                    continue
                label = 0.0
            z = 0.0
            for q in range(d):
                z += C[target, q] * W[w, q]
            if z > 30.0:
                sig = 1.0
            elif z < -30.0:
                sig = 0.0
            else:
                sig = 1.0 / (1.0 + math.exp(-z))
            g = (label - sig) * lr
            for q in range(d):
                acc[q] += g * C[target, q]
                C[target, q] += g * W[w, q]
        for q in range(d):
            W[w, q] += acc[q]


def _probe_loss(W, C, centers, contexts, negatives) -> float:
    """Mean SGNS objective (negative log likelihood) over a fixed batch."""
    h = W[centers]  # (n, d)
    z_pos = np.einsum("nd,nd->n", C[contexts], h)
    loss = np.logaddexp(0.0, -z_pos)
    z_neg = np.einsum("nkd,nd->nk", C[negatives], h)
    keep = negatives != contexts[:, None]
    loss = loss + (np.logaddexp(0.0, z_neg) * keep).sum(axis=1)
    return float(loss.mean())


def train_slice(
    corpus_slice: Corpus,
    phrases: PhraseModel | None,
    config: TrainConfig,
    probe_pairs: int = 4096,
) -> EmbeddingSlice:
    """Train one slice's skip-gram model and return its embedding matrix.

    Deterministic: the seed fixes initialization, per-position window draws
    and negative samples, and updates run on a single thread in corpus order.
    loss_history holds the probe-batch objective after each epoch.
    """
    sentences = token_sentences(corpus_slice)
    if phrases is not None:
        sentences = phrases.apply_all(sentences)
    counts: Counter = Counter()
    for sent in sentences:
        counts.update(sent)
    vocab = Vocabulary.from_counts(counts, config.min_count)
    if vocab.size == 0:
        raise EmptyVocabulary(
            f"no word reaches min_count={config.min_count} in slice "
            f"{corpus_slice.slices[0].label if corpus_slice.slices else '?'}"
        )

    indexed = [
        [vocab.index[t] for t in sent if t in vocab.index] for sent in sentences
    ]
    indexed = [s for s in indexed if len(s) >= 2]
    tokens = np.array([t for s in indexed for t in s], dtype=np.int32)
    sent_lens = np.array([len(s) for s in indexed], dtype=np.int32)
    n_positions = int(tokens.shape[0])

    rng = np.random.default_rng(config.seed)
    W = (rng.random((vocab.size, config.d), dtype=np.float64) - 0.5) / config.d
    C = np.zeros((vocab.size, config.d), dtype=np.float64)

    slice_ = corpus_slice.slices[0] if corpus_slice.slices else TimeSlice("", 1)
    if n_positions == 0:
        return EmbeddingSlice(slice_, vocab, W, config.d, loss_history=[])

    # Window draws for every epoch come first so the total pair count (and
    # with it the linear decay schedule) is known before any update runs.
    window_draws = [
        rng.integers(1, config.window + 1, size=n_positions).astype(np.int32)
        for _ in range(config.epochs)
    ]
    pair_counts = [int(_count_pairs(sent_lens, w)) for w in window_draws]
    total_pairs = sum(pair_counts)

    probs = vocab.counts.astype(np.float64) ** 0.75
    cum = np.cumsum(probs / probs.sum())
    lr_floor = config.initial_lr * 1e-4

    probe = None
    losses = []
    start = 0
    for epoch in range(config.epochs):
        n_pairs = pair_counts[epoch]
        centers = np.empty(n_pairs, dtype=np.int32)
        contexts = np.empty(n_pairs, dtype=np.int32)
        _build_pairs(tokens, sent_lens, window_draws[epoch], centers, contexts)
        negatives = np.searchsorted(
            cum, rng.random((n_pairs, config.negatives))
        ).astype(np.int32)
        if probe is None:
            m = min(probe_pairs, n_pairs)
            probe = (centers[:m].copy(), contexts[:m].copy(), negatives[:m].copy())
        _sgns_epoch(
            W, C, centers, contexts, negatives,
            config.initial_lr, lr_floor, start, total_pairs,
        )
        start += n_pairs
        losses.append(_probe_loss(W, C, *probe))

    return EmbeddingSlice(slice_, vocab, W, config.d, loss_history=losses)


def cosine(slice_: EmbeddingSlice, a: str, b: str) -> float:
    """Cosine similarity of two vocabulary words' vectors."""
    ia = slice_.vocab.index.get(a)
    ib = slice_.vocab.index.get(b)
    if ia is None:
        raise OutOfVocabulary(a)
    if ib is None:
        raise OutOfVocabulary(b)
    return _row_cosine(slice_.matrix[ia], slice_.matrix[ib])


def _row_cosine(u: np.ndarray, v: np.ndarray) -> float:
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return float(u @ v) / (nu * nv)


def save_embedding(slice_: EmbeddingSlice, path: str | Path) -> None:
    """Text format: header "V d label [aligned_to: anchor]" then one line
    per word with full-precision coordinates."""
    with open(path, "w", encoding="utf-8") as fh:
        header = f"{slice_.vocab.size} {slice_.d} {slice_.slice.label}"
        if slice_.aligned_to is not None:
            header += f" aligned_to: {slice_.aligned_to}"
        fh.write(header + "\n")
        for i, word in enumerate(slice_.vocab.words):
            coords = " ".join(repr(float(x)) for x in slice_.matrix[i])
            fh.write(f"{word} {coords}\n")


def load_embedding(path: str | Path, index: int = 1, counts: dict[str, int] | None = None) -> EmbeddingSlice:
    with open(path, encoding="utf-8") as fh:
        head = fh.readline().split()
        if len(head) not in (3, 5) or (len(head) == 5 and head[3] != "aligned_to:"):
            raise ValueError(f"{path}: malformed embedding header")
        v, d, label = int(head[0]), int(head[1]), head[2]
        aligned_to = head[4] if len(head) == 5 else None
        words = []
        rows = np.empty((v, d), dtype=np.float64)
        for i in range(v):
            parts = fh.readline().rstrip("\n").split(" ")
            if len(parts) != d + 1:
                raise ValueError(f"{path}: row {i} has {len(parts) - 1} coordinates, expected {d}")
            words.append(parts[0])
            rows[i] = [float(x) for x in parts[1:]]
    cnt = np.array([(counts or {}).get(w, 1) for w in words], dtype=np.int64)
    vocab = Vocabulary(words, cnt, {w: i for i, w in enumerate(words)})
    return EmbeddingSlice(TimeSlice(label, index), vocab, rows, d, aligned_to=aligned_to)
