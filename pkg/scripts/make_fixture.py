#!/usr/bin/env python3
"""Regenerate the bundled synthetic fixture corpus (200 documents, 4 months).

The corpus packs every storyline the tests lean on:
  - "lebron james" verb schedule whose January ranking is
    miss > suffer > make > leave > lead (make has no objects);
  - "lakers" object schedule where davis surges in January, fades in
    February and disappears in March;
  - "trump" trees with blamed x3 / liked x2 every month, subjects written
    as "Trump" or "he" plus local clusters so coref has work to do;
  - eagles/hilary cluster pairs;
  - "max" narrative that switches from people to boeing/737 in March;
  - "unemployment" narrative where record-low intensifies quarter-long;
  - "white house" bigram dense enough to become a phrase;
  - shared filler vocabulary so adjacent months overlap for alignment.

Deterministic: a fixed seed drives every choice.
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

import numpy as np

OUT_DIR = Path(__file__).resolve().parent.parent / "tests" / "fixtures"
MONTHS = ["2018-12", "2019-01", "2019-02", "2019-03"]

FILLER = (
    "the team will play game tonight fans watch season coach players start "
    "night report news media story people city state crowd arena schedule"
).split()


def span(start, end):
    return {"start": start, "end": end}


def frame_sentence(subject, verb, obj=None, extra=()):
    subj = subject.split()
    obj_toks = obj.split() if obj else []
    tokens = subj + [verb] + obj_toks + list(extra)
    frame = {
        "subject": span(0, len(subj)),
        "verb": span(len(subj), len(subj) + 1),
        "object": span(len(subj) + 1, len(subj) + 1 + len(obj_toks)) if obj_toks else None,
        "modifiers": [],
        "negated": False,
        "verb_lemma": None,
    }
    return {"tokens": tokens, "frames": [frame], "clusters": []}


def cluster_sentence(*phrases):
    # "and" separators keep mention tokens from forming accidental bigrams
    tokens, spans = [], []
    for phrase in phrases:
        if tokens:
            tokens.append("and")
        toks = phrase.split()
        spans.append(span(len(tokens), len(tokens) + len(toks)))
        tokens.extend(toks)
    return {"tokens": tokens, "frames": [], "clusters": [spans]}


def plain(text):
    return {"tokens": text.split(), "frames": [], "clusters": []}


def doc(doc_id, month, day, sentences, topic=None):
    return {
        "doc_id": doc_id,
        "published_at": f"{month}-{day:02d}",
        "topic": topic,
        "sentences": sentences,
    }


def filler_sentences(rng, n):
    out = []
    for _ in range(n):
        k = int(rng.integers(6, 10))
        out.append(plain(" ".join(FILLER[i] for i in rng.integers(0, len(FILLER), size=k))))
    return out


LEBRON_SCHEDULE = {
    "2018-12": [("leave", "cleveland cavaliers", 10), ("score", "points", 6), ("lead", "the team", 4), ("miss", "games", 2)],
    "2019-01": [("miss", "games", 9), ("suffer", "a groin strain injury", 8), ("make", None, 7), ("leave", "cleveland cavaliers", 6), ("lead", "the team", 5)],
    "2019-02": [("make", "his return", 5), ("lead", "the team", 4), ("score", "points", 3)],
    "2019-03": [("lead", "the team", 5), ("score", "points", 4)],
}

LAKERS_SCHEDULE = {
    "2018-12": [("james", 6), ("game", 5), ("ariza", 4), ("davis", 1)],
    "2019-01": [("davis", 10), ("james", 5), ("game", 4), ("ariza", 2)],
    "2019-02": [("davis", 6), ("james", 5), ("game", 5), ("ariza", 1), ("rumors", 1)],
    "2019-03": [("james", 6), ("game", 5), ("ariza", 1), ("rumors", 1)],
}
LAKERS_VERBS = ["trade", "sign", "beat", "face", "watch", "meet", "host", "chase"]

# narrative topics are sampled from pools (not fixed strings) so no
# accidental bigram repeats often enough to become a phrase
MAX_EARLY_POOL = (
    "kellerman scherzer muncy holloway debate show radio panel talked "
    "pitched fought asked analyst sports guest segment"
).split()
MAX_MARCH_POOL = (
    "boeing 737 grounded grounding fleet jets aircraft planes crash "
    "regulators airlines faa safety tarmac"
).split()
UNEMPLOYMENT_POOLS = {
    "2018-12": "numbers steady economy slowed data quarter figures rate analysts".split(),
    "2019-01": "economy jobs hiring gdp growth outlook data rate improved".split(),
    "2019-02": "gdp payrolls economy boosting strong level data rate closer".split(),
    "2019-03": "record-low gdp boosting jobs growth economists rate data strong".split(),
}
RECORD_LOW_PER_MONTH = {"2018-12": 3, "2019-01": 5, "2019-02": 8, "2019-03": 10}
WHITE_HOUSE_POOL = (
    "said president meet congress leaders spokesman briefed press budget "
    "pushed report statement officials"
).split()


def pool_sentence(rng, anchor, pool, k_lo=6, k_hi=10):
    """anchor plus a shuffled sample from the pool; anchor position varies."""
    k = int(rng.integers(k_lo, k_hi))
    words = [pool[i] for i in rng.integers(0, len(pool), size=k)]
    words.insert(int(rng.integers(0, len(words) + 1)), anchor)
    return plain(" ".join(words))


def lebron_docs(month, rng):
    rows = []
    for verb, obj, count in LEBRON_SCHEDULE[month]:
        rows.extend([(verb, obj)] * count)
    order = rng.permutation(len(rows))
    chunks = np.array_split([rows[i] for i in order], 8)
    docs = []
    for i, chunk in enumerate(chunks):
        subject = ["LeBron James", "James"][i % 2]
        sentences = [frame_sentence(subject, v, o if o is not None else None)
                     for v, o in ((r[0], r[1]) for r in chunk)]
        sentences.append(cluster_sentence("LeBron James", "James"))
        sentences.extend(filler_sentences(rng, 1))
        docs.append(doc(f"lebron-{month}-{i}", month, 2 + i, sentences, "/sports/basketball"))
    return docs


def lakers_docs(month, rng):
    rows = []
    for obj, count in LAKERS_SCHEDULE[month]:
        rows.extend([obj] * count)
    order = rng.permutation(len(rows))
    chunks = np.array_split([rows[i] for i in order], 8)
    docs = []
    for i, chunk in enumerate(chunks):
        sentences = [
            frame_sentence("Lakers", LAKERS_VERBS[int(rng.integers(len(LAKERS_VERBS)))], obj)
            for obj in chunk
        ]
        sentences.append(cluster_sentence("Lakers", "they"))
        sentences.extend(filler_sentences(rng, 1))
        docs.append(doc(f"lakers-{month}-{i}", month, 3 + i, sentences, "/sports/basketball"))
    return docs


def trump_docs(month, rng):
    docs = []
    rows = [("blamed", "democrats")] * 3 + [("liked", "the tweet")] * 2
    for i in range(5):
        verb, obj = rows[i]
        subject = "Trump" if i % 2 == 0 else "he"
        sentences = [frame_sentence(subject, verb, obj)]
        sentences.append(cluster_sentence("Trump", "he"))
        sentences.extend(filler_sentences(rng, 1))
        docs.append(doc(f"trump-{month}-{i}", month, 11 + i, sentences, "/news/politics"))
    return docs


def eagles_hilary_docs(month, rng):
    # even subject split keeps the two eagles mentions frequency-tied, so the
    # entity policy resolves the tie by span length
    docs = []
    for i in range(4):
        subject = "the Eagles" if i % 2 == 0 else "the Philadelphia Eagles"
        sentences = [
            frame_sentence(subject, "win", "the game"),
            cluster_sentence("the Philadelphia Eagles", "the Eagles"),
        ]
        sentences.extend(filler_sentences(rng, 1))
        docs.append(doc(f"eagles-{month}-{i}", month, 16 + i, sentences, "/sports/football"))
    for i in range(2):
        subject = "Hilary Clinton" if i % 2 == 0 else "Hilary"
        sentences = [
            frame_sentence(subject, "spoke", "the crowd"),
            cluster_sentence("Hilary", "Hilary Clinton"),
        ]
        sentences.extend(filler_sentences(rng, 1))
        docs.append(doc(f"hilary-{month}-{i}", month, 19 + i, sentences, "/news/politics"))
    return docs


def max_docs(month, rng):
    pool = MAX_MARCH_POOL if month == "2019-03" else MAX_EARLY_POOL
    docs = []
    for i in range(8):
        sentences = [pool_sentence(rng, "max", pool) for _ in range(3)]
        sentences.extend(filler_sentences(rng, 1))
        docs.append(doc(f"max-{month}-{i}", month, 21 + (i % 7), sentences, "/news"))
    return docs


def unemployment_docs(month, rng):
    pool = UNEMPLOYMENT_POOLS[month]
    docs = []
    quota = RECORD_LOW_PER_MONTH[month]
    for i in range(6):
        sentences = []
        for _ in range(2):
            s = pool_sentence(rng, "unemployment", pool)
            if quota > 0:
                s["tokens"].insert(int(rng.integers(0, len(s["tokens"]) + 1)), "record-low")
                quota -= 1
            sentences.append(s)
        sentences.extend(filler_sentences(rng, 1))
        docs.append(doc(f"jobs-{month}-{i}", month, 24 + (i % 4), sentences, "/news/economy"))
    return docs


def white_house_docs(month, rng):
    # "white house" stays verbatim-adjacent on purpose: it is the one
    # collocation the fixture wants the phrase stage to pick up
    docs = []
    for i in range(4):
        sentences = []
        for _ in range(3):
            s = pool_sentence(rng, "white", WHITE_HOUSE_POOL, 5, 8)
            s["tokens"].insert(s["tokens"].index("white") + 1, "house")
            sentences.append(s)
        sentences.extend(filler_sentences(rng, 1))
        docs.append(doc(f"wh-{month}-{i}", month, 9 + i, sentences, "/news/politics"))
    return docs


def filler_docs(month, rng):
    return [
        doc(f"filler-{month}-{i}", month, 5 + i, filler_sentences(rng, 4), "/news")
        for i in range(5)
    ]


def main():
    rng = np.random.default_rng(20190401)
    docs = []
    for month in MONTHS:
        docs.extend(lebron_docs(month, rng))
        docs.extend(lakers_docs(month, rng))
        docs.extend(trump_docs(month, rng))
        docs.extend(eagles_hilary_docs(month, rng))
        docs.extend(max_docs(month, rng))
        docs.extend(unemployment_docs(month, rng))
        docs.extend(white_house_docs(month, rng))
        docs.extend(filler_docs(month, rng))
    assert len(docs) == 200, len(docs)

    OUT_DIR.mkdir(parents=True, exist_ok=True)
    corpus_path = OUT_DIR / "corpus.jsonl"
    with open(corpus_path, "w", encoding="utf-8") as fh:
        for d in docs:
            fh.write(json.dumps(d, ensure_ascii=False, sort_keys=True) + "\n")

    (OUT_DIR / "entities.txt").write_text(
        "\n".join(
            ["the philadelphia eagles", "the eagles", "lakers", "lebron james",
             "hilary clinton", "trump", "cleveland cavaliers"]
        )
        + "\n",
        encoding="utf-8",
    )

    (OUT_DIR / "pipeline.yaml").write_text(
        """corpus: corpus.jsonl
store: store-out
coref:
  policy: longest
forest:
  object_sim_threshold: 0.7
  verb_sim_threshold: 0.6
  min_edge_weight: 1
  max_edge_weight: 1000000
phrases:
  enabled: true
  min_count: 5
  score_threshold: 60.0
embedding:
  d: 16
  window: 4
  negatives: 5
  epochs: 12
  initial_lr: 0.05
  min_count: 2
  seed: 7
alignment:
  anchor: 2019-03
  shared_top: 5000
reports:
  keys: [lakers, max, unemployment]
  neighbor_n: 5
  drift_pool: 20
  drift_top: 8
  projection_n: 6
  perplexity: 6.0
  iterations: 500
  tsne_seed: 11
deterministic: true
""",
        encoding="utf-8",
    )
    total_tokens = sum(len(s["tokens"]) for d in docs for s in d["sentences"])
    print(f"wrote {corpus_path} ({len(docs)} docs, {total_tokens} tokens)")


if __name__ == "__main__":
    sys.exit(main())
