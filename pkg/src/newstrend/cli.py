"""Command-line interface; one subcommand per pipeline capability."""
from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import alignment, coref, corpus as corpus_mod, embeddings, forest, pipeline, projection, trends
from .errors import NewstrendError
from .store import ArtifactStore


@click.group()
@click.option("--config", "config_path", type=click.Path(exists=True), default=None,
              help="Pipeline config file (YAML or JSON).")
@click.option("--deterministic/--no-deterministic", default=True,
              help="Single-threaded, seed-fixed runs (the default).")
@click.pass_context
def main(ctx, config_path, deterministic):
    ctx.ensure_object(dict)
    ctx.obj["config_path"] = config_path
    ctx.obj["deterministic"] = deterministic


def _fail(e: BaseException) -> None:
    click.echo(f"error: {e}", err=True)
    sys.exit(1)


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=True))
@click.option("--validate", is_flag=True, default=False, help="Only validate, print a summary.")
def ingest(input_path, validate):
    """Load and validate a JSON-lines corpus."""
    try:
        corp = corpus_mod.load_corpus(input_path)
    except NewstrendError as e:
        _fail(e)
    click.echo(f"documents: {len(corp.documents)}")
    click.echo(f"slices: {' '.join(corp.slice_labels)}")
    if validate:
        click.echo("ok")


@main.command("coref")
@click.option("--input", "input_path", required=True, type=click.Path(exists=True))
@click.option("--policy", type=click.Choice(["longest", "wordnet", "entity"]), default="longest")
@click.option("--lexicon", type=click.Path(exists=True), default=None)
@click.option("--output", type=click.Path(), default=None, help="Write the report here instead of stdout.")
def coref_cmd(input_path, policy, lexicon, output):
    """Merge local clusters globally and emit the cluster report."""
    try:
        corp = corpus_mod.load_corpus(input_path)
        lex = coref.load_lexicon(lexicon) if lexicon else None
        globals_ = coref.merge_global(coref.local_clusters(corp))
        globals_ = coref.assign_centers(
            globals_, coref.CenterPolicy(policy, lex), coref.mention_frequencies(corp)
        )
    except NewstrendError as e:
        _fail(e)
    lines = coref.cluster_report_lines(globals_)
    if output:
        Path(output).write_text("\n".join(lines) + "\n", encoding="utf-8")
    else:
        for line in lines:
            click.echo(line)


@main.command("forest")
@click.option("--input", "input_path", required=True, type=click.Path(exists=True))
@click.option("--month", required=True)
@click.option("--subject", required=True)
@click.option("--object-threshold", type=float, default=0.7)
@click.option("--verb-threshold", type=float, default=0.6)
@click.option("--min-weight", type=int, default=1)
@click.option("--max-weight", type=int, default=10**9)
@click.option("--lemmatize", is_flag=True, default=False)
@click.option("--embeddings", "emb_path", type=click.Path(exists=True), default=None,
              help="Slice embedding file enabling verb merging.")
def forest_cmd(input_path, month, subject, object_threshold, verb_threshold,
               min_weight, max_weight, lemmatize, emb_path):
    """Build, merge and filter one subject's tree for one month."""
    try:
        corp = corpus_mod.load_corpus(input_path)
        sliced = corpus_mod.slice(corp, month)
        globals_ = coref.merge_global(coref.local_clusters(corp))
        globals_ = coref.assign_centers(
            globals_, coref.CenterPolicy("longest"), coref.mention_frequencies(corp)
        )
        cfg = forest.MergeConfig(
            object_sim_threshold=object_threshold,
            verb_sim_threshold=verb_threshold,
            min_edge_weight=min_weight,
            max_edge_weight=max_weight,
            lemmatize=lemmatize,
        )
        f = forest.build_forest(sliced, globals_, cfg)
        tree = f.trees.get(coref.canonicalize(subject, globals_))
        if tree is None:
            raise NewstrendError(f"no tree for subject {subject!r} in {month}")
        vectors = embeddings.load_embedding(emb_path) if emb_path else None
        tree = forest.merge_verbs(tree, vectors, verb_threshold, object_threshold)
        tree = forest.filter_verbs(tree, min_weight, max_weight)
    except NewstrendError as e:
        _fail(e)
    click.echo(json.dumps(forest.tree_to_graph(tree), ensure_ascii=False, indent=2))


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=True))
@click.option("--month", required=True)
@click.option("--dim", type=int, default=100)
@click.option("--window", type=int, default=5)
@click.option("--neg", type=int, default=5)
@click.option("--epochs", type=int, default=5)
@click.option("--min-count", type=int, default=5)
@click.option("--seed", type=int, default=42)
@click.option("--lr", type=float, default=0.025)
@click.option("--phrases/--no-phrases", default=True)
@click.option("--output", type=click.Path(), default=None)
def embed(input_path, month, dim, window, neg, epochs, min_count, seed, lr, phrases, output):
    """Train one month's skip-gram embedding model."""
    try:
        corp = corpus_mod.load_corpus(input_path)
        sliced = corpus_mod.slice(corp, month)
        model = (
            embeddings.learn_phrases(embeddings.token_sentences(corp)) if phrases else None
        )
        cfg = embeddings.TrainConfig(
            d=dim, window=window, negatives=neg, epochs=epochs,
            initial_lr=lr, min_count=min_count, seed=seed,
        )
        s = embeddings.train_slice(sliced, model, cfg)
    except NewstrendError as e:
        _fail(e)
    out = output or f"embedding_{month}.txt"
    embeddings.save_embedding(s, out)
    click.echo(f"wrote {out} ({s.vocab.size} words, d={s.d})")


@main.command()
@click.option("--embeddings", "emb_dir", required=True, type=click.Path(exists=True),
              help="Directory of per-slice embedding files named <label>.txt.")
@click.option("--anchor", default=None)
@click.option("--shared-top", type=int, default=5000)
@click.option("--out", "out_dir", type=click.Path(), default="aligned")
def align(emb_dir, anchor, shared_top, out_dir):
    """Align every slice file into the anchor frame."""
    try:
        files = sorted(Path(emb_dir).glob("*.txt"))
        slices = [embeddings.load_embedding(p, index=i + 1) for i, p in enumerate(files)]
        aligned, amap = alignment.align_series(slices, anchor, shared_top)
    except NewstrendError as e:
        _fail(e)
    Path(out_dir).mkdir(parents=True, exist_ok=True)
    for s in aligned.slices:
        embeddings.save_embedding(s, Path(out_dir) / f"{s.slice.label}.txt")
    click.echo(f"aligned {len(aligned.slices)} slices to {amap.anchor}")


def _load_series(emb_dir: str) -> alignment.AlignedSeries:
    files = sorted(Path(emb_dir).glob("*.txt"))
    return alignment.AlignedSeries(
        [embeddings.load_embedding(p, index=i + 1) for i, p in enumerate(files)]
    )


@main.command("neighbors")
@click.option("--aligned", "emb_dir", required=True, type=click.Path(exists=True))
@click.option("--key", required=True)
@click.option("--n", type=int, default=5)
def neighbors_cmd(emb_dir, key, n):
    """Top-n nearest neighbors of a key word, per slice."""
    try:
        table = trends.neighbors(_load_series(emb_dir), key, n)
    except NewstrendError as e:
        _fail(e)
    for label in sorted(table.per_slice):
        for word, cos in table.per_slice[label]:
            click.echo(f"{word}\t{label}\t{cos:.6f}")


@main.command()
@click.option("--aligned", "emb_dir", required=True, type=click.Path(exists=True))
@click.option("--key", required=True)
@click.option("--pool", type=int, default=100)
@click.option("--top", type=int, default=10)
def drift(emb_dir, key, pool, top):
    """Rank the key's neighborhood by absolute drift."""
    try:
        report = trends.top_drift_words(_load_series(emb_dir), key, pool, top)
    except NewstrendError as e:
        _fail(e)
    for word, value in report.candidates:
        click.echo(f"{word}\t{value:.6f}")


@main.command()
@click.option("--aligned", "emb_dir", required=True, type=click.Path(exists=True))
@click.option("--key", required=True)
@click.option("--n", type=int, default=8)
@click.option("--perplexity", type=float, default=15.0)
@click.option("--iterations", type=int, default=1000)
@click.option("--seed", type=int, default=42)
def project(emb_dir, key, n, perplexity, iterations, seed):
    """Pool the key's neighbors over time and embed them in 2D."""
    try:
        points = projection.pool_neighbors(_load_series(emb_dir), key, n)
        proj = projection.tsne(points, perplexity, iterations, seed)
    except NewstrendError as e:
        _fail(e)
    for label in points.labels:
        x, y = proj.coords[label]
        click.echo(f"{label}\t{x:.6f}\t{y:.6f}")


@main.command("pipeline")
@click.pass_context
def pipeline_cmd(ctx):
    """Run the full batch pipeline from the --config file."""
    config_path = ctx.obj.get("config_path")
    if not config_path:
        _fail(NewstrendError("pipeline requires --config (pass it before the subcommand)"))
    try:
        cfg = pipeline.load_config(config_path)
        cfg.deterministic = ctx.obj.get("deterministic", True)
        store = pipeline.run_pipeline(cfg)
    except NewstrendError as e:
        _fail(e)
    click.echo(f"store: {store.root}")
    click.echo(f"artifacts: {len(store.artifacts)}")


@main.command()
@click.option("--store", "store_dir", envvar="NEWSTREND_STORE", required=True,
              type=click.Path(exists=True))
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8765)
@click.option("--webui", "webui_dir", type=click.Path(), default=None,
              help="Static UI directory to mount at /.")
def serve(store_dir, host, port, webui_dir):
    """Serve the HTTP API (and optionally the web UI) over a store."""
    from .service import serve as run_service

    try:
        store = ArtifactStore.open(store_dir)
    except NewstrendError as e:
        _fail(e)
    click.echo(f"serving {store_dir} on http://{host}:{port}")
    run_service(store, host, port, webui_dir)


if __name__ == "__main__":
    main()
