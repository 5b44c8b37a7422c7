import hashlib
import json
import shutil
from pathlib import Path

import pytest

from newstrend import pipeline
from newstrend.errors import PipelineError, StoreValidationError
from newstrend.store import ArtifactStore

from conftest import FIXTURES


def run_fixture(out_dir) -> ArtifactStore:
    cfg = pipeline.load_config(FIXTURES / "pipeline.yaml")
    cfg.out_dir = str(out_dir)
    return pipeline.run_pipeline(cfg)


def tree_digest(root) -> str:
    h = hashlib.sha256()
    for p in sorted(Path(root).rglob("*")):
        if p.is_file():
            h.update(str(p.relative_to(root)).encode())
            h.update(p.read_bytes())
    return h.hexdigest()


class TestPipeline:
    def test_manifest_lists_every_artifact(self, fixture_store):
        for relpath, entry in fixture_store.artifacts.items():
            path = fixture_store.root / relpath
            assert path.exists(), relpath
            assert entry["bytes"] == path.stat().st_size
        names = set(fixture_store.artifacts)
        assert "corpus.jsonl" in names
        assert "coref/clusters.jsonl" in names
        for label in fixture_store.slices:
            assert f"forests/{label}.jsonl" in names
            assert f"embeddings/{label}.txt" in names
            assert f"aligned/{label}.txt" in names
        assert any(n.startswith("reports/neighbors_") for n in names)
        assert any(n.startswith("reports/drift_") for n in names)
        assert any(n.startswith("reports/projection_") for n in names)

    def test_meta_summary(self, fixture_store):
        assert fixture_store.slices == ["2018-12", "2019-01", "2019-02", "2019-03"]
        assert fixture_store.anchor == "2019-03"
        assert "lebron james" in fixture_store.subjects
        assert "trump" in fixture_store.subjects

    def test_rerun_rewrites_nothing(self, fixture_store):
        root = fixture_store.root
        mtimes = {p: p.stat().st_mtime_ns for p in root.rglob("*") if p.is_file()}
        run_fixture(root)
        changed = [str(p) for p, t in mtimes.items() if p.stat().st_mtime_ns != t]
        assert changed == []

    def test_deterministic_reruns_byte_identical(self, fixture_store, tmp_path):
        other = tmp_path / "second"
        run_fixture(other)
        assert tree_digest(other) == tree_digest(fixture_store.root)

    def test_open_verifies_hashes(self, fixture_store):
        store = ArtifactStore.open(fixture_store.root)
        assert store.slices == fixture_store.slices

    def test_corrupted_artifact_named(self, fixture_store, tmp_path):
        broken = tmp_path / "broken"
        shutil.copytree(fixture_store.root, broken)
        victim = "embeddings/2019-01.txt"
        path = broken / victim
        path.write_text(path.read_text(encoding="utf-8") + "tampered\n", encoding="utf-8")
        with pytest.raises(StoreValidationError, match="embeddings/2019-01.txt"):
            ArtifactStore.open(broken)

    def test_stage_label_on_failure(self, tmp_path):
        bad = tmp_path / "bad.jsonl"
        bad.write_text("not json\n", encoding="utf-8")
        cfg = pipeline.PipelineConfig(corpus=str(bad), out_dir=str(tmp_path / "out"))
        with pytest.raises(PipelineError) as err:
            pipeline.run_pipeline(cfg)
        assert err.value.stage == "ingest"

    def test_phrase_artifact_contains_hand_collocation(self, fixture_store):
        phrases = json.loads(fixture_store.read_text("phrases.json"))
        assert "white_house" in phrases

    def test_forest_artifacts_reload(self, fixture_store):
        from newstrend import forest

        text = fixture_store.read_text("forests/2019-01.jsonl")
        f = forest.forest_from_jsonl(text, "2019-01")
        ranked = forest.verb_ranking({"2019-01": f}, "lebron james")["2019-01"]
        assert [r.verb for r in ranked] == ["miss", "suffer", "make", "leave", "lead"]
