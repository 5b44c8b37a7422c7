"""Content-addressed artifact store produced by the pipeline.

The store is a plain directory with a manifest.json at its root listing
every artifact's path, size and SHA-256. Writers compare hashes before
touching files, so an unchanged rerun rewrites nothing and two runs over
identical inputs produce byte-identical trees. Readers verify hashes on
open and fail naming the first corrupted file.
"""
from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .errors import StoreValidationError

MANIFEST_NAME = "manifest.json"


def sha256_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


class ArtifactStore:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.artifacts: dict[str, dict] = {}
        self.meta: dict = {}

    # -- writing -----------------------------------------------------

    def write_text(self, relpath: str, content: str) -> bool:
        """Write an artifact unless the identical bytes are already there.

        Returns True when the file was (re)written.
        """
        data = content.encode("utf-8")
        digest = sha256_bytes(data)
        path = self.root / relpath
        self.artifacts[relpath] = {"sha256": digest, "bytes": len(data)}
        if path.exists() and sha256_bytes(path.read_bytes()) == digest:
            return False
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(data)
        return True

    def finalize(self) -> bool:
        manifest = {
            "version": 1,
            "meta": self.meta,
            "artifacts": {k: self.artifacts[k] for k in sorted(self.artifacts)},
        }
        content = json.dumps(manifest, ensure_ascii=False, sort_keys=True, indent=1) + "\n"
        data = content.encode("utf-8")
        path = self.root / MANIFEST_NAME
        if path.exists() and path.read_bytes() == data:
            return False
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(data)
        return True

    # -- reading -----------------------------------------------------

    @classmethod
    def open(cls, root: str | Path, verify: bool = True) -> "ArtifactStore":
        store = cls(root)
        manifest_path = store.root / MANIFEST_NAME
        if not manifest_path.exists():
            raise StoreValidationError(f"no {MANIFEST_NAME} under {store.root}")
        manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
        store.meta = manifest.get("meta", {})
        store.artifacts = manifest.get("artifacts", {})
        if verify:
            for relpath, entry in store.artifacts.items():
                path = store.root / relpath
                if not path.exists():
                    raise StoreValidationError(f"manifest entry missing on disk: {relpath}")
                if sha256_bytes(path.read_bytes()) != entry["sha256"]:
                    raise StoreValidationError(f"artifact hash mismatch: {relpath}")
        return store

    def read_text(self, relpath: str) -> str:
        if relpath not in self.artifacts:
            raise StoreValidationError(f"unknown artifact: {relpath}")
        return (self.root / relpath).read_text(encoding="utf-8")

    @property
    def slices(self) -> list[str]:
        return list(self.meta.get("slices", []))

    @property
    def subjects(self) -> list[str]:
        return list(self.meta.get("subjects", []))

    @property
    def anchor(self) -> str | None:
        return self.meta.get("anchor")
