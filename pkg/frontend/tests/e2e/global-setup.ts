/** Build a fixture store with the real pipeline and serve it for the e2e
 * suite; tests receive the base URL through vitest's provide/inject.
 */
import { execFileSync, spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join, resolve } from "node:path";
import type { TestProject } from "vitest/node";

const REPO_ROOT = resolve(__dirname, "..", "..", "..");
const PORT = 8931;

declare module "vitest" {
  export interface ProvidedContext {
    baseUrl: string;
  }
}

async function waitForReady(base: string, child: ChildProcess): Promise<void> {
  const deadline = Date.now() + 120_000;
  let lastError: unknown = null;
  while (Date.now() < deadline) {
    if (child.exitCode !== null) {
      throw new Error(`server exited early with code ${child.exitCode}`);
    }
    try {
      const r = await fetch(`${base}/api/subjects?q=`);
      if (r.ok) return;
    } catch (error) {
      lastError = error;
    }
    await new Promise((resolveSleep) => setTimeout(resolveSleep, 300));
  }
  throw new Error(`server never became ready: ${lastError}`);
}

export default async function setup(project: TestProject): Promise<() => Promise<void>> {
  const work = mkdtempSync(join(tmpdir(), "newstrend-e2e-"));
  const storeDir = join(work, "store");
  const configPath = join(work, "pipeline.yaml");
  const fixtureConfig = join(REPO_ROOT, "tests", "fixtures", "pipeline.yaml");
  const corpus = join(REPO_ROOT, "tests", "fixtures", "corpus.jsonl");

  const { readFileSync } = await import("node:fs");
  const config = readFileSync(fixtureConfig, "utf-8")
    .replace("corpus: corpus.jsonl", `corpus: ${corpus}`)
    .replace("store: store-out", `store: ${storeDir}`);
  writeFileSync(configPath, config);

  execFileSync("newstrend", ["--config", configPath, "pipeline"], { stdio: "inherit" });

  const child = spawn(
    "newstrend",
    ["serve", "--store", storeDir, "--port", String(PORT)],
    { stdio: ["ignore", "inherit", "inherit"] },
  );
  const base = `http://127.0.0.1:${PORT}`;
  await waitForReady(base, child);
  project.provide("baseUrl", base);

  return async () => {
    child.kill("SIGTERM");
    await new Promise((resolveExit) => {
      child.once("exit", resolveExit);
      setTimeout(resolveExit, 3000);
    });
  };
}
