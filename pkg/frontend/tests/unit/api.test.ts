import { describe, expect, it } from "vitest";

import { ApiClient, ApiError, DOCUMENTED_ENDPOINTS, buildUrl } from "../../src/api.js";

function recordingClient(body: unknown = { ok: true }, status = 200) {
  const urls: string[] = [];
  const client = new ApiClient("", async (url) => {
    urls.push(url);
    return new Response(JSON.stringify(body), {
      status,
      headers: { "content-type": "application/json" },
    });
  });
  return { client, urls };
}

describe("buildUrl", () => {
  it("encodes parameters and drops undefined ones", () => {
    const url = buildUrl("", "/api/tree", {
      subject: "lebron james",
      month: "2019-01",
      min_w: undefined,
    });
    expect(url).toBe("/api/tree?subject=lebron%20james&month=2019-01");
  });

  it("prefixes the base", () => {
    expect(buildUrl("http://x:1", "/api/subjects", { q: "" })).toBe(
      "http://x:1/api/subjects?q=",
    );
  });
});

describe("ApiClient", () => {
  it("every method stays on the documented endpoint list", async () => {
    const { client, urls } = recordingClient();
    await client.subjects("t");
    await client.tree({ subject: "t", month: "2019-01", min_w: 1, max_w: 9 });
    await client.verbRanking("t");
    await client.objectShares("t", 4);
    await client.neighbors("k", 5);
    await client.drift("k", 10, 5);
    await client.similarity("k", "w");
    await client.projection("k", 6);
    await client.coref("m");
    expect(urls).toHaveLength(9);
    for (const url of urls) {
      const path = url.split("?")[0]!;
      expect(DOCUMENTED_ENDPOINTS).toContain(path);
    }
  });

  it("surfaces the API error code", async () => {
    const { client } = recordingClient({ code: "UNKNOWN_WORD", message: "nope" }, 404);
    const error = await client.neighbors("zzz", 5).catch((e) => e);
    expect(error).toBeInstanceOf(ApiError);
    expect(error.code).toBe("UNKNOWN_WORD");
    expect(error.status).toBe(404);
  });

  it("handles non-JSON error bodies", async () => {
    const client = new ApiClient("", async () => new Response("boom", { status: 500 }));
    const error = await client.subjects("x").catch((e) => e);
    expect(error).toBeInstanceOf(ApiError);
    expect(error.code).toBe("HTTP_ERROR");
  });
});
