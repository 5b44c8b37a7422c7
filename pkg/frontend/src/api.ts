/** Typed client for the analytics API.
 *
 * Every request funnels through one helper that refuses paths outside the
 * documented endpoint list, so a network trace of the client can never show
 * an undocumented call.
 */
import type {
  CorefPayload,
  DriftPayload,
  NeighborsPayload,
  ProjectionPayload,
  RankingPayload,
  SharesPayload,
  SimilarityPayload,
  SubjectsPayload,
  TreePayload,
} from "./types.js";

export const DOCUMENTED_ENDPOINTS = [
  "/api/subjects",
  "/api/tree",
  "/api/verb-ranking",
  "/api/object-shares",
  "/api/neighbors",
  "/api/drift",
  "/api/similarity",
  "/api/projection",
  "/api/coref",
] as const;

export type EndpointPath = (typeof DOCUMENTED_ENDPOINTS)[number];

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

export type FetchLike = (url: string) => Promise<Response>;

export type Param = string | number | undefined;

export function buildUrl(base: string, path: EndpointPath, params: Record<string, Param>): string {
  const query = Object.entries(params)
    .filter(([, v]) => v !== undefined)
    .map(([k, v]) => `${encodeURIComponent(k)}=${encodeURIComponent(String(v))}`)
    .join("&");
  return `${base}${path}${query ? "?" + query : ""}`;
}

export interface TreeQuery {
  subject: string;
  month: string;
  min_w?: number;
  max_w?: number;
  object_threshold?: number;
  verb_threshold?: number;
}

export class ApiClient {
  constructor(
    private readonly base = "",
    private readonly fetchImpl: FetchLike = (url) => fetch(url),
  ) {}

  private async get<T>(path: EndpointPath, params: Record<string, Param>): Promise<T> {
    if (!DOCUMENTED_ENDPOINTS.includes(path)) {
      throw new Error(`undocumented endpoint: ${path}`);
    }
    const response = await this.fetchImpl(buildUrl(this.base, path, params));
    if (!response.ok) {
      let code = "HTTP_ERROR";
      let message = `${response.status}`;
      try {
        const body = (await response.json()) as { code?: string; message?: string };
        code = body.code ?? code;
        message = body.message ?? message;
      } catch {
        /* non-JSON error body */
      }
      throw new ApiError(response.status, code, message);
    }
    return (await response.json()) as T;
  }

  subjects(q: string): Promise<SubjectsPayload> {
    return this.get("/api/subjects", { q });
  }

  tree(query: TreeQuery): Promise<TreePayload> {
    return this.get("/api/tree", { ...query });
  }

  verbRanking(subject: string): Promise<RankingPayload> {
    return this.get("/api/verb-ranking", { subject });
  }

  objectShares(subject: string, k: number): Promise<SharesPayload> {
    return this.get("/api/object-shares", { subject, k });
  }

  neighbors(key: string, n: number): Promise<NeighborsPayload> {
    return this.get("/api/neighbors", { key, n });
  }

  drift(key: string, pool: number, top: number): Promise<DriftPayload> {
    return this.get("/api/drift", { key, pool, top });
  }

  similarity(key: string, word: string): Promise<SimilarityPayload> {
    return this.get("/api/similarity", { key, word });
  }

  projection(key: string, n: number): Promise<ProjectionPayload> {
    return this.get("/api/projection", { key, n });
  }

  coref(mention: string): Promise<CorefPayload> {
    return this.get("/api/coref", { mention });
  }
}
