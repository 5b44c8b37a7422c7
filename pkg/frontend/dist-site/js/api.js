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
];
export class ApiError extends Error {
    status;
    code;
    constructor(status, code, message) {
        super(message);
        this.status = status;
        this.code = code;
    }
}
export function buildUrl(base, path, params) {
    const query = Object.entries(params)
        .filter(([, v]) => v !== undefined)
        .map(([k, v]) => `${encodeURIComponent(k)}=${encodeURIComponent(String(v))}`)
        .join("&");
    return `${base}${path}${query ? "?" + query : ""}`;
}
export class ApiClient {
    base;
    fetchImpl;
    constructor(base = "", fetchImpl = (url) => fetch(url)) {
        this.base = base;
        this.fetchImpl = fetchImpl;
    }
    async get(path, params) {
        if (!DOCUMENTED_ENDPOINTS.includes(path)) {
            throw new Error(`undocumented endpoint: ${path}`);
        }
        const response = await this.fetchImpl(buildUrl(this.base, path, params));
        if (!response.ok) {
            let code = "HTTP_ERROR";
            let message = `${response.status}`;
            try {
                const body = (await response.json());
                code = body.code ?? code;
                message = body.message ?? message;
            }
            catch {
                /* non-JSON error body */
            }
            throw new ApiError(response.status, code, message);
        }
        return (await response.json());
    }
    subjects(q) {
        return this.get("/api/subjects", { q });
    }
    tree(query) {
        return this.get("/api/tree", { ...query });
    }
    verbRanking(subject) {
        return this.get("/api/verb-ranking", { subject });
    }
    objectShares(subject, k) {
        return this.get("/api/object-shares", { subject, k });
    }
    neighbors(key, n) {
        return this.get("/api/neighbors", { key, n });
    }
    drift(key, pool, top) {
        return this.get("/api/drift", { key, pool, top });
    }
    similarity(key, word) {
        return this.get("/api/similarity", { key, word });
    }
    projection(key, n) {
        return this.get("/api/projection", { key, n });
    }
    coref(mention) {
        return this.get("/api/coref", { mention });
    }
}
