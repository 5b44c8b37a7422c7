/** Explorer view state and the ranges the API will accept. */
export const DEFAULT_STATE = {
    subject: "",
    month: "",
    months: [],
    objectThreshold: 0.7,
    verbThreshold: 0.6,
    minWeight: 1,
    maxWeight: 1000,
    keyWord: "",
};
const clamp = (value, lo, hi) => Math.min(hi, Math.max(lo, value));
export function clampObjectThreshold(value) {
    return clamp(value, 0, 1);
}
export function clampVerbThreshold(value) {
    return clamp(value, -1, 1);
}
export function clampWeights(min, max) {
    const lo = Math.max(0, Math.floor(min));
    const hi = Math.max(lo, Math.floor(max));
    return [lo, hi];
}
/** Hands out request tokens; only the most recent one may commit results,
 * so slow responses from superseded requests are discarded. */
export class LatestOnly {
    counter = 0;
    begin() {
        return ++this.counter;
    }
    isCurrent(token) {
        return token === this.counter;
    }
}
