/** Explorer view state and the ranges the API will accept. */

export interface ViewState {
  subject: string;
  month: string;
  months: string[];
  objectThreshold: number;
  verbThreshold: number;
  minWeight: number;
  maxWeight: number;
  keyWord: string;
}

export const DEFAULT_STATE: ViewState = {
  subject: "",
  month: "",
  months: [],
  objectThreshold: 0.7,
  verbThreshold: 0.6,
  minWeight: 1,
  maxWeight: 1000,
  keyWord: "",
};

const clamp = (value: number, lo: number, hi: number) =>
  Math.min(hi, Math.max(lo, value));

export function clampObjectThreshold(value: number): number {
  return clamp(value, 0, 1);
}

export function clampVerbThreshold(value: number): number {
  return clamp(value, -1, 1);
}

export function clampWeights(min: number, max: number): [number, number] {
  const lo = Math.max(0, Math.floor(min));
  const hi = Math.max(lo, Math.floor(max));
  return [lo, hi];
}

/** Hands out request tokens; only the most recent one may commit results,
 * so slow responses from superseded requests are discarded. */
export class LatestOnly {
  private counter = 0;

  begin(): number {
    return ++this.counter;
  }

  isCurrent(token: number): boolean {
    return token === this.counter;
  }
}
