/** Payload shapes of the read-only analytics API. */

export interface GraphNode {
  id: string;
  label: string;
  weight: number;
  kind: "subject" | "verb" | "object";
}

export interface GraphEdge {
  source: string;
  target: string;
  weight: number;
}

export interface TreePayload {
  subject: string;
  month?: string;
  nodes: GraphNode[];
  edges: GraphEdge[];
}

export interface RankedVerb {
  verb: string;
  weight: number;
  main_object: string | null;
}

export interface RankingPayload {
  subject: string;
  months: Record<string, RankedVerb[]>;
}

export interface ShareEntry {
  object: string;
  share: number;
}

export interface SharesPayload {
  subject: string;
  months: Record<string, ShareEntry[]>;
}

export interface NeighborEntry {
  word: string;
  cosine: number;
}

export interface NeighborsPayload {
  key: string;
  n: number;
  slices: Record<string, NeighborEntry[]>;
}

export interface DriftCandidate {
  word: string;
  drift: number;
}

export interface DriftPayload {
  key: string;
  slices: string[];
  candidates: DriftCandidate[];
  series: Record<string, number[]>;
}

export interface SimilarityPayload {
  key: string;
  word: string;
  slices: string[];
  values: (number | null)[];
}

export interface ProjectionPoint {
  label: string;
  x: number;
  y: number;
}

export interface ProjectionPayload {
  key: string;
  points: ProjectionPoint[];
  params: Record<string, unknown>;
}

export interface CorefPayload {
  mention: string;
  cluster_id: number;
  center: string;
  members: string[];
}

export interface SubjectsPayload {
  subjects: string[];
}
