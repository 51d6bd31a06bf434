/** Payload shapes of the session API and the view model rendered from them. */

export interface MaterialPayload {
  material_id: string;
  title: string;
  content: string;
  media: 'text' | 'audio' | 'video';
  heuristic: string | null;
  speaking_rate?: number;
  subtitles?: boolean;
}

export interface CompletePayload {
  complete: true;
  summary: { counts: StatusCounts; n_presented: number };
}

export type NextPayload = MaterialPayload | CompletePayload;

export interface StatusCounts {
  unknown: number;
  inferred_solvable: number;
  inferred_unsolvable: number;
  observed_solved: number;
  observed_failed: number;
}

export interface SessionInfo {
  session_id: string;
  mode: string;
  m: number;
  seed: number;
}

export interface StatePayload {
  session_id: string;
  mode: string;
  m: number;
  seed: number;
  pending: string | null;
  counts: StatusCounts;
  contradictions: number;
  snapshot: {
    statuses: Record<string, string>;
    n_pos: number;
    n_neg: number;
    presented: string[];
  };
}

export interface GraphStats {
  alpha: number;
  nodes: number;
  edges: number;
  classes: number;
}

export interface Progress {
  presented: number;
  solvable: number;
  unsolvable: number;
  unknown: number;
  total: number;
}

/** Everything the page renders for one session turn. */
export interface SessionView {
  sessionId: string;
  material: MaterialPayload | null;
  complete: boolean;
  progress: Progress;
  heuristic: string | null;
  error: string | null;
}

export function isComplete(payload: NextPayload): payload is CompletePayload {
  return (payload as CompletePayload).complete === true;
}

export function toProgress(counts: StatusCounts, presented: number): Progress {
  const solvable = counts.observed_solved + counts.inferred_solvable;
  const unsolvable = counts.observed_failed + counts.inferred_unsolvable;
  return {
    presented,
    solvable,
    unsolvable,
    unknown: counts.unknown,
    total: solvable + unsolvable + counts.unknown,
  };
}
