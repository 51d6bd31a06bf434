/** Thin typed client for the session API. All selection logic stays on the
 * server; this module only moves JSON. */

import type {
  GraphStats,
  NextPayload,
  SessionInfo,
  StatePayload,
  StatusCounts,
} from './types.js';

export class ApiError extends Error {
  constructor(
    message: string,
    readonly status: number,
  ) {
    super(message);
  }
}

type FetchLike = typeof fetch;

export class ApiClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchFn: FetchLike = fetch,
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const resp = await this.fetchFn(`${this.baseUrl}${path}`, {
      method,
      headers: body === undefined ? undefined : { 'Content-Type': 'application/json' },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const text = await resp.text();
    let payload: unknown = null;
    try {
      payload = text ? JSON.parse(text) : null;
    } catch {
      // fall through; non-JSON bodies become plain errors below
    }
    if (!resp.ok) {
      const detail =
        payload && typeof payload === 'object' && 'detail' in payload
          ? String((payload as { detail: unknown }).detail)
          : `request failed with status ${resp.status}`;
      throw new ApiError(detail, resp.status);
    }
    return payload as T;
  }

  createSession(mode: string, m?: number, seed?: number): Promise<SessionInfo> {
    return this.request<SessionInfo>('POST', '/sessions', { mode, m, seed });
  }

  getNext(sessionId: string): Promise<NextPayload> {
    return this.request<NextPayload>('GET', `/sessions/${sessionId}/next`);
  }

  postResponse(
    sessionId: string,
    materialId: string,
    understood: boolean,
  ): Promise<{ counts: StatusCounts; n_presented: number }> {
    return this.request('POST', `/sessions/${sessionId}/response`, {
      material_id: materialId,
      understood,
    });
  }

  getState(sessionId: string): Promise<StatePayload> {
    return this.request<StatePayload>('GET', `/sessions/${sessionId}/state`);
  }

  graphStats(): Promise<GraphStats> {
    return this.request<GraphStats>('GET', '/graph/stats');
  }
}

/** Base URL resolution: ?api=... query param wins, else a saved setting,
 * else same-host port 8000. */
export function resolveBaseUrl(
  location: { search: string; hostname: string },
  storage: Pick<Storage, 'getItem' | 'setItem'>,
): string {
  const fromQuery = new URLSearchParams(location.search).get('api');
  if (fromQuery) {
    storage.setItem('learnext.api', fromQuery);
    return fromQuery;
  }
  return storage.getItem('learnext.api') ?? `http://${location.hostname || 'localhost'}:8000`;
}
