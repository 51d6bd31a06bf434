/** Session controller: one browser tab, one session, at most one in-flight
 * request. The view model is rebuilt from the server on every step, so a page
 * reload (a fresh controller pointed at the stored session id) reproduces the
 * identical view. */

import { ApiClient } from './api.js';
import { isComplete, toProgress } from './types.js';
import type { NextPayload, SessionView, StatePayload } from './types.js';

const SESSION_KEY = 'learnext.session';

export class SessionController {
  private sessionId: string | null;
  private inFlight = false;
  private view: SessionView | null = null;

  constructor(
    private readonly api: ApiClient,
    private readonly storage: Pick<Storage, 'getItem' | 'setItem' | 'removeItem'>,
  ) {
    this.sessionId = storage.getItem(SESSION_KEY);
  }

  get currentView(): SessionView | null {
    return this.view;
  }

  get hasSession(): boolean {
    return this.sessionId !== null;
  }

  get busy(): boolean {
    return this.inFlight;
  }

  /** POST /sessions then fetch the first material. */
  async start(mode: string, m?: number): Promise<SessionView> {
    return this.guarded(async () => {
      const info = await this.api.createSession(mode, m);
      this.sessionId = info.session_id;
      this.storage.setItem(SESSION_KEY, info.session_id);
      return this.buildView();
    });
  }

  /** Rebuild the view for an existing session (page load / reload). */
  async refresh(): Promise<SessionView> {
    return this.guarded(() => this.buildView());
  }

  /** Answer the current material, then fetch the next one. Returns the
   * unchanged view when a request is already in flight (double-click guard)
   * or when there is nothing to answer. */
  async respond(understood: boolean): Promise<SessionView> {
    if (this.inFlight && this.view) return this.view;
    return this.guarded(async () => {
      const material = this.view?.material;
      if (!material) return this.buildView();
      await this.api.postResponse(this.requireSession(), material.material_id, understood);
      return this.buildView();
    });
  }

  endSession(): void {
    this.sessionId = null;
    this.view = null;
    this.storage.removeItem(SESSION_KEY);
  }

  private requireSession(): string {
    if (!this.sessionId) throw new Error('no active session');
    return this.sessionId;
  }

  private async guarded(action: () => Promise<SessionView>): Promise<SessionView> {
    if (this.inFlight && this.view) return this.view;
    this.inFlight = true;
    try {
      this.view = await action();
    } catch (err) {
      this.view = this.errorView(err instanceof Error ? err.message : String(err));
    } finally {
      this.inFlight = false;
    }
    return this.view;
  }

  /** One server round: GET next (idempotent while pending) + GET state. */
  private async buildView(): Promise<SessionView> {
    const sessionId = this.requireSession();
    const next: NextPayload = await this.api.getNext(sessionId);
    const state: StatePayload = await this.api.getState(sessionId);
    const progress = toProgress(state.counts, state.snapshot.presented.length);
    if (isComplete(next)) {
      return {
        sessionId,
        material: null,
        complete: true,
        progress,
        heuristic: null,
        error: null,
      };
    }
    return {
      sessionId,
      material: next,
      complete: false,
      progress,
      heuristic: next.heuristic,
      error: null,
    };
  }

  private errorView(message: string): SessionView {
    return {
      sessionId: this.sessionId ?? '',
      material: null,
      complete: false,
      progress: { presented: 0, solvable: 0, unsolvable: 0, unknown: 0, total: 0 },
      heuristic: null,
      error: message,
    };
  }
}
