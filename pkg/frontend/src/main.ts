/** DOM wiring: reads controls, drives the SessionController, and paints the
 * view model into the page. */

import { ApiClient, resolveBaseUrl } from './api.js';
import { SessionController } from './session.js';
import type { SessionView } from './types.js';
import {
  renderComplete,
  renderError,
  renderHeuristicBadge,
  renderMaterial,
  renderProgress,
} from './view.js';

const baseUrl = resolveBaseUrl(window.location, window.localStorage);
const api = new ApiClient(baseUrl);
const controller = new SessionController(api, window.sessionStorage);

const el = (id: string) => document.getElementById(id)!;

function paint(view: SessionView): void {
  const stage = el('stage');
  const answers = el('answers');
  el('progress').innerHTML = renderProgress(view.progress);
  el('heuristic').innerHTML = renderHeuristicBadge(view.heuristic);
  if (view.error) {
    stage.innerHTML = renderError(`service unreachable or failed: ${view.error}`);
    answers.classList.add('hidden');
    return;
  }
  if (view.complete) {
    stage.innerHTML = renderComplete(
      {
        unknown: view.progress.unknown,
        inferred_solvable: 0,
        inferred_unsolvable: 0,
        observed_solved: view.progress.solvable,
        observed_failed: view.progress.unsolvable,
      },
      view.progress.presented,
    );
    answers.classList.add('hidden');
    return;
  }
  if (view.material) {
    stage.innerHTML = renderMaterial(view.material);
    answers.classList.remove('hidden');
  }
}

function setBusy(busy: boolean): void {
  for (const id of ['btn-yes', 'btn-no', 'btn-start']) {
    (el(id) as HTMLButtonElement).disabled = busy;
  }
}

async function run(action: () => Promise<SessionView>): Promise<void> {
  setBusy(true);
  try {
    paint(await action());
  } finally {
    setBusy(false);
  }
}

el('btn-start').addEventListener('click', () => {
  const mode = (el('mode') as HTMLSelectElement).value;
  const m = parseInt((el('horizon') as HTMLInputElement).value, 10) || undefined;
  void run(() => controller.start(mode, m));
});
el('btn-yes').addEventListener('click', () => void run(() => controller.respond(true)));
el('btn-no').addEventListener('click', () => void run(() => controller.respond(false)));

el('api-url').textContent = baseUrl;

// a reload mid-session restores the pending material from the server
if (controller.hasSession) {
  void run(() => controller.refresh());
}
