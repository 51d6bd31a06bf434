/** Pure HTML renderers. Each takes view-model data and returns a markup
 * string, so they are testable without a DOM. */

import type { MaterialPayload, Progress, StatusCounts } from './types.js';

export function escapeHtml(raw: string): string {
  return raw
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;')
    .replace(/'/g, '&#39;');
}

export function renderHeuristicBadge(heuristic: string | null): string {
  if (!heuristic) return '';
  const label = heuristic === 'assessment' ? 'assessment turn' : `${heuristic} turn`;
  return `<span class="badge badge-${escapeHtml(heuristic)}">${escapeHtml(label)}</span>`;
}

/** The material card: text is shown highlighted against the dimmed page
 * frame; audio/video show rate and subtitle badges plus a link out. */
export function renderMaterial(material: MaterialPayload): string {
  const media = escapeHtml(material.media);
  const title = escapeHtml(material.title);
  let badges = `<span class="badge badge-media">${media}</span>`;
  if (material.speaking_rate !== undefined) {
    badges += `<span class="badge">${material.speaking_rate.toFixed(1)} moras/s</span>`;
  }
  if (material.media === 'video') {
    badges += `<span class="badge">${material.subtitles ? 'subtitles' : 'no subtitles'}</span>`;
  }
  let body: string;
  if (material.media === 'text') {
    body = `<p class="material-text">${escapeHtml(material.content)}</p>`;
  } else if (material.content) {
    const href = escapeHtml(material.content);
    body = `<p><a href="${href}" target="_blank" rel="noopener">open ${media}</a></p>`;
  } else {
    body = `<p class="placeholder">no content available for this ${media}</p>`;
  }
  return `
    <div class="material" data-material-id="${escapeHtml(material.material_id)}">
      <h2>${title}</h2>
      <div class="badges">${badges}</div>
      ${body}
    </div>`;
}

export function renderProgress(progress: Progress): string {
  const pct = (n: number) => (progress.total ? (100 * n) / progress.total : 0);
  return `
    <div class="progress" title="${progress.presented} presented">
      <div class="bar bar-solvable" style="width:${pct(progress.solvable)}%"></div>
      <div class="bar bar-unsolvable" style="width:${pct(progress.unsolvable)}%"></div>
    </div>
    <p class="progress-text">
      ${progress.presented} presented &middot;
      ${progress.solvable} solvable &middot;
      ${progress.unsolvable} unsolvable &middot;
      ${progress.unknown} unknown
    </p>`;
}

export function renderComplete(counts: StatusCounts, presented: number): string {
  return `
    <div class="complete">
      <h2>Session complete</h2>
      <p>You responded to ${presented} materials.</p>
      <p>
        ${counts.observed_solved + counts.inferred_solvable} classified solvable,
        ${counts.observed_failed + counts.inferred_unsolvable} classified unsolvable.
      </p>
    </div>`;
}

export function renderError(message: string): string {
  return `<div class="error-banner">${escapeHtml(message)}</div>`;
}
