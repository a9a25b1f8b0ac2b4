// Pure HTML renderers. Every function maps state to a string, which keeps
// the view testable without a browser; main.ts owns the DOM.

import { Assignment, ColorInfo, Discriminability, DistanceReport, Predictions } from './api.js';
import { fmt3, labTooltip, pct } from './format.js';
import { CONFLICT_PAIRS } from './presets.js';
import { WorkbenchState } from './state.js';

function esc(s: string): string {
  return s.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;').replace(/"/g, '&quot;');
}

export function renderErrorBanner(message: string): string {
  return `<div class="banner error" role="alert">${esc(message)}</div>`;
}

export function renderGuidance(state: WorkbenchState): string {
  if (!state.conceptPair) {
    return '<div class="guidance">Pick two concepts to start scoring a palette.</div>';
  }
  return `<div class="guidance">Select at least 2 colors (currently ${state.palette.length}) to see distances, assignment and predictions.</div>`;
}

export function renderSwatchGrid(state: WorkbenchState): string {
  const pair = state.conceptPair;
  const assoc = state.associations;
  const cells = state.colors
    .map((c) => {
      const selected = state.palette.includes(c.id);
      let badge = '';
      if (selected && pair && assoc) {
        // own-concept association values for the selected swatch
        const pos = assoc.color_ids.indexOf(c.id);
        const vals = pair
          .map((k) => `${esc(k)} ${fmt3(assoc.ratings[k]?.[pos] ?? NaN)}`)
          .join(', ');
        badge = `<span class="badge">${vals}</span>`;
      }
      return (
        `<button class="swatch${selected ? ' selected' : ''}" data-color="${c.id}" ` +
        `style="background:${c.hex}" title="${esc(labTooltip(c.lab, c.hex))}" ` +
        `aria-pressed="${selected}">` +
        `<span class="swatch-id">${c.id}</span>${badge}</button>`
      );
    })
    .join('');
  return `<div class="swatch-grid">${cells}</div>`;
}

function heatmap(title: string, ids: number[], matrix: number[][], colors: Map<number, ColorInfo>): string {
  const head = ids
    .map((id) => `<th><span class="chip" style="background:${colors.get(id)?.hex ?? '#fff'}"></span>${id}</th>`)
    .join('');
  const rows = ids
    .map((rid, i) => {
      const cells = ids
        .map((cid, j) => {
          if (i === j) return '<td class="diag">—</td>';
          const v = matrix[i]?.[j];
          return `<td data-pair="${rid},${cid}">${v === undefined ? '' : fmt3(v)}</td>`;
        })
        .join('');
      return `<tr><th><span class="chip" style="background:${colors.get(rid)?.hex ?? '#fff'}"></span>${rid}</th>${cells}</tr>`;
    })
    .join('');
  return (
    `<div class="heatmap"><h3>${esc(title)}</h3>` +
    `<table><thead><tr><th></th>${head}</tr></thead><tbody>${rows}</tbody></table></div>`
  );
}

export function renderHeatmaps(report: DistanceReport, colors: Map<number, ColorInfo>): string {
  return (
    heatmap('Semantic distance (dS)', report.color_ids, report.delta_s_matrix, colors) +
    heatmap('Perceptual distance (dE)', report.color_ids, report.delta_e_matrix, colors)
  );
}

export function renderAssignment(a: Assignment, colors: Map<number, ColorInfo>): string {
  const arrows = Object.entries(a.mapping)
    .map(([concept, id]) => {
      const conflict = a.local_conflicts.includes(concept);
      return (
        `<li class="${conflict ? 'conflict' : ''}">${esc(concept)} &rarr; ` +
        `<span class="chip" style="background:${colors.get(id)?.hex ?? '#fff'}"></span>${id}` +
        (conflict ? ' <em>(not its own favorite)</em>' : '') +
        '</li>'
      );
    })
    .join('');
  const notes = [
    `total merit ${fmt3(a.total_merit)}`,
    a.tie ? 'tie — multiple optimal mappings' : null
  ]
    .filter(Boolean)
    .join(' · ');
  return `<div class="assignment"><h3>Assignment</h3><ul>${arrows}</ul><p>${notes}</p></div>`;
}

export function renderDial(d: Discriminability): string {
  // a semicircular dial: index 0 (uniform) .. 1 (deterministic)
  const angle = -90 + d.index * 180;
  return (
    `<div class="dial"><h3>Discriminability</h3>` +
    `<svg viewBox="0 0 100 60" width="160"><path d="M10 50 A40 40 0 0 1 90 50" fill="none" stroke="#ccc" stroke-width="8"/>` +
    `<line x1="50" y1="50" x2="50" y2="14" stroke="#222" stroke-width="3" transform="rotate(${angle.toFixed(1)} 50 50)"/></svg>` +
    `<p><strong>${fmt3(d.index)}</strong> (entropy ${fmt3(d.entropy_nats)} nats, ${d.samples} samples, seed ${d.seed})</p>` +
    `</div>`
  );
}

export function renderPredictions(p: Predictions, colors: Map<number, ColorInfo>): string {
  const rows = p.rows
    .map(
      (r) =>
        `<tr><td>${esc(r.target)}</td>` +
        `<td><span class="chip" style="background:${colors.get(r.color_pair[0])?.hex ?? '#fff'}"></span>${r.color_pair[0]} / ` +
        `<span class="chip" style="background:${colors.get(r.color_pair[1])?.hex ?? '#fff'}"></span>${r.color_pair[1]}</td>` +
        `<td>${r.correct_color}</td>` +
        `<td data-acc="${r.target},${r.color_pair[0]},${r.color_pair[1]}">${fmt3(r.pred_accuracy)}</td></tr>`
    )
    .join('');
  return (
    `<div class="predictions"><h3>Predicted accuracy (${esc(p.model)})</h3>` +
    `<table><thead><tr><th>target</th><th>pair</th><th>correct</th><th>accuracy</th></tr></thead>` +
    `<tbody>${rows}</tbody></table></div>`
  );
}

export function renderConflictDemo(report: DistanceReport): string {
  const ids = report.color_ids;
  const cards = CONFLICT_PAIRS.map(([a, b]) => {
    const i = ids.indexOf(a);
    const j = ids.indexOf(b);
    if (i < 0 || j < 0) return '';
    const ds = report.delta_s_matrix[i]?.[j];
    const de = report.delta_e_matrix[i]?.[j];
    if (ds === undefined || de === undefined) return '';
    const kind = ds > 0.5 ? 'easy to decode, hard to tell apart' : 'easy to tell apart, hard to decode';
    return (
      `<div class="conflict-card"><h4>${a} vs ${b}</h4>` +
      `<p>dS <strong>${fmt3(ds)}</strong> · dE <strong>${fmt3(de)}</strong></p>` +
      `<p class="kind">${kind}</p></div>`
    );
  }).join('');
  return `<div class="conflict-demo"><h3>Semantic vs perceptual: independent axes</h3>${cards}</div>`;
}

export function renderDebugDrawer(state: WorkbenchState): string {
  if (!state.scorecard) return '';
  const { report, assignment, discriminability, predictions } = state.scorecard;
  const entries: Array<[string, unknown]> = [
    ['POST /v1/semantic-distance', report],
    ['POST /v1/assign', assignment],
    ['POST /v1/discriminability', discriminability],
    ['POST /v1/predict', { model: predictions.model, rows: predictions.rows }]
  ];
  const blocks = entries
    .map(([route, payload]) => `<details><summary>${esc(route)}</summary><pre>${esc(JSON.stringify(payload, null, 2))}</pre></details>`)
    .join('');
  return `<div class="debug-drawer"><h3>Debug: raw API payloads</h3>${blocks}</div>`;
}

export function renderScorecard(state: WorkbenchState): string {
  if (state.mode === 'error' && state.error) return renderErrorBanner(state.error);
  if (!state.scorecard) return renderGuidance(state);
  const colors = new Map(state.colors.map((c) => [c.id, c]));
  const { report, assignment, discriminability, predictions } = state.scorecard;
  const swapNote = state.lastSwapNote ? `<p class="swap-note">${esc(state.lastSwapNote)}</p>` : '';
  const demo = CONFLICT_PAIRS.every(([a, b]) => report.color_ids.includes(a) && report.color_ids.includes(b))
    ? renderConflictDemo(report)
    : '';
  return (
    swapNote +
    renderHeatmaps(report, colors) +
    renderAssignment(assignment, colors) +
    renderDial(discriminability) +
    renderPredictions(predictions, colors) +
    demo +
    renderDebugDrawer(state)
  );
}

export function renderApp(state: WorkbenchState): string {
  const pending = state.pending.dataset || state.pending.scorecard ? '<div class="spinner" aria-label="loading"></div>' : '';
  return (
    `<main>${pending}` +
    (state.mode === 'error' && !state.colors.length && state.error ? renderErrorBanner(state.error) : '') +
    renderSwatchGrid(state) +
    `<section class="scorecard">${renderScorecard(state)}</section>` +
    '</main>'
  );
}
