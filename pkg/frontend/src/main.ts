// DOM bootstrap: wires the controls, delegates swatch clicks, and
// re-renders on every state change.

import { ApiClient } from './api.js';
import { renderApp } from './render.js';
import { MODELS, PRESETS } from './presets.js';
import { Workbench } from './state.js';

const api = new ApiClient('');
const root = document.getElementById('app')!;
const controls = document.getElementById('controls')!;

const bench = new Workbench(api, (state) => {
  root.innerHTML = renderApp(state);
});

function conceptSelect(id: string, concepts: string[], value: string): string {
  const opts = concepts.map((c) => `<option${c === value ? ' selected' : ''}>${c}</option>`).join('');
  return `<select id="${id}">${opts}</select>`;
}

function renderControls(): void {
  const s = bench.state;
  const presetButtons = PRESETS.map(
    (p, i) => `<button data-preset="${i}">${p.label}</button>`
  ).join('');
  const modelOpts = MODELS.map(
    (m) => `<option${m === s.model ? ' selected' : ''}>${m}</option>`
  ).join('');
  controls.innerHTML =
    (s.concepts.length
      ? `concepts: ${conceptSelect('concept-a', s.concepts, s.conceptPair?.[0] ?? s.concepts[0]!)} vs ` +
        `${conceptSelect('concept-b', s.concepts, s.conceptPair?.[1] ?? s.concepts[1]!)} ` +
        `<button id="apply-concepts">apply</button> · model <select id="model">${modelOpts}</select> · ${presetButtons}`
      : '') +
    ` <span id="swap-controls">swap <input id="swap-remove" size="3" placeholder="out"> for <input id="swap-add" size="3" placeholder="in"> <button id="do-swap">go</button></span>`;
}

controls.addEventListener('click', (ev) => {
  const target = ev.target as HTMLElement;
  if (target.id === 'apply-concepts') {
    const a = (document.getElementById('concept-a') as HTMLSelectElement).value;
    const b = (document.getElementById('concept-b') as HTMLSelectElement).value;
    void bench.selectConcepts(a, b);
  } else if (target.dataset.preset !== undefined) {
    const preset = PRESETS[Number(target.dataset.preset)];
    if (preset) {
      void bench
        .selectConcepts(preset.concepts[0], preset.concepts[1])
        .then(() => bench.setPalette(preset.colors));
    }
  } else if (target.id === 'do-swap') {
    const remove = Number((document.getElementById('swap-remove') as HTMLInputElement).value);
    const add = Number((document.getElementById('swap-add') as HTMLInputElement).value);
    if (Number.isInteger(remove) && Number.isInteger(add)) void bench.swap(remove, add);
  }
});

controls.addEventListener('change', (ev) => {
  const target = ev.target as HTMLElement;
  if (target.id === 'model') {
    void bench.setModel((target as HTMLSelectElement).value);
  }
});

root.addEventListener('click', (ev) => {
  const swatch = (ev.target as HTMLElement).closest<HTMLElement>('[data-color]');
  if (swatch) void bench.toggleColor(Number(swatch.dataset.color));
});

void bench.loadDataset().then(renderControls);
