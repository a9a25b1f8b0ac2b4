import { describe, expect, it } from 'vitest';

import { Mode, TRANSITIONS, Workbench, initialState } from '../src/state.js';
import { FakeApi } from './fakes.js';

async function readyBench(api = new FakeApi()) {
  const bench = new Workbench(api);
  await bench.loadDataset();
  return { bench, api };
}

describe('state machine shape', () => {
  it('reaches every declared mode from the initial one', () => {
    const seen = new Set<Mode>(['empty']);
    const queue: Mode[] = ['empty'];
    while (queue.length) {
      const mode = queue.shift()!;
      for (const next of TRANSITIONS[mode]) {
        if (!seen.has(next)) {
          seen.add(next);
          queue.push(next);
        }
      }
    }
    expect([...seen].sort()).toEqual((Object.keys(TRANSITIONS) as Mode[]).sort());
  });

  it('starts empty with no pending work', () => {
    const s = initialState();
    expect(s.mode).toBe('empty');
    expect(s.pending).toEqual({ dataset: false, scorecard: false });
    expect(s.scorecard).toBeNull();
  });
});

describe('dataset loading', () => {
  it('snapshots colors, concepts and associations', async () => {
    const { bench } = await readyBench();
    expect(bench.state.mode).toBe('ready');
    expect(bench.state.colors).toHaveLength(58);
    expect(bench.state.concepts).toContain('mango');
    expect(bench.state.associations?.ratings['mango']).toHaveLength(58);
  });

  it('surfaces API failures as an error state, not a throw', async () => {
    const api = new FakeApi({ failWith: new Error('connection refused') });
    const bench = new Workbench(api);
    await bench.loadDataset();
    expect(bench.state.mode).toBe('error');
    expect(bench.state.error).toContain('connection refused');
  });
});

describe('palette editing', () => {
  it('needs a concept pair and two colors before scoring', async () => {
    const { bench } = await readyBench();
    await bench.toggleColor(1);
    expect(bench.state.mode).toBe('ready');
    expect(bench.state.scorecard).toBeNull();

    await bench.selectConcepts('mango', 'watermelon');
    expect(bench.state.scorecard).toBeNull(); // still one color

    await bench.toggleColor(2);
    expect(bench.state.mode).toBe('scored');
    expect(bench.state.scorecard?.report.color_ids).toEqual([1, 2]);
  });

  it('toggling a selected swatch removes it and drops stale numbers', async () => {
    const { bench } = await readyBench();
    await bench.selectConcepts('mango', 'watermelon');
    await bench.setPalette([1, 2]);
    expect(bench.state.scorecard).not.toBeNull();

    await bench.toggleColor(2);
    expect(bench.state.palette).toEqual([1]);
    expect(bench.state.scorecard).toBeNull(); // guidance, not stale data
  });

  it('rejects identical concepts', async () => {
    const { bench } = await readyBench();
    await bench.selectConcepts('mango', 'mango');
    expect(bench.state.conceptPair).toBeNull();
    expect(bench.state.error).toMatch(/different concepts/);
  });
});

describe('scorecard refresh', () => {
  it('commits all four panels atomically', async () => {
    const states: Array<boolean> = [];
    const api = new FakeApi();
    const bench = new Workbench(api, (s) => states.push(s.scorecard !== null));
    await bench.loadDataset();
    await bench.selectConcepts('mango', 'watermelon');
    await bench.setPalette([1, 2, 3]);
    // scorecard flips from null to populated exactly once per refresh; no
    // intermediate state ever exposes a partial panel
    const scorecard = bench.state.scorecard!;
    expect(scorecard.report).toBeDefined();
    expect(scorecard.assignment).toBeDefined();
    expect(scorecard.discriminability).toBeDefined();
    expect(scorecard.predictions).toBeDefined();
    expect(states.filter(Boolean).length).toBeGreaterThan(0);
  });

  it('discards stale responses by sequence number', async () => {
    const api = new FakeApi({ delayMs: 20 });
    const bench = new Workbench(api);
    await bench.loadDataset();
    bench.state = { ...bench.state, conceptPair: ['mango', 'watermelon'] };

    const first = bench.setPalette([1, 2]); // slow, will be superseded
    const second = bench.setPalette([1, 2, 3]);
    await Promise.all([first, second]);
    expect(bench.state.scorecard?.report.color_ids).toEqual([1, 2, 3]);
  });
});

describe('swap', () => {
  it('issues exactly one swap request and updates the palette', async () => {
    const api = new FakeApi();
    const bench = new Workbench(api);
    await bench.loadDataset();
    await bench.selectConcepts('mango', 'watermelon');
    await bench.setPalette([1, 2, 3, 4]);

    await bench.swap(4, 9);
    expect(api.swapCalls).toBe(1);
    expect(bench.state.palette).toEqual([1, 2, 3, 9]);
    expect(bench.state.lastSwapNote).toContain('4 -> 9');
    expect(bench.state.scorecard?.report.color_ids).toEqual([1, 2, 3, 9]);
  });
});
