// Workbench state machine.
//
// All numbers shown in the UI originate from API responses; nothing is
// computed locally. Panel refreshes are sequence-numbered so a stale
// response can never overwrite a newer one, and the four scorecard
// requests commit in a single atomic state change.

import {
  ApiClient,
  ApiError,
  Assignment,
  AssociationsPayload,
  ColorInfo,
  Discriminability,
  DistanceReport,
  Predictions
} from './api.js';
import { DEFAULT_MODEL } from './presets.js';

export type Mode =
  | 'empty' // nothing loaded yet
  | 'loading'
  | 'ready' // dataset loaded, palette not scoreable (pair missing or < 2 colors)
  | 'scoring'
  | 'scored'
  | 'error';

// Reachability contract for the component tests: every mode must be
// reachable from 'empty' by following these edges.
export const TRANSITIONS: Record<Mode, Mode[]> = {
  empty: ['loading'],
  loading: ['ready', 'error'],
  ready: ['scoring', 'ready', 'error'],
  scoring: ['scored', 'ready', 'error'],
  scored: ['scoring', 'ready', 'error'],
  error: ['loading', 'ready', 'scoring']
};

export interface Scorecard {
  report: DistanceReport;
  assignment: Assignment;
  discriminability: Discriminability;
  predictions: Predictions;
}

export interface WorkbenchState {
  mode: Mode;
  colors: ColorInfo[];
  concepts: string[];
  associations: AssociationsPayload | null;
  conceptPair: [string, string] | null;
  palette: number[];
  model: string;
  scorecard: Scorecard | null;
  lastSwapNote: string | null;
  error: string | null;
  pending: { dataset: boolean; scorecard: boolean };
}

export function initialState(): WorkbenchState {
  return {
    mode: 'empty',
    colors: [],
    concepts: [],
    associations: null,
    conceptPair: null,
    palette: [],
    model: DEFAULT_MODEL,
    scorecard: null,
    lastSwapNote: null,
    error: null,
    pending: { dataset: false, scorecard: false }
  };
}

// structural subset so tests can pass a hand-rolled fake
export type WorkbenchApi = Pick<
  ApiClient,
  | 'colors'
  | 'concepts'
  | 'associations'
  | 'semanticDistance'
  | 'assign'
  | 'discriminability'
  | 'predict'
  | 'swap'
>;

export class Workbench {
  state: WorkbenchState = initialState();
  private seq = 0;

  constructor(
    private readonly api: WorkbenchApi,
    private readonly onChange: (s: WorkbenchState) => void = () => {}
  ) {}

  private commit(patch: Partial<WorkbenchState>): void {
    this.state = { ...this.state, ...patch };
    this.onChange(this.state);
  }

  async loadDataset(): Promise<void> {
    this.commit({ mode: 'loading', pending: { ...this.state.pending, dataset: true }, error: null });
    try {
      const [colors, concepts, associations] = await Promise.all([
        this.api.colors(),
        this.api.concepts(),
        this.api.associations()
      ]);
      this.commit({
        mode: 'ready',
        colors: colors.colors,
        concepts: concepts.concepts,
        associations,
        pending: { ...this.state.pending, dataset: false }
      });
    } catch (e) {
      this.fail(e);
    }
  }

  selectConcepts(a: string, b: string): Promise<void> {
    if (a === b) {
      this.commit({ error: 'pick two different concepts' });
      return Promise.resolve();
    }
    this.commit({ conceptPair: [a, b], lastSwapNote: null });
    return this.refresh();
  }

  setModel(model: string): Promise<void> {
    this.commit({ model });
    return this.refresh();
  }

  /** Click on a swatch: add if absent, remove if present. */
  toggleColor(id: number): Promise<void> {
    const palette = this.state.palette.includes(id)
      ? this.state.palette.filter((c) => c !== id)
      : [...this.state.palette, id];
    this.commit({ palette, lastSwapNote: null });
    return this.refresh();
  }

  setPalette(ids: number[]): Promise<void> {
    this.commit({ palette: [...ids], lastSwapNote: null });
    return this.refresh();
  }

  /** One round trip to the swap endpoint, then a scorecard refresh. */
  async swap(remove: number, add: number): Promise<void> {
    const pair = this.state.conceptPair;
    if (!pair) return;
    try {
      const score = await this.api.swap(pair, this.state.palette, remove, add);
      this.commit({
        palette: score.colors,
        lastSwapNote:
          `swapped ${remove} -> ${add}: mean dS ${score.mean_delta_s.toFixed(3)}, ` +
          `min dE ${score.min_delta_e.toFixed(3)}` +
          (score.feasible ? '' : ` (violations: ${score.violations.join('; ')})`)
      });
    } catch (e) {
      this.fail(e);
      return;
    }
    await this.refresh();
  }

  /** Re-query every scorecard panel; commits all four results at once. */
  async refresh(): Promise<void> {
    const pair = this.state.conceptPair;
    const palette = this.state.palette;
    if (!pair || palette.length < 2) {
      // not scoreable: show guidance, never stale numbers
      this.commit({ mode: this.state.colors.length ? 'ready' : 'empty', scorecard: null });
      return;
    }
    const mySeq = ++this.seq;
    this.commit({ mode: 'scoring', pending: { ...this.state.pending, scorecard: true } });
    try {
      const [report, assignment, discriminability, predictions] = await Promise.all([
        this.api.semanticDistance(pair, palette),
        this.api.assign(pair, palette),
        this.api.discriminability(pair, palette),
        this.api.predict(pair, palette, this.state.model)
      ]);
      if (mySeq !== this.seq) return; // a newer refresh superseded this one
      this.commit({
        mode: 'scored',
        scorecard: { report, assignment, discriminability, predictions },
        pending: { ...this.state.pending, scorecard: false },
        error: null
      });
    } catch (e) {
      if (mySeq !== this.seq) return;
      this.fail(e);
    }
  }

  private fail(e: unknown): void {
    const message = e instanceof ApiError ? `${e.code}: ${e.message}` : String(e);
    this.commit({
      mode: 'error',
      error: message,
      pending: { dataset: false, scorecard: false }
    });
  }
}
