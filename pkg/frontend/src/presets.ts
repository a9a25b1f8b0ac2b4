// Canned selections. The conflict demo pairs were frozen after scanning
// all 28 pairs of the second bundled experiment palette for extremes:
// (53, 44) is highly discriminable semantically yet perceptually close,
// (10, 48) is the reverse.

export interface Preset {
  label: string;
  concepts: [string, string];
  colors: number[];
}

export const PRESETS: Preset[] = [
  {
    label: 'Experiment palette 1',
    concepts: ['cantaloupe', 'strawberry'],
    colors: [58, 50, 39, 46, 8, 28, 32, 44]
  },
  {
    label: 'Experiment palette 2',
    concepts: ['mango', 'watermelon'],
    colors: [58, 53, 50, 49, 36, 10, 48, 44]
  },
  {
    label: 'Conflict demo',
    concepts: ['mango', 'watermelon'],
    colors: [53, 44, 10, 48]
  }
];

// pairs shown side by side in the conflict demo panel
export const CONFLICT_PAIRS: Array<[number, number]> = [
  [53, 44], // high semantic distance, low perceptual distance
  [10, 48] // low semantic distance, high perceptual distance
];

export const MODELS = ['Acc 1.1', 'Acc 1.2', 'Acc 2.1', 'Acc 2.2', 'Acc 1.A', 'Acc 2.A'];
export const DEFAULT_MODEL = 'Acc 2.2';
