// Typed client for the local /v1 JSON API.
//
// Concurrent identical requests are deduplicated: callers issuing the same
// method+path+body while a request is in flight share one promise.

export interface ColorInfo {
  id: number;
  lab: [number, number, number];
  xyY: [number, number, number];
  lch: [number, number, number];
  hex: string;
  in_gamut: boolean;
}

export interface AssociationsPayload {
  concepts: string[];
  color_ids: number[];
  ratings: Record<string, number[]>;
}

export interface DistanceReport {
  concepts: string[];
  color_ids: number[];
  delta_s: number[]; // row-major lower triangle
  delta_e: number[];
  delta_s_matrix: number[][];
  delta_e_matrix: number[][];
}

export interface Assignment {
  merit_kind: 'isolated' | 'balanced';
  mapping: Record<string, number>;
  total_merit: number;
  tie: boolean;
  local_conflicts: string[];
}

export interface Discriminability {
  samples: number;
  seed: number;
  rng: string;
  outcomes: Array<{ mapping: Record<string, number>; p: number }>;
  entropy_nats: number;
  index: number;
}

export interface PredictionRow {
  target: string;
  color_pair: [number, number];
  correct_color: number;
  delta_s: number;
  delta_e: number;
  assoc: number;
  tie: boolean;
  pred_accuracy: number;
  pred_rt_ms: number | null;
}

export interface Predictions {
  model: string;
  rt_model: string | null;
  rows: PredictionRow[];
  csv: string;
}

export interface PaletteScore {
  concepts: string[];
  colors: number[];
  min_delta_s: number;
  mean_delta_s: number;
  min_delta_e: number;
  feasible: boolean;
  violations: string[];
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string
  ) {
    super(message);
    this.name = 'ApiError';
  }
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  private inFlight = new Map<string, Promise<unknown>>();
  requestLog: string[] = [];

  constructor(
    private readonly base = '',
    private readonly fetchFn: FetchLike = (...args) => fetch(...args)
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const key = `${method} ${path} ${body === undefined ? '' : JSON.stringify(body)}`;
    const pending = this.inFlight.get(key);
    if (pending) return pending as Promise<T>;

    const run = (async () => {
      this.requestLog.push(key);
      const res = await this.fetchFn(this.base + path, {
        method,
        headers: body === undefined ? undefined : { 'content-type': 'application/json' },
        body: body === undefined ? undefined : JSON.stringify(body)
      });
      const payload = await res.json();
      if (!res.ok) {
        const err = (payload as { error?: { code?: string; message?: string } }).error;
        throw new ApiError(res.status, err?.code ?? 'unknown', err?.message ?? res.statusText);
      }
      return payload as T;
    })().finally(() => this.inFlight.delete(key));

    this.inFlight.set(key, run);
    return run;
  }

  colors(): Promise<{ colors: ColorInfo[] }> {
    return this.request('GET', '/v1/colors');
  }

  concepts(): Promise<{ concepts: string[] }> {
    return this.request('GET', '/v1/concepts');
  }

  associations(): Promise<AssociationsPayload> {
    return this.request('GET', '/v1/associations');
  }

  semanticDistance(concepts: string[], colors: number[]): Promise<DistanceReport> {
    return this.request('POST', '/v1/semantic-distance', { concepts, colors });
  }

  assign(concepts: string[], colors: number[]): Promise<Assignment> {
    return this.request('POST', '/v1/assign', { concepts, colors });
  }

  discriminability(
    concepts: string[],
    colors: number[],
    samples = 50000,
    seed = 0
  ): Promise<Discriminability> {
    return this.request('POST', '/v1/discriminability', { concepts, colors, samples, seed });
  }

  predict(concepts: string[], colors: number[], model: string): Promise<Predictions> {
    return this.request('POST', '/v1/predict', { concepts, colors, model });
  }

  swap(
    concepts: string[],
    colors: number[],
    remove: number,
    add: number
  ): Promise<PaletteScore> {
    return this.request('POST', '/v1/palette/swap', { concepts, colors, remove, add });
  }
}
