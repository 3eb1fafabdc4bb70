export type PlotKind =
  | 'convergence'
  | 'populations'
  | 'trace_dev'
  | 'positivity'
  | 'ce_probe';

export const PLOT_KINDS: PlotKind[] = [
  'convergence',
  'populations',
  'trace_dev',
  'positivity',
  'ce_probe',
];

export type AxisScale = 'linear' | 'log';

export interface PlotSpec {
  kind: PlotKind;
  /** CSV files to read, in series order. */
  inputs: string[];
  /** Where the SVG goes. */
  output: string;
  scales: { x: AxisScale; y: AxisScale };
  /** Overrides the derived series labels, in order; extras are ignored. */
  labels: string[];
}

export class PlotSpecError extends Error {}

const DEFAULT_SCALES: Record<PlotKind, { x: AxisScale; y: AxisScale }> = {
  convergence: { x: 'log', y: 'log' },
  populations: { x: 'linear', y: 'linear' },
  trace_dev: { x: 'linear', y: 'linear' },
  positivity: { x: 'linear', y: 'linear' },
  ce_probe: { x: 'log', y: 'log' },
};

function fail(path: string, message: string): never {
  throw new PlotSpecError(`${path}: ${message}`);
}

function asScale(value: unknown, path: string, fallback: AxisScale): AxisScale {
  if (value === undefined) return fallback;
  if (value === 'linear' || value === 'log') return value;
  fail(path, `expected "linear" or "log", got ${JSON.stringify(value)}`);
}

/** Validate a parsed plotspec document; errors name the offending field. */
export function parsePlotSpec(doc: unknown): PlotSpec {
  if (typeof doc !== 'object' || doc === null || Array.isArray(doc)) {
    fail('plotspec', 'expected a JSON object');
  }
  const obj = doc as Record<string, unknown>;
  for (const key of Object.keys(obj)) {
    if (!['kind', 'inputs', 'output', 'scales', 'labels'].includes(key)) {
      fail(key, 'unknown field');
    }
  }
  const kind = obj.kind;
  if (typeof kind !== 'string' || !PLOT_KINDS.includes(kind as PlotKind)) {
    fail('kind', `expected one of ${PLOT_KINDS.join(', ')}`);
  }
  const inputs = obj.inputs;
  if (!Array.isArray(inputs) || inputs.length === 0 || inputs.some((p) => typeof p !== 'string')) {
    fail('inputs', 'expected a non-empty list of CSV paths');
  }
  if (typeof obj.output !== 'string' || obj.output.length === 0) {
    fail('output', 'expected an output image path');
  }
  const fallback = DEFAULT_SCALES[kind as PlotKind];
  let scales = { ...fallback };
  if (obj.scales !== undefined) {
    if (typeof obj.scales !== 'object' || obj.scales === null || Array.isArray(obj.scales)) {
      fail('scales', 'expected an object with x and/or y');
    }
    const s = obj.scales as Record<string, unknown>;
    for (const key of Object.keys(s)) {
      if (key !== 'x' && key !== 'y') fail(`scales.${key}`, 'unknown field');
    }
    scales = {
      x: asScale(s.x, 'scales.x', fallback.x),
      y: asScale(s.y, 'scales.y', fallback.y),
    };
  }
  let labels: string[] = [];
  if (obj.labels !== undefined) {
    if (!Array.isArray(obj.labels) || obj.labels.some((l) => typeof l !== 'string')) {
      fail('labels', 'expected a list of strings');
    }
    labels = obj.labels as string[];
  }
  return { kind: kind as PlotKind, inputs: inputs as string[], output: obj.output, scales, labels };
}
