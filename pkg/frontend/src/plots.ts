import { EmptyInputError, MissingColumnError, Table, num, requireColumns } from './csv';
import { AxisScale, PlotSpec } from './types';

export interface Point {
  x: number;
  y: number;
}

export interface Series {
  label: string;
  points: Point[];
}

export interface Guide {
  label: string;
  from: Point;
  to: Point;
}

/**
 * Everything the SVG layer needs, with coordinates already in plot
 * space: on a log axis the values are base-10 logs and the renderer
 * labels the ticks as powers of ten.
 */
export interface Scene {
  xLabel: string;
  yLabel: string;
  xScale: AxisScale;
  yScale: AxisScale;
  series: Series[];
  guides: Guide[];
}

function stem(file: string): string {
  const base = file.split('/').pop() ?? file;
  return base.replace(/\.csv$/, '');
}

function toScale(value: number, scale: AxisScale, file: string): number {
  if (scale !== 'log') return value;
  if (value <= 0) {
    throw new Error(`${file}: log axis needs positive values, got ${value}`);
  }
  return Math.log10(value);
}

function applyLabels(series: Series[], labels: string[]): Series[] {
  return series.map((s, i) => (i < labels.length ? { ...s, label: labels[i] } : s));
}

function buildConvergence(spec: PlotSpec, tables: Table[]): Scene {
  // On the default log axes the points are read straight from the
  // summary's log10_* columns, so a slope fitted from the figure is
  // the same sequence of doubles the harness fitted.
  const xCol = spec.scales.x === 'log' ? 'log10_tau' : 'tau';
  const yCol = spec.scales.y === 'log' ? 'log10_error' : 'error';
  const series: Series[] = [];
  for (const table of tables) {
    requireColumns(table, ['scheme', xCol, yCol]);
    const sweepCols = table.columns.slice(0, table.columns.indexOf('scheme'));
    const byKey = new Map<string, Series>();
    for (const row of table.rows) {
      const x = num(row, xCol);
      const y = num(row, yCol);
      if (x === null || y === null) continue;
      const parts = sweepCols.map((c) => `${c}=${row[c]}`);
      parts.push(String(row.scheme));
      if (tables.length > 1) parts.unshift(stem(table.file));
      const key = parts.join(' ');
      let s = byKey.get(key);
      if (!s) {
        s = { label: key, points: [] };
        byKey.set(key, s);
        series.push(s);
      }
      s.points.push({ x, y });
    }
  }
  if (series.length === 0) {
    throw new EmptyInputError(tables[0].file, 'no plottable rows');
  }
  const guides: Guide[] = [];
  if (spec.scales.x === 'log' && spec.scales.y === 'log') {
    // first-order reference: slope-1 line sitting just below the data
    const points = series.flatMap((s) => s.points);
    const xs = points.map((p) => p.x);
    const xMin = Math.min(...xs);
    const xMax = Math.max(...xs);
    const offset = Math.min(...points.map((p) => p.y - p.x)) - 0.15;
    guides.push({
      label: 'slope 1',
      from: { x: xMin, y: xMin + offset },
      to: { x: xMax, y: xMax + offset },
    });
  }
  return {
    xLabel: 'step size',
    yLabel: 'relative error',
    xScale: spec.scales.x,
    yScale: spec.scales.y,
    series: applyLabels(series, spec.labels),
    guides,
  };
}

function buildStepTraces(
  spec: PlotSpec,
  tables: Table[],
  column: string,
  yLabel: string,
): Scene {
  const series: Series[] = [];
  for (const table of tables) {
    requireColumns(table, ['time', column]);
    const points: Point[] = [];
    for (const row of table.rows) {
      const x = num(row, 'time');
      const y = num(row, column);
      if (x === null || y === null) continue;
      points.push({
        x: toScale(x, spec.scales.x, table.file),
        y: toScale(y, spec.scales.y, table.file),
      });
    }
    if (points.length > 0) series.push({ label: stem(table.file), points });
  }
  if (series.length === 0) {
    throw new EmptyInputError(tables[0].file, 'no plottable rows');
  }
  return {
    xLabel: 'time',
    yLabel,
    xScale: spec.scales.x,
    yScale: spec.scales.y,
    series: applyLabels(series, spec.labels),
    guides: [],
  };
}

function buildPopulations(spec: PlotSpec, tables: Table[]): Scene {
  const series: Series[] = [];
  for (const table of tables) {
    requireColumns(table, ['time']);
    const popCols = table.columns.filter((c) => c.startsWith('pop_'));
    if (popCols.length === 0) {
      throw new MissingColumnError(table.file, 'pop_*');
    }
    for (const column of popCols) {
      const points: Point[] = [];
      for (const row of table.rows) {
        const x = num(row, 'time');
        const y = num(row, column);
        if (x === null || y === null) continue;
        points.push({
          x: toScale(x, spec.scales.x, table.file),
          y: toScale(y, spec.scales.y, table.file),
        });
      }
      if (points.length === 0) continue;
      const label = tables.length > 1 ? `${stem(table.file)} ${column}` : column;
      series.push({ label, points });
    }
  }
  if (series.length === 0) {
    throw new EmptyInputError(tables[0].file, 'no plottable rows');
  }
  return {
    xLabel: 'time',
    yLabel: 'population',
    xScale: spec.scales.x,
    yScale: spec.scales.y,
    series: applyLabels(series, spec.labels),
    guides: [],
  };
}

function buildCeProbe(spec: PlotSpec, tables: Table[]): Scene {
  const series: Series[] = [];
  for (const table of tables) {
    requireColumns(table, ['tau', 'tol', 'ce']);
    const byTol = new Map<number, Series>();
    for (const row of table.rows) {
      const tau = num(row, 'tau');
      const tol = num(row, 'tol');
      const ce = num(row, 'ce');
      if (tau === null || tol === null || ce === null) continue;
      let s = byTol.get(tol);
      if (!s) {
        const prefix = tables.length > 1 ? `${stem(table.file)} ` : '';
        s = { label: `${prefix}tol ${tol.toExponential()}`, points: [] };
        byTol.set(tol, s);
        series.push(s);
      }
      s.points.push({
        x: toScale(tau, spec.scales.x, table.file),
        y: toScale(ce, spec.scales.y, table.file),
      });
    }
  }
  if (series.length === 0) {
    throw new EmptyInputError(tables[0].file, 'no plottable rows');
  }
  return {
    xLabel: 'step size',
    yLabel: 'cost constant',
    xScale: spec.scales.x,
    yScale: spec.scales.y,
    series: applyLabels(series, spec.labels),
    guides: [],
  };
}

export function buildScene(spec: PlotSpec, tables: Table[]): Scene {
  switch (spec.kind) {
    case 'convergence':
      return buildConvergence(spec, tables);
    case 'populations':
      return buildPopulations(spec, tables);
    case 'trace_dev':
      return buildStepTraces(spec, tables, 'trace_deviation', 'trace deviation');
    case 'positivity':
      return buildStepTraces(spec, tables, 'min_eig', 'smallest eigenvalue');
    case 'ce_probe':
      return buildCeProbe(spec, tables);
  }
}
