import { mkdtempSync, readFileSync, writeFileSync } from 'fs';
import { tmpdir } from 'os';
import { join, resolve } from 'path';
import { describe, expect, it } from 'vitest';

import { EmptyInputError, MissingColumnError, readTable } from '../src/csv';
import { leastSquaresSlope } from '../src/fit';
import { buildScene } from '../src/plots';
import { render } from '../src/render';
import { PlotSpec, parsePlotSpec } from '../src/types';

const FIXTURES = resolve('tests/fixtures');
const tmp = mkdtempSync(join(tmpdir(), 'plots-render-'));

function spec(doc: object): PlotSpec {
  return parsePlotSpec(doc);
}

function convergenceSpec(output: string): PlotSpec {
  return spec({
    kind: 'convergence',
    inputs: [join(FIXTURES, 'fig6_1/summary.csv')],
    output,
  });
}

describe('convergence figures', () => {
  it('re-renders to identical bytes and reproduces the harness slope', () => {
    const output = join(tmp, 'fig6_1.svg');
    const first = render(convergenceSpec(output));
    const firstBytes = readFileSync(output);
    const second = render(convergenceSpec(output));
    expect(readFileSync(output).equals(firstBytes)).toBe(true);
    expect(second.svg).toBe(first.svg);

    const points = first.scene.series[0].points;
    const slope = leastSquaresSlope(
      points.map((p) => p.x),
      points.map((p) => p.y),
    );
    const harness = JSON.parse(
      readFileSync(join(FIXTURES, 'fig6_1/run.json'), 'utf8'),
    ).slope as number;
    expect(Math.abs(slope - harness)).toBeLessThanOrEqual(1e-12);
  });

  it('draws one series for the single scheme plus the slope-1 guide', () => {
    const result = render(convergenceSpec(join(tmp, 'guide.svg')));
    expect(result.scene.series).toHaveLength(1);
    expect(result.scene.series[0].label).toBe('FREE');
    expect(result.scene.series[0].points).toHaveLength(4);
    expect(result.scene.guides).toHaveLength(1);
    const guide = result.scene.guides[0];
    expect(guide.label).toBe('slope 1');
    // unit slope in log-log coordinates, sitting below every point
    expect(guide.to.y - guide.from.y).toBeCloseTo(guide.to.x - guide.from.x, 12);
    for (const p of result.scene.series[0].points) {
      expect(p.y - p.x).toBeGreaterThan(guide.from.y - guide.from.x);
    }
    expect(result.svg).toContain('slope 1');
  });

  it('never mutates its inputs', () => {
    const input = join(FIXTURES, 'fig6_1/summary.csv');
    const before = readFileSync(input);
    render(convergenceSpec(join(tmp, 'mutate.svg')));
    expect(readFileSync(input).equals(before)).toBe(true);
  });

  it('fails with the column name when the summary lacks one', () => {
    const file = join(tmp, 'no_error_col.csv');
    writeFileSync(file, 'scheme,tau,log10_tau\nFREE,0.1,-1\n');
    const bad = spec({ kind: 'convergence', inputs: [file], output: join(tmp, 'x.svg') });
    expect(() => render(bad)).toThrow(MissingColumnError);
    expect(() => render(bad)).toThrow('missing column log10_error');
  });

  it('fails on a summary with no fitted errors', () => {
    const input = join(FIXTURES, 'positivity_demo/summary.csv');
    const bad = spec({ kind: 'convergence', inputs: [input], output: join(tmp, 'y.svg') });
    expect(() => render(bad)).toThrow(EmptyInputError);
    expect(() => render(bad)).toThrow('no plottable rows');
  });
});

describe('step-trace figures', () => {
  const stepsCsv = join(FIXTURES, 'fig6_1/steps_0.0125.csv');

  it('population trajectories stay inside [0, 1]', () => {
    const result = render(
      spec({ kind: 'populations', inputs: [stepsCsv], output: join(tmp, 'pops.svg') }),
    );
    expect(result.scene.series.map((s) => s.label)).toEqual(['pop_1', 'pop_16']);
    for (const series of result.scene.series) {
      expect(series.points).toHaveLength(81);
      for (const p of series.points) {
        expect(p.y).toBeGreaterThanOrEqual(0.0);
        expect(p.y).toBeLessThanOrEqual(1.0);
      }
    }
  });

  it('trace deviations sit inside the 1e-12 gate band', () => {
    const result = render(
      spec({ kind: 'trace_dev', inputs: [stepsCsv], output: join(tmp, 'trace.svg') }),
    );
    for (const p of result.scene.series[0].points) {
      expect(Math.abs(p.y)).toBeLessThanOrEqual(1e-12);
    }
  });

  it('positivity traces separate the two schemes in the fixture', () => {
    const result = render(
      spec({
        kind: 'positivity',
        inputs: [
          join(FIXTURES, 'positivity_demo/steps_1.csv'),
          join(FIXTURES, 'positivity_demo/steps_free_1.csv'),
        ],
        output: join(tmp, 'pos.svg'),
        labels: ['runge-kutta', 'exponential'],
      }),
    );
    expect(result.scene.series.map((s) => s.label)).toEqual(['runge-kutta', 'exponential']);
    const rk4Min = Math.min(...result.scene.series[0].points.map((p) => p.y));
    const freeMin = Math.min(...result.scene.series[1].points.map((p) => p.y));
    expect(rk4Min).toBeLessThan(-1e-6);
    expect(freeMin).toBeGreaterThanOrEqual(-1e-10);
    expect(result.svg).toContain('runge-kutta');
  });

  it('names a steps file without population columns', () => {
    const file = join(tmp, 'no_pops.csv');
    writeFileSync(file, 'step,time,trace_deviation\n0,0.0,0.0\n');
    const bad = spec({ kind: 'populations', inputs: [file], output: join(tmp, 'z.svg') });
    expect(() => render(bad)).toThrow('missing column pop_*');
  });
});

describe('cost-probe figures', () => {
  it('groups one series per tolerance', () => {
    const result = render(
      spec({
        kind: 'ce_probe',
        inputs: [join(FIXTURES, 'fig6_6/ce_probe.csv')],
        output: join(tmp, 'ce.svg'),
      }),
    );
    expect(result.scene.series.map((s) => s.label)).toEqual(['tol 1e-4', 'tol 1e-8']);
    for (const series of result.scene.series) {
      expect(series.points).toHaveLength(7);
    }
  });

  it('rejects non-positive values on a log axis', () => {
    const file = join(tmp, 'neg.csv');
    writeFileSync(file, 'tau,tol,ce\n0.1,1e-4,-2.0\n');
    const bad = spec({ kind: 'ce_probe', inputs: [file], output: join(tmp, 'w.svg') });
    expect(() => render(bad)).toThrow('log axis needs positive values');
  });
});

describe('determinism across kinds', () => {
  it.each(['populations', 'trace_dev', 'positivity'] as const)(
    '%s renders the same bytes twice',
    (kind) => {
      const doc = {
        kind,
        inputs: [join(FIXTURES, 'fig6_1/steps_0.05.csv')],
        output: join(tmp, `det_${kind}.svg`),
      };
      const first = render(spec(doc)).svg;
      expect(render(spec(doc)).svg).toBe(first);
    },
  );
});

describe('scene building without files', () => {
  it('prefixes labels with the file stem when plotting several tables', () => {
    const a = readTable(join(FIXTURES, 'positivity_demo/steps_1.csv'));
    const b = readTable(join(FIXTURES, 'positivity_demo/steps_free_1.csv'));
    const doc = spec({
      kind: 'positivity',
      inputs: ['unused', 'unused'],
      output: 'unused.svg',
    });
    const scene = buildScene(doc, [a, b]);
    expect(scene.series.map((s) => s.label)).toEqual(['steps_1', 'steps_free_1']);
  });
});
