import { mkdirSync, writeFileSync } from 'fs';
import { readFileSync } from 'fs';
import { dirname } from 'path';

import { readTable } from './csv';
import { Scene, buildScene } from './plots';
import { renderSvg } from './svg';
import { PlotSpec, parsePlotSpec } from './types';

export interface RenderResult {
  spec: PlotSpec;
  scene: Scene;
  svg: string;
}

/** Read the input CSVs, build the scene, write the SVG. Inputs are never touched. */
export function render(spec: PlotSpec): RenderResult {
  const tables = spec.inputs.map(readTable);
  const scene = buildScene(spec, tables);
  const svg = renderSvg(scene);
  mkdirSync(dirname(spec.output), { recursive: true });
  writeFileSync(spec.output, svg);
  return { spec, scene, svg };
}

export function renderFile(specPath: string): RenderResult {
  const spec = parsePlotSpec(JSON.parse(readFileSync(specPath, 'utf8')));
  return render(spec);
}
