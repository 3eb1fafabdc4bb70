#!/usr/bin/env node
import { EmptyInputError, MissingColumnError } from './csv';
import { renderFile } from './render';
import { PlotSpecError } from './types';

const USAGE = 'usage: plot <plotspec.json>';

export function main(argv: string[]): number {
  if (argv.length === 1 && (argv[0] === '-h' || argv[0] === '--help')) {
    console.log(USAGE);
    return 0;
  }
  if (argv.length !== 1) {
    console.error(USAGE);
    return 2;
  }
  try {
    const result = renderFile(argv[0]);
    console.log(`wrote ${result.spec.output}`);
    return 0;
  } catch (err) {
    const code = (err as NodeJS.ErrnoException).code;
    if (
      err instanceof PlotSpecError ||
      err instanceof MissingColumnError ||
      err instanceof EmptyInputError ||
      err instanceof SyntaxError ||
      code === 'ENOENT'
    ) {
      console.error(err instanceof Error ? err.message : String(err));
      return 2;
    }
    console.error(err instanceof Error ? err.message : String(err));
    return 1;
  }
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
