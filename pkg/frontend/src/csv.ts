import { readFileSync } from 'fs';
import { parse } from 'papaparse';

/** One harness CSV: header order preserved, blank cells parsed to null. */
export interface Table {
  file: string;
  columns: string[];
  rows: Record<string, number | string | null>[];
}

export class MissingColumnError extends Error {
  constructor(file: string, column: string) {
    super(`${file}: missing column ${column}`);
  }
}

export class EmptyInputError extends Error {
  constructor(file: string, detail = 'no data rows') {
    super(`${file}: ${detail}`);
  }
}

export function readTable(file: string): Table {
  const text = readFileSync(file, 'utf8');
  const parsed = parse<Record<string, number | string | null>>(text, {
    header: true,
    dynamicTyping: true,
    skipEmptyLines: true,
  });
  const columns = parsed.meta.fields ?? [];
  if (columns.length === 0 || parsed.data.length === 0) {
    throw new EmptyInputError(file);
  }
  return { file, columns, rows: parsed.data };
}

export function requireColumns(table: Table, needed: string[]): void {
  for (const column of needed) {
    if (!table.columns.includes(column)) {
      throw new MissingColumnError(table.file, column);
    }
  }
}

/** Numeric cell access; blank cells come back as null, never NaN. */
export function num(row: Record<string, number | string | null>, column: string): number | null {
  const v = row[column];
  if (v === null || v === undefined || v === '') return null;
  if (typeof v === 'number') return v;
  const parsed = Number(v);
  return Number.isFinite(parsed) ? parsed : null;
}
