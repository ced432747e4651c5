/**
 * Hover highlighting: turning a resolved hover target into the visual
 * state the Database panel applies (green table tint, yellow centered
 * column, or an outline around a referenced step block).
 */

import type { HoverTargetJson, ResultTableJson } from "./types.js";

export type Highlight =
  | { kind: "table"; table: string; tint: "green" }
  | { kind: "column"; table: string; column: string; tint: "yellow"; centered: true }
  | { kind: "block-outline"; unitIndex: number };

/** Visual treatment for a hover target; null means nothing to highlight. */
export function highlightFor(target: HoverTargetJson | null): Highlight | null {
  if (target === null) return null;
  if (target.kind === "table" && target.table !== undefined) {
    return { kind: "table", table: target.table, tint: "green" };
  }
  if (
    target.kind === "column" &&
    target.table !== undefined &&
    target.column !== undefined
  ) {
    return {
      kind: "column",
      table: target.table,
      column: target.column,
      tint: "yellow",
      centered: true,
    };
  }
  if (target.kind === "subquery_result" && target.unit_index !== undefined) {
    return { kind: "block-outline", unitIndex: target.unit_index };
  }
  return null;
}

/**
 * Index of a highlighted column inside the data grid, so the view can
 * scroll it to the center. Null when the grid does not show the column.
 */
export function gridColumnPosition(
  grid: ResultTableJson | null,
  column: string,
): number | null {
  if (grid === null) return null;
  const wanted = column.toLowerCase();
  const position = grid.columns.findIndex(
    (entry) => entry.name.toLowerCase() === wanted,
  );
  return position === -1 ? null : position;
}
