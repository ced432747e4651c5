/**
 * Collapsible raw-SQL view below the explanation. The toggle controls the
 * generated query; the temporary SQL of a selected step is shown in the
 * same area whenever a step result is on display.
 */

import type { QueryResultPanel } from "./viewState.js";
import type { SessionStateJson } from "./types.js";

export class SqlToggle {
  private visibleFlag = false;

  get visible(): boolean {
    return this.visibleFlag;
  }

  toggle(): boolean {
    this.visibleFlag = !this.visibleFlag;
    return this.visibleFlag;
  }

  show(): void {
    this.visibleFlag = true;
  }

  hide(): void {
    this.visibleFlag = false;
  }
}

export interface SqlPanelView {
  visible: boolean;
  /** The generated query, only when the toggle is open. */
  sql: string | null;
  /** The selected step's temporary SQL, independent of the toggle. */
  tempSql: string | null;
}

export function sqlPanelView(
  visible: boolean,
  session: SessionStateJson | null,
  panel: QueryResultPanel,
): SqlPanelView {
  return {
    visible,
    sql: visible && session !== null ? session.sql : null,
    tempSql: panel.kind === "loaded" && panel.scope === "step" ? panel.tempSql : null,
  };
}
