/**
 * Four-panel view store: Database panel (table selector and data grid),
 * Explanation panel (numbered steps), Query Result panel, and the raw-SQL
 * toggle. All state comes from server responses; nothing is applied
 * optimistically, so a rejected request leaves the view exactly as it was.
 */

import { ApiClient, ApiError, type BrowseOptions } from "./api.js";
import { EditBuffer, diagnose } from "./edits.js";
import { highlightFor, type Highlight } from "./hover.js";
import { stepperView, type StepperView } from "./history.js";
import { SqlToggle, sqlPanelView, type SqlPanelView } from "./sqlToggle.js";
import { finalStep, findStep, sameStep, spanAt, type StepRef } from "./steps.js";
import type {
  BrowsePayloadJson,
  DatabaseEntryJson,
  ResultTableJson,
  SessionStateJson,
} from "./types.js";

export type QueryResultPanel =
  | { kind: "empty" }
  | {
      kind: "loaded";
      /** Whether the rows answer the full query or a selected step. */
      scope: "final" | "step";
      stepRef: StepRef;
      tempSql: string;
      synthesizedSelect: boolean;
      result: ResultTableJson;
    }
  | { kind: "error"; stepRef: StepRef | null; message: string };

/**
 * Whether the Query Result panel shows what the selection says it should:
 * a selected step always has its own rows (or its own failure) on display.
 */
export function selectionConsistent(view: SessionView): boolean {
  if (view.selectedStep === null) {
    return true;
  }
  const panel = view.resultPanel;
  if (panel.kind === "loaded") {
    return panel.scope === "step" && sameStep(panel.stepRef, view.selectedStep);
  }
  return panel.kind === "error" && sameStep(panel.stepRef, view.selectedStep);
}

export class SessionView {
  readonly sqlToggle = new SqlToggle();

  databases: DatabaseEntryJson[] = [];
  activeDatabase: string | null = null;
  activeTable: string | null = null;
  grid: BrowsePayloadJson | null = null;

  sessionId: string | null = null;
  session: SessionStateJson | null = null;
  selectedStep: StepRef | null = null;
  hoverTarget: Highlight | null = null;
  resultPanel: QueryResultPanel = { kind: "empty" };
  editBuffer: EditBuffer | null = null;
  /** Edits applied since the question was asked, minus undos. */
  historyPosition = 0;

  private readonly api: ApiClient;

  constructor(api: ApiClient) {
    this.api = api;
  }

  private requireSessionId(): string {
    if (this.sessionId === null) {
      throw new Error("no open session; switch to a database first");
    }
    return this.sessionId;
  }

  private requireState(): SessionStateJson {
    if (this.session === null) {
      throw new Error("no question asked yet");
    }
    return this.session;
  }

  /** Replace every piece of per-question state with the server's answer. */
  private adoptState(state: SessionStateJson): void {
    this.session = state;
    this.selectedStep = null;
    this.editBuffer = new EditBuffer(state.plan);
    this.hoverTarget = null;
  }

  // ----- Database panel -----

  async loadDatabases(): Promise<DatabaseEntryJson[]> {
    const listing = await this.api.listDatabases();
    this.databases = listing.databases;
    return this.databases;
  }

  /** Open a session on a database, closing the previous one if any. */
  async switchDatabase(databaseId: string): Promise<void> {
    if (this.sessionId !== null) {
      await this.api.closeSession(this.sessionId);
    }
    const created = await this.api.createSession(databaseId);
    this.sessionId = created.session_id;
    this.activeDatabase = created.database_id;
    this.session = null;
    this.selectedStep = null;
    this.hoverTarget = null;
    this.resultPanel = { kind: "empty" };
    this.editBuffer = null;
    this.historyPosition = 0;
    this.grid = null;
    const entry = this.databases.find((d) => d.id === databaseId);
    this.activeTable = entry?.tables[0] ?? null;
  }

  /** Point the data grid at a table and load a page of its rows. */
  async switchTable(
    table: string,
    options: BrowseOptions = {},
  ): Promise<BrowsePayloadJson> {
    if (this.activeDatabase === null) {
      throw new Error("no active database");
    }
    const payload = await this.api.browseTable(this.activeDatabase, table, options);
    this.activeTable = payload.table;
    this.grid = payload;
    return payload;
  }

  // ----- Question / explanation -----

  async ask(question: string): Promise<SessionStateJson> {
    const state = await this.api.ask(this.requireSessionId(), question);
    this.adoptState(state);
    this.historyPosition = 0;
    await this.showFinalResult();
    return state;
  }

  // ----- Query Result panel -----

  private async loadResult(ref: StepRef, scope: "final" | "step"): Promise<void> {
    try {
      const payload = await this.api.stepResult(
        this.requireSessionId(),
        ref.unitIndex,
        ref.stepIndex,
      );
      this.resultPanel = {
        kind: "loaded",
        scope,
        stepRef: ref,
        tempSql: payload.temp_sql,
        synthesizedSelect: payload.synthesized_select,
        result: payload.result,
      };
    } catch (err) {
      if (err instanceof ApiError) {
        this.resultPanel = { kind: "error", stepRef: ref, message: err.message };
        return;
      }
      throw err;
    }
  }

  private async showFinalResult(): Promise<void> {
    const state = this.session;
    const ref = state === null ? null : finalStep(state.plan);
    if (ref === null) {
      this.resultPanel = { kind: "empty" };
      return;
    }
    await this.loadResult(ref, "final");
  }

  /** Click a circled step number: fetch and display its intermediate rows. */
  async selectStep(ref: StepRef): Promise<QueryResultPanel> {
    const state = this.requireState();
    if (findStep(state.plan, ref) === null) {
      throw new Error(
        `no step ${ref.unitIndex}:${ref.stepIndex} in the current explanation`,
      );
    }
    this.selectedStep = ref;
    await this.loadResult(ref, "step");
    return this.resultPanel;
  }

  /** Clicking the selected number again restores the full query's rows. */
  async deselectStep(): Promise<void> {
    this.selectedStep = null;
    await this.showFinalResult();
  }

  // ----- Hover -----

  /**
   * Pointer over a sentence. Offsets outside a highlighted span resolve
   * locally to "nothing" without touching the network; spans ask the
   * service which entity to light up.
   */
  async hoverEntity(ref: StepRef, offset: number): Promise<Highlight | null> {
    const state = this.requireState();
    const step = findStep(state.plan, ref);
    if (step === null) {
      this.hoverTarget = null;
      return null;
    }
    if (spanAt(step, offset) === null) {
      this.hoverTarget = null;
      return null;
    }
    const payload = await this.api.hover(
      this.requireSessionId(),
      ref.unitIndex,
      ref.stepIndex,
      offset,
    );
    const highlight = highlightFor(payload.target);
    this.hoverTarget = highlight;
    if (
      highlight !== null &&
      (highlight.kind === "table" || highlight.kind === "column") &&
      highlight.table !== this.activeTable
    ) {
      // The table selector follows the highlighted entity; the grid is
      // stale until the view reloads it for the new table.
      this.activeTable = highlight.table;
      this.grid = null;
    }
    return highlight;
  }

  clearHover(): void {
    this.hoverTarget = null;
  }

  // ----- Edits -----

  /**
   * Post the buffered edits as one atomic batch. On success the new
   * explanation replaces the buffer; on rejection the buffer (and its
   * draft texts) survive with diagnostics attached. Returns whether the
   * batch was applied.
   */
  async generateFromEdits(): Promise<boolean> {
    const buffer = this.editBuffer;
    if (buffer === null || !buffer.canGenerate) {
      return false;
    }
    const ops = buffer.ops;
    buffer.clearDiagnostics();
    try {
      const state = await this.api.applyEdits(this.requireSessionId(), ops);
      this.adoptState(state);
      this.historyPosition += 1;
      await this.showFinalResult();
      return true;
    } catch (err) {
      if (err instanceof ApiError && err.status !== 404) {
        buffer.diagnostics = diagnose(err, ops);
        return false;
      }
      throw err;
    }
  }

  // ----- History stepper -----

  get stepper(): StepperView {
    return stepperView(this.session);
  }

  /** Undo button; a no-op while the button is disabled at the boundary. */
  async undo(): Promise<SessionStateJson | null> {
    if (this.stepper.undoDisabled) {
      return this.session;
    }
    const state = await this.api.undo(this.requireSessionId());
    this.adoptState(state);
    this.historyPosition -= 1;
    await this.showFinalResult();
    return state;
  }

  /** Redo button; a no-op while the button is disabled at the boundary. */
  async redo(): Promise<SessionStateJson | null> {
    if (this.stepper.redoDisabled) {
      return this.session;
    }
    const state = await this.api.redo(this.requireSessionId());
    this.adoptState(state);
    this.historyPosition += 1;
    await this.showFinalResult();
    return state;
  }

  // ----- SQL toggle -----

  get sqlPanel(): SqlPanelView {
    return sqlPanelView(this.sqlToggle.visible, this.session, this.resultPanel);
  }

  // ----- Lifecycle -----

  async close(): Promise<void> {
    if (this.sessionId === null) {
      return;
    }
    await this.api.closeSession(this.sessionId);
    this.sessionId = null;
    this.session = null;
    this.selectedStep = null;
    this.hoverTarget = null;
    this.resultPanel = { kind: "empty" };
    this.editBuffer = null;
    this.historyPosition = 0;
  }
}
