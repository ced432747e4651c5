/**
 * Wire types for the sqlucid session service.
 *
 * Every interface mirrors a JSON payload produced or consumed by the HTTP
 * API; the view models never invent fields the server does not send.
 */

export interface ColumnJson {
  name: string;
  affinity: string;
}

export interface ResultTableJson {
  columns: ColumnJson[];
  rows: unknown[][];
  truncated: boolean;
  row_cap: number;
  elapsed_ms: number;
}

/** Target attached to a highlighted span inside an explanation sentence. */
export type SpanTargetJson =
  | { kind: "table"; table: string }
  | { kind: "column"; table: string; column: string }
  | {
      kind: "value";
      value: unknown;
      column: { table: string; column: string } | null;
    }
  | { kind: "subquery_result"; unit_index: number };

export interface EntitySpanJson {
  start: number;
  end: number;
  target: SpanTargetJson;
}

/** Who authored the current wording of a step. */
export type StepOrigin = "generated" | "user_edited" | "user_added";

export interface StepJson {
  unit_index: number;
  step_index: number;
  clause_kind: string;
  text: string;
  origin: StepOrigin;
  user_text: string | null;
  spans: EntitySpanJson[];
}

export interface BlockJson {
  unit_index: number;
  /** Lead-in sentence for multi-query explanations; empty for one block. */
  header: string;
  steps: StepJson[];
}

export interface PlanJson {
  sql: string;
  blocks: BlockJson[];
}

export interface SessionStateJson {
  session_id: string;
  database_id: string;
  question: string | null;
  sql: string;
  plan: PlanJson;
  digest: string;
  can_undo: boolean;
  can_redo: boolean;
}

export interface SessionCreatedJson {
  session_id: string;
  database_id: string;
}

export interface DatabaseEntryJson {
  id: string;
  tables: string[];
}

export interface DatabaseListJson {
  databases: DatabaseEntryJson[];
}

export interface SchemaPayloadJson {
  id: string;
  schema: unknown;
}

export interface BrowsePayloadJson {
  table: string;
  page: number;
  page_size: number;
  result: ResultTableJson;
}

export interface CurrentSqlJson {
  question: string | null;
  sql: string;
}

export interface StepResultJson {
  temp_sql: string;
  synthesized_select: boolean;
  result: ResultTableJson;
}

/** Resolved hover payload; the target is null for plain-text offsets. */
export interface HoverTargetJson {
  kind: "table" | "column" | "value" | "subquery_result";
  table?: string;
  column?: string;
  unit_index?: number;
}

export interface HoverPayloadJson {
  target: HoverTargetJson | null;
}

export type EditKind = "update" | "add" | "delete";

/** One entry of an atomic edit batch posted to /sessions/{id}/edits. */
export interface EditOpJson {
  kind: EditKind;
  unit_index: number;
  step_index: number;
  new_text: string | null;
}

/** Error envelope the service wraps around every failed request. */
export interface ErrorDetailJson {
  type: string;
  message: string;
}
