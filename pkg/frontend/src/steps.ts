/**
 * Explanation-panel presentation: numbered step rows grouped into blocks,
 * with provenance badges and the highlighted entity spans each sentence
 * carries.
 */

import type {
  EntitySpanJson,
  PlanJson,
  StepJson,
  StepOrigin,
} from "./types.js";

export type StepBadge = "" | "(Updated)" | "(Added)";

/** Address of a step inside the plan, as the API identifies it. */
export interface StepRef {
  unitIndex: number;
  stepIndex: number;
}

export interface StepRowView {
  unitIndex: number;
  stepIndex: number;
  /** What the circled number next to the sentence shows (1-based). */
  circledNumber: number;
  text: string;
  badge: StepBadge;
  clauseKind: string;
  spans: EntitySpanJson[];
  selected: boolean;
}

export interface BlockView {
  unitIndex: number;
  header: string;
  rows: StepRowView[];
}

export function badgeFor(origin: StepOrigin): StepBadge {
  if (origin === "user_edited") return "(Updated)";
  if (origin === "user_added") return "(Added)";
  return "";
}

/** Sentence plus badge, the way the step list renders one line. */
export function stepLabel(row: StepRowView): string {
  return row.badge === "" ? row.text : `${row.text} ${row.badge}`;
}

export function sameStep(a: StepRef | null, b: StepRef | null): boolean {
  return (
    a !== null &&
    b !== null &&
    a.unitIndex === b.unitIndex &&
    a.stepIndex === b.stepIndex
  );
}

/** Step list for the explanation panel, one view block per query block. */
export function blockViews(plan: PlanJson, selected: StepRef | null): BlockView[] {
  return plan.blocks.map((block) => ({
    unitIndex: block.unit_index,
    header: block.header,
    rows: block.steps.map((step, position) => ({
      unitIndex: step.unit_index,
      stepIndex: step.step_index,
      circledNumber: position + 1,
      text: step.text,
      badge: badgeFor(step.origin),
      clauseKind: step.clause_kind,
      spans: step.spans,
      selected: sameStep(
        { unitIndex: step.unit_index, stepIndex: step.step_index },
        selected,
      ),
    })),
  }));
}

export function findStep(plan: PlanJson, ref: StepRef): StepJson | null {
  for (const block of plan.blocks) {
    for (const step of block.steps) {
      if (step.unit_index === ref.unitIndex && step.step_index === ref.stepIndex) {
        return step;
      }
    }
  }
  return null;
}

/** The step whose prefix is the whole query: last step of the last block. */
export function finalStep(plan: PlanJson): StepRef | null {
  const block = plan.blocks[plan.blocks.length - 1];
  if (block === undefined) return null;
  const step = block.steps[block.steps.length - 1];
  if (step === undefined) return null;
  return { unitIndex: step.unit_index, stepIndex: step.step_index };
}

/**
 * The highlighted span under a character offset, or null when the pointer
 * is over plain sentence text. Span ends are exclusive.
 */
export function spanAt(step: StepJson, offset: number): EntitySpanJson | null {
  for (const span of step.spans) {
    if (span.start <= offset && offset < span.end) {
      return span;
    }
  }
  return null;
}
