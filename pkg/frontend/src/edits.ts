/**
 * Edit buffer for the explanation panel: per-step draft texts, queued
 * additions and deletions, and the exact operation batch the Generate
 * button posts. The buffer never mutates the plan it was built from; the
 * server's response is the only source of new step state.
 */

import type { ApiError } from "./api.js";
import type { EditOpJson, PlanJson, StepJson } from "./types.js";
import { findStep, type StepRef } from "./steps.js";

export interface PendingAddition {
  unitIndex: number;
  /** Position the new step is inserted at inside its block. */
  stepIndex: number;
  text: string;
}

/** Where a rejection message points; indexes are null for batch-level notes. */
export interface EditDiagnostic {
  unitIndex: number | null;
  stepIndex: number | null;
  message: string;
}

function keyOf(ref: StepRef): string {
  return `${ref.unitIndex}:${ref.stepIndex}`;
}

export class EditBuffer {
  private readonly plan: PlanJson;
  private readonly drafts = new Map<string, string>();
  private readonly deletions = new Set<string>();
  private additions: PendingAddition[] = [];
  diagnostics: EditDiagnostic[] = [];

  constructor(plan: PlanJson) {
    this.plan = plan;
  }

  private planStep(ref: StepRef): StepJson {
    const step = findStep(this.plan, ref);
    if (step === null) {
      throw new Error(`no step ${keyOf(ref)} in the current explanation`);
    }
    return step;
  }

  /** Text the inline editor shows: the draft if any, else the sentence. */
  draftText(ref: StepRef): string {
    return this.drafts.get(keyOf(ref)) ?? this.planStep(ref).text;
  }

  /** Record an inline edit; typing the original text back clears it. */
  setText(ref: StepRef, text: string): void {
    if (text === this.planStep(ref).text) {
      this.drafts.delete(keyOf(ref));
    } else {
      this.drafts.set(keyOf(ref), text);
    }
  }

  isEdited(ref: StepRef): boolean {
    return this.drafts.has(keyOf(ref));
  }

  /** Flip the Delete button; deleting a step discards its draft text. */
  toggleDelete(ref: StepRef): boolean {
    this.planStep(ref);
    const key = keyOf(ref);
    if (this.deletions.delete(key)) {
      return false;
    }
    this.deletions.add(key);
    return true;
  }

  isDeleted(ref: StepRef): boolean {
    return this.deletions.has(keyOf(ref));
  }

  /** Queue a new step; `stepIndex` is the insertion position in its block. */
  addStep(unitIndex: number, stepIndex: number, text: string): void {
    this.additions.push({ unitIndex, stepIndex, text });
  }

  get pendingAdditions(): readonly PendingAddition[] {
    return this.additions;
  }

  removeAddition(position: number): void {
    this.additions.splice(position, 1);
  }

  /**
   * The batch the Generate button posts: one operation per touched step,
   * in plan order, additions last. A deleted step contributes only its
   * deletion even when it also has a draft.
   */
  get ops(): EditOpJson[] {
    const batch: EditOpJson[] = [];
    for (const block of this.plan.blocks) {
      for (const step of block.steps) {
        const ref = { unitIndex: step.unit_index, stepIndex: step.step_index };
        const key = keyOf(ref);
        if (this.deletions.has(key)) {
          batch.push({
            kind: "delete",
            unit_index: step.unit_index,
            step_index: step.step_index,
            new_text: null,
          });
        } else if (this.drafts.has(key)) {
          batch.push({
            kind: "update",
            unit_index: step.unit_index,
            step_index: step.step_index,
            new_text: this.drafts.get(key) ?? "",
          });
        }
      }
    }
    for (const addition of this.additions) {
      batch.push({
        kind: "add",
        unit_index: addition.unitIndex,
        step_index: addition.stepIndex,
        new_text: addition.text,
      });
    }
    return batch;
  }

  /** Whether the Generate button is enabled. */
  get canGenerate(): boolean {
    return (
      this.drafts.size > 0 || this.deletions.size > 0 || this.additions.length > 0
    );
  }

  clearDiagnostics(): void {
    this.diagnostics = [];
  }
}

const NO_SUCH_STEP = /query (\d+) has no step (\d+)/;
const NO_SUCH_QUERY = /no query numbered (\d+)/;

/**
 * Attach a rejection to the steps it talks about. Parse failures quote
 * the offending sentence, structural conflicts may name query/step
 * numbers (one-based in prose, zero-based here), and a single-operation
 * batch can only ever be about its one step. Anything else becomes a
 * batch-level note with null indexes.
 */
export function diagnose(error: ApiError, ops: EditOpJson[]): EditDiagnostic[] {
  const message = error.message;
  const found: EditDiagnostic[] = [];
  for (const op of ops) {
    if (op.new_text !== null && op.new_text !== "" && message.includes(op.new_text)) {
      found.push({
        unitIndex: op.unit_index,
        stepIndex: op.step_index,
        message,
      });
    }
  }
  if (found.length > 0) return found;

  const stepMatch = NO_SUCH_STEP.exec(message);
  if (stepMatch !== null) {
    return [
      {
        unitIndex: Number(stepMatch[1]) - 1,
        stepIndex: Number(stepMatch[2]),
        message,
      },
    ];
  }
  const queryMatch = NO_SUCH_QUERY.exec(message);
  if (queryMatch !== null) {
    return [{ unitIndex: Number(queryMatch[1]) - 1, stepIndex: null, message }];
  }
  const only = ops.length === 1 ? ops[0] : undefined;
  if (only !== undefined) {
    return [
      { unitIndex: only.unit_index, stepIndex: only.step_index, message },
    ];
  }
  return [{ unitIndex: null, stepIndex: null, message }];
}
