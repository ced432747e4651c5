/**
 * History stepper: undo/redo button state derived from the session, so
 * the buttons disable exactly at the boundaries the server reports.
 */

import type { SessionStateJson } from "./types.js";

export interface StepperView {
  undoDisabled: boolean;
  redoDisabled: boolean;
}

export function stepperView(session: SessionStateJson | null): StepperView {
  return {
    undoDisabled: !(session?.can_undo ?? false),
    redoDisabled: !(session?.can_redo ?? false),
  };
}
