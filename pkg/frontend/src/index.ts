export { ApiClient, ApiError, type BrowseOptions, type FetchLike } from "./api.js";
export {
  EditBuffer,
  diagnose,
  type EditDiagnostic,
  type PendingAddition,
} from "./edits.js";
export { highlightFor, gridColumnPosition, type Highlight } from "./hover.js";
export { stepperView, type StepperView } from "./history.js";
export {
  SqlToggle,
  sqlPanelView,
  type SqlPanelView,
} from "./sqlToggle.js";
export {
  badgeFor,
  blockViews,
  finalStep,
  findStep,
  sameStep,
  spanAt,
  stepLabel,
  type BlockView,
  type StepBadge,
  type StepRef,
  type StepRowView,
} from "./steps.js";
export {
  SessionView,
  selectionConsistent,
  type QueryResultPanel,
} from "./viewState.js";
export type * from "./types.js";
