// UI state: the committed filter config (always the server's canonical
// echo), the last server response, and at most one open dialog draft.

import type {
  CompareResponse,
  DateOp,
  FacetTree,
  FilterConfigTree,
  NumericOp,
  SpecTree,
} from "./types.js";

export interface StringDraft {
  kind: "string";
  selected: Set<string>;
  negated: boolean;
}

export interface NumericDraft {
  kind: "numeric";
  mode: NumericOp | "range";
  operand: string;
  low: string;
  high: string;
  negated: boolean; // range mode only; cmp negation is the neq operator
}

export interface DateDraft {
  kind: "date";
  mode: DateOp | "duration";
  date: string;
  start: string;
  end: string;
  negated: boolean;
}

export type DialogDraft = StringDraft | NumericDraft | DateDraft;

export interface DialogState {
  property: string;
  facet: FacetTree;
  draft: DialogDraft;
  /** Candidate values currently listed (narrowed by the autocomplete box). */
  visible: string[];
  search: string;
}

export interface AppState {
  contributions: string[];
  committed: FilterConfigTree;
  response: CompareResponse | null;
  dialog: DialogState | null;
  shareUrl: string | null;
  error: string | null;
  loading: boolean;
}

export function initialState(contributions: string[]): AppState {
  return {
    contributions,
    committed: {},
    response: null,
    dialog: null,
    shareUrl: null,
    error: null,
    loading: false,
  };
}

/** Dialog draft pre-populated from the committed spec, when there is one. */
export function draftFromSpec(facet: FacetTree, spec: SpecTree | undefined): DialogDraft {
  if (facet.kind === "string") {
    const selected =
      spec && spec.kind === "text-any-of" ? new Set(spec.values) : new Set<string>();
    const negated = spec && spec.kind === "text-any-of" ? spec.negated : false;
    return { kind: "string", selected, negated };
  }
  if (facet.kind === "numeric") {
    if (spec && spec.kind === "numeric-cmp") {
      return { kind: "numeric", mode: spec.op, operand: spec.operand, low: "", high: "", negated: false };
    }
    if (spec && spec.kind === "numeric-range") {
      return { kind: "numeric", mode: "range", operand: "", low: spec.low, high: spec.high, negated: spec.negated };
    }
    return { kind: "numeric", mode: "eq", operand: "", low: "", high: "", negated: false };
  }
  if (spec && spec.kind === "date-cmp") {
    return { kind: "date", mode: spec.op, date: spec.date, start: "", end: "", negated: spec.negated };
  }
  if (spec && spec.kind === "date-range") {
    return { kind: "date", mode: "duration", date: "", start: spec.start, end: spec.end, negated: spec.negated };
  }
  return { kind: "date", mode: "on", date: "", start: "", end: "", negated: false };
}

/**
 * Turn a draft back into a spec. Returns null when the draft selects
 * nothing, which commits as "remove this property's clause".
 */
export function specFromDraft(draft: DialogDraft): SpecTree | null {
  if (draft.kind === "string") {
    if (draft.selected.size === 0) return null;
    return {
      kind: "text-any-of",
      values: [...draft.selected].sort(),
      negated: draft.negated,
    };
  }
  if (draft.kind === "numeric") {
    if (draft.mode === "range") {
      if (!draft.low || !draft.high) return null;
      return { kind: "numeric-range", low: draft.low, high: draft.high, negated: draft.negated };
    }
    if (!draft.operand) return null;
    return { kind: "numeric-cmp", op: draft.mode, operand: draft.operand };
  }
  if (draft.mode === "duration") {
    if (!draft.start || !draft.end) return null;
    return { kind: "date-range", start: draft.start, end: draft.end, negated: draft.negated };
  }
  if (!draft.date) return null;
  return { kind: "date-cmp", op: draft.mode, date: draft.date, negated: draft.negated };
}

export function withClause(
  committed: FilterConfigTree,
  property: string,
  spec: SpecTree | null,
): FilterConfigTree {
  const next: FilterConfigTree = {};
  for (const [prop, existing] of Object.entries(committed)) {
    if (prop !== property) next[prop] = existing;
  }
  if (spec !== null) next[property] = spec;
  return next;
}
