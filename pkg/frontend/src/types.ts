// Wire types mirroring the search service's canonical JSON bodies.

export interface ResourceRef {
  id: string;
  label: string;
}

export interface PropertyRef extends ResourceRef {
  datatype: string | null;
}

export interface CellValue {
  kind: "text" | "number" | "date" | "link";
  lexical: string;
}

export interface CellEntry {
  property: string;
  contribution: string;
  values: CellValue[];
}

export interface TableTree {
  contributions: ResourceRef[];
  properties: PropertyRef[];
  cells: CellEntry[];
}

export interface FacetCandidate {
  value: string;
  count: number;
  /** Present in /compare responses: occurrences within the filtered subset. */
  filtered_count?: number;
}

export type FacetKind = "string" | "numeric" | "date";

export interface FacetTree {
  property: string;
  kind: FacetKind;
  candidates: FacetCandidate[];
  min: CellValue | null;
  max: CellValue | null;
}

export type NumericOp = "eq" | "neq" | "lt" | "le" | "gt" | "ge";
export type DateOp = "on" | "before" | "after";

export type SpecTree =
  | { kind: "text-any-of"; values: string[]; negated: boolean }
  | { kind: "numeric-cmp"; op: NumericOp; operand: string }
  | { kind: "numeric-range"; low: string; high: string; negated: boolean }
  | { kind: "date-cmp"; op: DateOp; date: string; negated: boolean }
  | { kind: "date-range"; start: string; end: string; negated: boolean };

/** property id -> active spec; the server echoes this back canonically. */
export type FilterConfigTree = Record<string, SpecTree>;

export interface CompareResponse {
  table: TableTree;
  facets: FacetTree[];
  active_filters: FilterConfigTree;
}

export interface SaveResponse {
  id: string;
  url: string;
}

export interface SavedSnapshot {
  id: string;
  created_at: string;
  source: string[];
  filter: FilterConfigTree;
  table: TableTree;
}

export interface ErrorEnvelope {
  error: { code: string; message: string };
}

/** Human-readable summary of a spec, used on chips and icon tooltips. */
export function describeSpec(spec: SpecTree): string {
  switch (spec.kind) {
    case "text-any-of": {
      const values = [...spec.values].sort().join(", ");
      return spec.negated ? `not ${values}` : values;
    }
    case "numeric-cmp": {
      const symbol: Record<NumericOp, string> = {
        eq: "=",
        neq: "≠",
        lt: "<",
        le: "≤",
        gt: ">",
        ge: "≥",
      };
      return `${symbol[spec.op]} ${spec.operand}`;
    }
    case "numeric-range": {
      const body = `${spec.low} .. ${spec.high}`;
      return spec.negated ? `not in ${body}` : `in ${body}`;
    }
    case "date-cmp": {
      const body = `${spec.op} ${spec.date}`;
      return spec.negated ? `not ${body}` : body;
    }
    case "date-range": {
      const body = `${spec.start} .. ${spec.end}`;
      return spec.negated ? `not in ${body}` : `in ${body}`;
    }
  }
}
