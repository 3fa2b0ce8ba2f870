// Mocked server responses shaped exactly like the search service's bodies.

import type {
  CompareResponse,
  FilterConfigTree,
  SavedSnapshot,
  TableTree,
} from "../src/types.js";

export const CONTRIBUTIONS = ["C1", "C2", "C3"];

const LABELS: Record<string, string> = {
  C1: "Detection of SARS-CoV-2 by RT-PCR",
  C2: "Rapid molecular assay evaluation",
  C3: "Serological antibody survey",
};

const PROPERTIES = [
  { id: "method", label: "Method", datatype: "text" },
  { id: "study_date", label: "Study date", datatype: "date" },
  { id: "patients", label: "Patients", datatype: "number" },
];

const ALL_CELLS = [
  { property: "method", contribution: "C1", values: [{ kind: "text", lexical: "PCR" }] },
  { property: "method", contribution: "C2", values: [{ kind: "text", lexical: "PCR" }] },
  { property: "method", contribution: "C3", values: [{ kind: "text", lexical: "Antibody test" }] },
  { property: "study_date", contribution: "C1", values: [{ kind: "date", lexical: "2020-03-01" }] },
  { property: "study_date", contribution: "C2", values: [{ kind: "date", lexical: "2020-05-20" }] },
  {
    property: "study_date",
    contribution: "C3",
    values: [
      { kind: "date", lexical: "2020-04-10" },
      { kind: "date", lexical: "2020-04-24" },
    ],
  },
  { property: "patients", contribution: "C1", values: [{ kind: "number", lexical: "100" }] },
  { property: "patients", contribution: "C2", values: [{ kind: "number", lexical: "250" }] },
] as TableTree["cells"];

function tableFor(ids: string[]): TableTree {
  return {
    contributions: ids.map((id) => ({ id, label: LABELS[id] ?? id })),
    properties: PROPERTIES,
    cells: ALL_CELLS.filter((cell) => ids.includes(cell.contribution)),
  };
}

function facetsFor(pcrOnly: boolean): CompareResponse["facets"] {
  return [
    {
      property: "method",
      kind: "string",
      candidates: [
        { value: "PCR", count: 2, filtered_count: 2 },
        { value: "Antibody test", count: 1, filtered_count: pcrOnly ? 0 : 1 },
      ],
      min: null,
      max: null,
    },
    {
      property: "study_date",
      kind: "date",
      candidates: [],
      min: { kind: "date", lexical: "2020-03-01" },
      max: { kind: "date", lexical: "2020-05-20" },
    },
    {
      property: "patients",
      kind: "numeric",
      candidates: [],
      min: { kind: "number", lexical: "100" },
      max: { kind: "number", lexical: "250" },
    },
  ];
}

export const PCR_FILTER: FilterConfigTree = {
  method: { kind: "text-any-of", values: ["PCR"], negated: false },
};

export const UNFILTERED_RESPONSE: CompareResponse = {
  table: tableFor(["C1", "C2", "C3"]),
  facets: facetsFor(false),
  active_filters: {},
};

export const PCR_RESPONSE: CompareResponse = {
  table: tableFor(["C1", "C2"]),
  facets: facetsFor(true),
  active_filters: PCR_FILTER,
};

export const EMPTY_RESPONSE: CompareResponse = {
  table: { contributions: [], properties: [], cells: [] },
  facets: facetsFor(false),
  active_filters: { method: { kind: "text-any-of", values: ["Dowsing"], negated: false } },
};

export const SAVED_ID = "3045fbcc34ba396c";
export const SAVED_URL = `http://search.example/saved/${SAVED_ID}`;

export const SNAPSHOT: SavedSnapshot = {
  id: SAVED_ID,
  created_at: "2021-06-01T12:00:00+00:00",
  source: CONTRIBUTIONS,
  filter: PCR_FILTER,
  table: tableFor(["C1", "C2"]),
};
