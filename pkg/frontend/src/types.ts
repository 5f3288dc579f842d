/** Wire types for the slepnet service endpoints. */

export interface GraphSummary {
  N: number;
  edge_count: number;
  attribute_keys: string[];
  degree_extremes: { min: number; max: number };
  available_operators: string[];
  default_operator: string;
  w_max: number;
}

export interface NodeInfo {
  id: number;
  label: string;
  lon: number | null;
  lat: number | null;
  attributes: Record<string, string>;
  degree: number;
}

export interface NodesResponse {
  nodes: NodeInfo[];
}

export type SelectionSpec =
  | { mode: "attribute"; key: string; value: string }
  | { mode: "ids"; ids: number[] };

export interface QueryRequest {
  selection: SelectionSpec;
  W: number;
  operator?: string;
  axes: [number, number];
  color_axis?: number | null;
}

export interface FrameColumns {
  id: number[];
  label: string[];
  x: number[];
  y: number[];
  magnitude: number[];
  angle: number[];
  color_scalar: number[];
  hue: number[];
  size: number[];
  lon: number[] | null;
  lat: number[] | null;
  in_selection: boolean[];
  degree: number[];
}

export interface QueryResponse {
  frame: FrameColumns;
  mu_sequence: number[];
  K: number;
  transition_index: number;
  transition_detected: boolean;
  degenerate_cutoff: boolean;
  W: number;
  operator: string;
  axes: number[];
  selection_size: number;
  timing: {
    basis_seconds: number;
    slepian_seconds: number;
    total_seconds: number;
    basis_cached: boolean;
  };
}

export type ViewName = "embedding" | "geographic" | "spectrum";
