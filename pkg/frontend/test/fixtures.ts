import { readFileSync } from "node:fs";

import type { GraphSummary, NodesResponse, QueryResponse } from "../src/types.js";

function load<T>(name: string): T {
  const url = new URL(`./fixtures/${name}`, import.meta.url);
  return JSON.parse(readFileSync(url, "utf8")) as T;
}

export const summary = () => load<GraphSummary>("summary.json");
export const nodes = () => load<NodesResponse>("nodes.json");
export const queryAllW2 = () => load<QueryResponse>("query_all_W2.json");
export const queryEuropeW2 = () => load<QueryResponse>("query_europe_W2.json");
export const queryEuropeW80 = () => load<QueryResponse>("query_europe_W80.json");
export const queryOneNodeW30 = () => load<QueryResponse>("query_one_node_W30.json");
