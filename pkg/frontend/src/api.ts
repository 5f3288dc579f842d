/** Typed client for the compute service. */

import type {
  GraphSummary,
  NodesResponse,
  QueryRequest,
  QueryResponse,
} from "./types.js";

export class ServiceError extends Error {
  constructor(message: string, readonly status: number, readonly detail: unknown) {
    super(message);
  }
}

async function check(response: Response): Promise<Response> {
  if (!response.ok) {
    let detail: unknown = null;
    try {
      detail = (await response.json()).detail;
    } catch {
      /* non-JSON error body */
    }
    const text = typeof detail === "string" ? detail : JSON.stringify(detail);
    throw new ServiceError(`service error ${response.status}: ${text}`, response.status, detail);
  }
  return response;
}

export class ApiClient {
  constructor(private readonly base = "") {}

  async summary(): Promise<GraphSummary> {
    const r = await check(await fetch(`${this.base}/graph/summary`));
    return r.json();
  }

  async nodes(): Promise<NodesResponse> {
    const r = await check(await fetch(`${this.base}/graph/nodes`));
    return r.json();
  }

  async query(request: QueryRequest): Promise<QueryResponse> {
    const r = await check(
      await fetch(`${this.base}/slepian/query`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(request),
      }),
    );
    return r.json();
  }
}
