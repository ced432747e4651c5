/**
 * Typed client for the sqlucid session service.
 *
 * The client is the only place the frontend talks to the network; every
 * view model goes through it, and tests substitute the `fetchImpl`
 * constructor argument for a scripted fake.
 */

import type {
  BrowsePayloadJson,
  CurrentSqlJson,
  DatabaseListJson,
  EditOpJson,
  ErrorDetailJson,
  HoverPayloadJson,
  SchemaPayloadJson,
  SessionCreatedJson,
  SessionStateJson,
  StepResultJson,
} from "./types.js";

export type FetchLike = (
  url: string,
  init?: RequestInit,
) => Promise<Response>;

/** A non-2xx response, carrying the service's typed error envelope. */
export class ApiError extends Error {
  readonly status: number;
  readonly errorType: string;

  constructor(status: number, detail: ErrorDetailJson) {
    super(detail.message);
    this.name = "ApiError";
    this.status = status;
    this.errorType = detail.type;
  }
}

async function errorDetail(response: Response): Promise<ErrorDetailJson> {
  try {
    const body = (await response.json()) as { detail?: unknown };
    const detail = body.detail;
    if (
      typeof detail === "object" &&
      detail !== null &&
      typeof (detail as ErrorDetailJson).type === "string" &&
      typeof (detail as ErrorDetailJson).message === "string"
    ) {
      return detail as ErrorDetailJson;
    }
    return { type: "HTTPError", message: JSON.stringify(body) };
  } catch {
    return { type: "HTTPError", message: response.statusText || "request failed" };
  }
}

export interface BrowseOptions {
  page?: number;
  pageSize?: number;
  /** Substring filter as `column:text`, matching the browse endpoint. */
  filter?: string;
}

export class ApiClient {
  private readonly baseUrl: string;
  private readonly fetchImpl: FetchLike;

  constructor(baseUrl: string, fetchImpl?: FetchLike) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
    const impl = fetchImpl ?? globalThis.fetch;
    if (impl === undefined) {
      throw new Error("no fetch implementation available");
    }
    this.fetchImpl = impl.bind(globalThis) as FetchLike;
  }

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchImpl(this.baseUrl + path, init);
    if (!response.ok) {
      throw new ApiError(response.status, await errorDetail(response));
    }
    if (response.status === 204) {
      return undefined as T;
    }
    return (await response.json()) as T;
  }

  listDatabases(): Promise<DatabaseListJson> {
    return this.request("GET", "/databases");
  }

  getSchema(databaseId: string): Promise<SchemaPayloadJson> {
    return this.request("GET", `/databases/${encodeURIComponent(databaseId)}/schema`);
  }

  browseTable(
    databaseId: string,
    table: string,
    options: BrowseOptions = {},
  ): Promise<BrowsePayloadJson> {
    const query = new URLSearchParams();
    if (options.page !== undefined) query.set("page", String(options.page));
    if (options.pageSize !== undefined) {
      query.set("page_size", String(options.pageSize));
    }
    if (options.filter !== undefined) query.set("filter", options.filter);
    const suffix = query.size > 0 ? `?${query.toString()}` : "";
    return this.request(
      "GET",
      `/databases/${encodeURIComponent(databaseId)}/tables/${encodeURIComponent(table)}${suffix}`,
    );
  }

  createSession(databaseId: string): Promise<SessionCreatedJson> {
    return this.request("POST", "/sessions", { database_id: databaseId });
  }

  closeSession(sessionId: string): Promise<void> {
    return this.request("DELETE", `/sessions/${encodeURIComponent(sessionId)}`);
  }

  getSession(sessionId: string): Promise<SessionStateJson> {
    return this.request("GET", `/sessions/${encodeURIComponent(sessionId)}`);
  }

  ask(sessionId: string, question: string): Promise<SessionStateJson> {
    return this.request("POST", `/sessions/${encodeURIComponent(sessionId)}/ask`, {
      question,
    });
  }

  currentSql(sessionId: string): Promise<CurrentSqlJson> {
    return this.request("GET", `/sessions/${encodeURIComponent(sessionId)}/sql`);
  }

  stepResult(
    sessionId: string,
    unitIndex: number,
    stepIndex: number,
  ): Promise<StepResultJson> {
    return this.request(
      "GET",
      `/sessions/${encodeURIComponent(sessionId)}/steps/${unitIndex}/${stepIndex}/result`,
    );
  }

  hover(
    sessionId: string,
    unitIndex: number,
    stepIndex: number,
    offset: number,
  ): Promise<HoverPayloadJson> {
    const query = new URLSearchParams({
      step: `${unitIndex}:${stepIndex}`,
      offset: String(offset),
    });
    return this.request(
      "GET",
      `/sessions/${encodeURIComponent(sessionId)}/hover?${query.toString()}`,
    );
  }

  applyEdits(sessionId: string, edits: EditOpJson[]): Promise<SessionStateJson> {
    return this.request("POST", `/sessions/${encodeURIComponent(sessionId)}/edits`, {
      edits,
    });
  }

  undo(sessionId: string): Promise<SessionStateJson> {
    return this.request("POST", `/sessions/${encodeURIComponent(sessionId)}/undo`);
  }

  redo(sessionId: string): Promise<SessionStateJson> {
    return this.request("POST", `/sessions/${encodeURIComponent(sessionId)}/redo`);
  }
}
