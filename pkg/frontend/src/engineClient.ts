/**
 * Thin HTTP/SSE client for the engine service.
 *
 * fetch and EventSource are injected so tests can stub the engine; nothing
 * in here interprets rhythm data beyond parsing JSON.
 */

import type {
  AnalysisReport,
  ClockTick,
  FeelProfileDoc,
  PatternDoc,
  PutPatternResponse,
  RenderOptionsDoc,
  TimelineDoc,
  TransportResponse,
} from "./types.js";

export class EngineHttpError extends Error {
  constructor(
    readonly status: number,
    readonly body: unknown,
  ) {
    super(`engine responded ${status}`);
  }
}

export interface EventSourceLike {
  onmessage: ((event: { data: string }) => void) | null;
  onerror: ((event: unknown) => void) | null;
  close(): void;
}

export type FetchLike = (
  url: string,
  init?: {
    method?: string;
    headers?: Record<string, string>;
    body?: string;
  },
) => Promise<{ status: number; json(): Promise<unknown> }>;

export interface EngineClientDeps {
  fetchImpl?: FetchLike;
  eventSourceFactory?: (url: string) => EventSourceLike;
}

export interface RenderRequest {
  revision?: number;
  profile?: FeelProfileDoc;
  options?: RenderOptionsDoc;
  midi?: boolean;
}

export interface TransportRequest {
  action: "play" | "stop";
  seed?: number;
  profile?: FeelProfileDoc;
  options?: RenderOptionsDoc;
}

export class EngineClient {
  private fetchImpl: FetchLike;
  private eventSourceFactory: (url: string) => EventSourceLike;

  constructor(
    readonly baseUrl: string,
    deps: EngineClientDeps = {},
  ) {
    this.fetchImpl =
      deps.fetchImpl ?? ((url, init) => fetch(url, init) as never);
    this.eventSourceFactory =
      deps.eventSourceFactory ??
      ((url) => new EventSource(url) as unknown as EventSourceLike);
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, {
      method,
      headers: { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const parsed = await response.json();
    if (response.status >= 400) {
      throw new EngineHttpError(response.status, parsed);
    }
    return parsed as T;
  }

  putPattern(doc: PatternDoc): Promise<PutPatternResponse> {
    return this.request("PUT", "/v1/pattern", doc);
  }

  analyze(doc: PatternDoc): Promise<AnalysisReport> {
    return this.request("POST", "/v1/analyze", doc);
  }

  render(body: RenderRequest): Promise<TimelineDoc> {
    return this.request("POST", "/v1/render", body);
  }

  transport(body: TransportRequest): Promise<TransportResponse> {
    return this.request("POST", "/v1/transport", body);
  }

  /** Subscribe to clock ticks; returns a function that closes the stream. */
  openClock(onTick: (tick: ClockTick) => void): () => void {
    const source = this.eventSourceFactory(this.baseUrl + "/v1/clock");
    source.onmessage = (event) => {
      onTick(JSON.parse(event.data) as ClockTick);
    };
    return () => source.close();
  }
}
