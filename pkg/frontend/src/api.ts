import {
  NextPayload,
  SessionInfo,
  SessionReport,
  SubmitResponse,
  TokenPair,
} from "./types.js";

export class ApiRequestError extends Error {
  constructor(
    public readonly code: string,
    message: string,
    public readonly status: number,
  ) {
    super(message);
  }
}

export interface SessionOptions {
  count: number;
  practice: boolean;
  seed?: number;
  setting?: string;
  split?: string;
}

/** Thin typed client; the UI performs no scoring of its own. */
export class ApiClient {
  constructor(private readonly baseUrl: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const res = await fetch(this.baseUrl + path, {
      headers: { "Content-Type": "application/json" },
      ...init,
    });
    const body = await res.json().catch(() => ({}));
    if (!res.ok) {
      throw new ApiRequestError(
        body.code ?? "http_error",
        body.message ?? `request failed with status ${res.status}`,
        res.status,
      );
    }
    return body as T;
  }

  health(): Promise<{ status: string; samples: number }> {
    return this.request("/health");
  }

  createSession(user: string, options: SessionOptions): Promise<SessionInfo> {
    return this.request("/sessions", {
      method: "POST",
      body: JSON.stringify({ user, ...options }),
    });
  }

  next(sessionId: string): Promise<NextPayload> {
    return this.request(`/sessions/${sessionId}/next`);
  }

  submit(
    sessionId: string,
    transformations: TokenPair[],
    elapsedMs?: number,
  ): Promise<SubmitResponse> {
    return this.request(`/sessions/${sessionId}/answer`, {
      method: "POST",
      body: JSON.stringify({ transformations, elapsed_ms: elapsedMs }),
    });
  }

  report(sessionId: string): Promise<SessionReport> {
    return this.request(`/sessions/${sessionId}/report`);
  }
}
