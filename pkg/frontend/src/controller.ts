import { ApiClient, ApiRequestError, SessionOptions } from "./api.js";
import { AnswerDraft } from "./draft.js";
import { NextPayload, SessionReport, SubmitResponse } from "./types.js";

export type Phase = "idle" | "answering" | "submitted" | "report";

export interface FlowState {
  phase: Phase;
  practice: boolean;
  sessionId: string | null;
  user: string;
  current: NextPayload | null;
  lastResult: SubmitResponse | null;
  report: SessionReport | null;
  error: string | null;
}

type Listener = (state: FlowState) => void;

/**
 * Session flow: warm-up practice rounds show the solver's solution; scored
 * test rounds hide it. Scores are always the backend's (no local scoring,
 * no optimistic updates); answers cannot be revised after submission.
 */
export class TestFlow {
  readonly draft = new AnswerDraft();
  private state: FlowState = {
    phase: "idle",
    practice: false,
    sessionId: null,
    user: "",
    current: null,
    lastResult: null,
    report: null,
    error: null,
  };
  private listeners: Listener[] = [];
  private startedAt = 0;
  private clock: () => number;

  constructor(
    private readonly api: ApiClient,
    clock?: () => number,
  ) {
    this.clock = clock ?? (() => Date.now());
  }

  onChange(listener: Listener): void {
    this.listeners.push(listener);
  }

  getState(): FlowState {
    return this.state;
  }

  private update(patch: Partial<FlowState>): void {
    this.state = { ...this.state, ...patch };
    for (const l of this.listeners) l(this.state);
  }

  async start(user: string, options: SessionOptions): Promise<void> {
    const session = await this.api.createSession(user, options);
    this.update({
      phase: "idle",
      practice: options.practice,
      sessionId: session.id,
      user,
      current: null,
      lastResult: null,
      report: null,
      error: null,
    });
    await this.loadNext();
  }

  async loadNext(): Promise<void> {
    if (this.state.sessionId === null) throw new Error("no active session");
    try {
      const payload = await this.api.next(this.state.sessionId);
      this.draft.configure(payload.vocabulary, payload.sample.objects.length);
      this.startedAt = this.clock();
      this.update({ phase: "answering", current: payload, lastResult: null, error: null });
    } catch (err) {
      if (err instanceof ApiRequestError && err.code === "session_complete") {
        await this.finish();
        return;
      }
      throw err;
    }
  }

  /** Submit the draft in its displayed order; the backend score is final. */
  async submit(): Promise<SubmitResponse> {
    if (this.state.sessionId === null || this.state.phase !== "answering") {
      throw new Error("nothing to submit");
    }
    const elapsed = this.clock() - this.startedAt;
    const result = await this.api.submit(this.state.sessionId, this.draft.toJSON(), elapsed);
    this.update({ phase: "submitted", lastResult: result });
    return result;
  }

  async advance(): Promise<void> {
    if (this.state.lastResult !== null && this.state.lastResult.remaining === 0) {
      await this.finish();
    } else {
      await this.loadNext();
    }
  }

  async finish(): Promise<void> {
    if (this.state.sessionId === null) throw new Error("no active session");
    const report = await this.api.report(this.state.sessionId);
    this.update({ phase: "report", report, current: null });
  }
}
