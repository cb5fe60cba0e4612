// Review session state machine. Holds nothing beyond the reviewer id and the
// task currently on screen, so a page reload resumes cleanly from the API.

import type { ApiClient, Stats, TaskPayload, TaskRecord, Verdict } from "./api.js";

export type Phase =
  | "idle"        // waiting for a reviewer id
  | "loading"     // fetching the next task
  | "reviewing"   // task on screen
  | "submitting"  // verdict in flight, inputs disabled
  | "empty"       // queue drained
  | "error";      // network failure; retry keeps all state

export interface SessionState {
  phase: Phase;
  reviewer: string;
  task: TaskRecord | null;
  payload: TaskPayload | null;
  stats: Stats | null;
  confirmed: number;   // decided in this session
  rejected: number;
  notice: string;      // inline message (conflict, stale task)
  error: string;       // retry-banner text when phase === "error"
}

export type Listener = (state: SessionState) => void;

export class ReviewSession {
  private state: SessionState = {
    phase: "idle",
    reviewer: "",
    task: null,
    payload: null,
    stats: null,
    confirmed: 0,
    rejected: 0,
    notice: "",
    error: "",
  };

  constructor(
    private readonly api: ApiClient,
    private readonly listener: Listener = () => {},
  ) {}

  snapshot(): SessionState {
    return { ...this.state };
  }

  private update(patch: Partial<SessionState>): void {
    this.state = { ...this.state, ...patch };
    this.listener(this.snapshot());
  }

  async start(reviewer: string): Promise<void> {
    this.update({ reviewer, notice: "" });
    await this.refreshStats();
    await this.loadNext();
  }

  async refreshStats(): Promise<void> {
    try {
      this.update({ stats: await this.api.stats() });
    } catch {
      // stats are cosmetic; the task flow decides error states
    }
  }

  async loadNext(): Promise<void> {
    if (!this.state.reviewer) {
      return;
    }
    this.update({ phase: "loading", task: null, payload: null });
    try {
      const result = await this.api.nextTask(this.state.reviewer);
      if (result.kind === "empty") {
        this.update({ phase: "empty" });
      } else {
        this.update({ phase: "reviewing", task: result.task, payload: result.payload });
      }
    } catch (err) {
      this.update({ phase: "error", error: `Cannot reach the review service: ${String(err)}` });
    }
  }

  async submit(verdict: Verdict, note: string): Promise<void> {
    if (this.state.phase !== "reviewing" || this.state.task === null) {
      return; // in-flight or nothing loaded: ignore (double-click guard)
    }
    const task = this.state.task;
    this.update({ phase: "submitting", notice: "" });
    let result;
    try {
      result = await this.api.submitVerdict(task.task_id, verdict, this.state.reviewer, note);
    } catch (err) {
      // keep the task on screen; a retry submits the same verdict cleanly
      this.update({
        phase: "reviewing",
        error: "",
        notice: `Submission failed, try again: ${String(err)}`,
      });
      return;
    }
    if (result.kind === "ok") {
      this.update({
        confirmed: this.state.confirmed + (verdict === "confirmed" ? 1 : 0),
        rejected: this.state.rejected + (verdict === "rejected" ? 1 : 0),
      });
    } else {
      this.update({ notice: `Task was already decided elsewhere (${result.message}).` });
    }
    await this.refreshStats();
    await this.loadNext();
  }

  async retry(): Promise<void> {
    if (this.state.phase === "error") {
      await this.loadNext();
    }
  }
}
