// Thin client over the review service JSON API. All corpus mutations go
// through here; the UI never touches storage directly.

export interface TaskRecord {
  task_id: string;
  platform: string;
  post_uid: string;
  news_id: string;
  sampled_at: string;
  verdict: string;
  reviewer: string | null;
  reviewed_at: string | null;
  note: string;
}

export interface PostPayload {
  platform: string;
  post_uid: string;
  modality: string;
  text_content: string;
  media_refs: string[];
  author: string;
  posted_at: string | null;
  metrics: Record<string, number>;
  fetch_status: string;
  fetched_at: string;
}

export interface TaskPayload {
  post: PostPayload | null;
  article_title: string;
  article_verdict_raw: string;
  label_norm: string;
  source_url: string;
}

export interface Stats {
  pending: number;
  confirmed: number;
  rejected: number;
  by_platform: Record<string, { pending: number; confirmed: number; rejected: number }>;
}

export type NextTaskResult =
  | { kind: "task"; task: TaskRecord; payload: TaskPayload }
  | { kind: "empty" };

export type VerdictResult =
  | { kind: "ok"; task: TaskRecord }
  | { kind: "conflict"; message: string }
  | { kind: "not_found"; message: string };

export type Verdict = "confirmed" | "rejected";

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: typeof fetch = (...args) => fetch(...args),
  ) {}

  async nextTask(reviewer: string): Promise<NextTaskResult> {
    const resp = await this.fetchFn(
      `${this.baseUrl}/api/tasks/next?reviewer=${encodeURIComponent(reviewer)}`,
    );
    if (resp.status === 204) {
      return { kind: "empty" };
    }
    if (!resp.ok) {
      throw new Error(`next task failed: HTTP ${resp.status}`);
    }
    const body = (await resp.json()) as { task: TaskRecord; payload: TaskPayload };
    return { kind: "task", task: body.task, payload: body.payload };
  }

  async submitVerdict(
    taskId: string,
    verdict: Verdict,
    reviewer: string,
    note: string,
  ): Promise<VerdictResult> {
    const resp = await this.fetchFn(
      `${this.baseUrl}/api/tasks/${encodeURIComponent(taskId)}/verdict`,
      {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ verdict, reviewer, note }),
      },
    );
    if (resp.status === 404) {
      return { kind: "not_found", message: await errorMessage(resp) };
    }
    if (resp.status === 409) {
      return { kind: "conflict", message: await errorMessage(resp) };
    }
    if (!resp.ok) {
      throw new Error(`verdict failed: HTTP ${resp.status}`);
    }
    const body = (await resp.json()) as { task: TaskRecord };
    return { kind: "ok", task: body.task };
  }

  async stats(): Promise<Stats> {
    const resp = await this.fetchFn(`${this.baseUrl}/api/stats`);
    if (!resp.ok) {
      throw new Error(`stats failed: HTTP ${resp.status}`);
    }
    return (await resp.json()) as Stats;
  }
}

async function errorMessage(resp: Response): Promise<string> {
  try {
    const body = (await resp.json()) as { error?: string };
    return body.error ?? `HTTP ${resp.status}`;
  } catch {
    return `HTTP ${resp.status}`;
  }
}
