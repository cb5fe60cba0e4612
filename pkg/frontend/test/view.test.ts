// @vitest-environment jsdom
import { describe, expect, it } from "vitest";
import type { SessionState } from "../src/session.js";
import { ReviewSession } from "../src/session.js";
import { bindKeyboard, render } from "../src/view.js";

const baseState: SessionState = {
  phase: "reviewing",
  reviewer: "alice",
  task: {
    task_id: "t1", platform: "YouTube", post_uid: "vid123", news_id: "PY1",
    sampled_at: "2020-09-15T12:00:00Z", verdict: "pending",
    reviewer: null, reviewed_at: null, note: "",
  },
  payload: {
    post: {
      platform: "YouTube", post_uid: "vid123", modality: "video",
      text_content: "", media_refs: ["https://media.example/vid123.mp4"],
      author: "NewsChannel", posted_at: null, metrics: { views: 10 },
      fetch_status: "fetched", fetched_at: "2020-09-01T00:00:00Z",
    },
    article_title: "A claim about a video",
    article_verdict_raw: "False",
    label_norm: "false",
    source_url: "https://factcheck.example/claims/1",
  },
  stats: { pending: 3, confirmed: 0, rejected: 0, by_platform: {} },
  confirmed: 1,
  rejected: 0,
  notice: "",
  error: "",
};

function sessionRecordingSubmits(submits: Array<[string, string]>) {
  const session = new ReviewSession({} as never);
  session.submit = async (verdict, note) => {
    submits.push([verdict, note]);
  };
  return session;
}

describe("render", () => {
  it("shows platform badge, verbatim label, and source link", () => {
    const root = document.createElement("div");
    render(root, baseState, sessionRecordingSubmits([]));
    expect(root.querySelector("#platform-badge")?.textContent).toBe("YouTube");
    expect(root.querySelector("#assigned-label")?.textContent).toBe("assigned label: false");
    const link = root.querySelector<HTMLAnchorElement>("a.source-link");
    expect(link?.href).toBe("https://factcheck.example/claims/1");
    expect(root.querySelector("#progress")?.textContent).toContain("pending 3");
    expect(root.querySelector("video")).not.toBeNull();
    expect(root.querySelector(".media-missing")).not.toBeNull(); // hidden placeholder ready
  });

  it("keyboard shortcuts trigger the same submits as the buttons", () => {
    const root = document.createElement("div");
    document.body.append(root);
    const submits: Array<[string, string]> = [];
    const session = sessionRecordingSubmits(submits);
    render(root, baseState, session);
    bindKeyboard(root);

    (root.querySelector("#note") as HTMLTextAreaElement).value = "same note";
    root.querySelector<HTMLButtonElement>("#confirm")!.click();
    window.dispatchEvent(new KeyboardEvent("keydown", { key: "c" }));
    window.dispatchEvent(new KeyboardEvent("keydown", { key: "r" }));
    expect(submits).toEqual([
      ["confirmed", "same note"],
      ["confirmed", "same note"],
      ["rejected", "same note"],
    ]);
    root.remove();
  });

  it("disables buttons while a verdict is in flight", () => {
    const root = document.createElement("div");
    document.body.append(root);
    const submits: Array<[string, string]> = [];
    render(root, { ...baseState, phase: "submitting" }, sessionRecordingSubmits(submits));
    bindKeyboard(root);
    expect(root.querySelector<HTMLButtonElement>("#confirm")?.disabled).toBe(true);
    window.dispatchEvent(new KeyboardEvent("keydown", { key: "c" }));
    expect(submits).toEqual([]);
    root.remove();
  });

  it("renders the empty-queue and error states", () => {
    const root = document.createElement("div");
    render(root, { ...baseState, phase: "empty", task: null, payload: null },
           sessionRecordingSubmits([]));
    expect(root.textContent).toContain("Queue empty");

    let retried = false;
    const session = sessionRecordingSubmits([]);
    session.retry = async () => { retried = true; };
    render(root, { ...baseState, phase: "error", task: null, payload: null,
                   error: "Cannot reach the review service" }, session);
    expect(root.textContent).toContain("Cannot reach the review service");
    root.querySelector<HTMLButtonElement>("#retry")!.click();
    expect(retried).toBe(true);
  });
});
