// DOM rendering for the review session. The label shown comes verbatim from
// the API payload; no relabeling happens on the client.

import type { SessionState } from "./session.js";
import type { ReviewSession } from "./session.js";
import type { PostPayload, Verdict } from "./api.js";

function el(tag: string, className = "", text = ""): HTMLElement {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text) node.textContent = text;
  return node;
}

function mediaNode(post: PostPayload): HTMLElement {
  const wrap = el("div", "media");
  for (const url of post.media_refs) {
    const holder = el("div", "media-item");
    const placeholder = el("div", "media-missing", `media unavailable: ${url}`);
    placeholder.style.display = "none";
    const isVideo = post.modality === "video";
    const media = document.createElement(isVideo ? "video" : "img") as
      HTMLVideoElement | HTMLImageElement;
    media.src = url;
    if (media instanceof HTMLVideoElement) {
      media.controls = true;
    }
    media.onerror = () => {
      media.style.display = "none";
      placeholder.style.display = "block";
    };
    holder.append(media, placeholder);
    wrap.append(holder);
  }
  return wrap;
}

export function render(root: HTMLElement, state: SessionState, session: ReviewSession): void {
  root.textContent = "";

  const stats = el("div", "progress");
  const pending = state.stats ? state.stats.pending : "?";
  stats.textContent =
    `pending ${pending} | confirmed +${state.confirmed} | rejected +${state.rejected}`;
  stats.id = "progress";
  root.append(stats);

  if (state.notice) {
    root.append(el("div", "notice", state.notice));
  }

  if (state.phase === "error") {
    const banner = el("div", "banner error");
    banner.append(el("p", "", state.error));
    const retry = el("button", "", "Retry") as HTMLButtonElement;
    retry.id = "retry";
    retry.onclick = () => void session.retry();
    banner.append(retry);
    root.append(banner);
    return;
  }
  if (state.phase === "loading" || state.phase === "submitting") {
    root.append(el("div", "banner", "Working..."));
    if (state.phase === "loading") return;
  }
  if (state.phase === "empty") {
    root.append(el("div", "banner", "Queue empty - nothing left to review."));
    return;
  }
  if (state.task === null || state.payload === null) {
    return;
  }

  const { task, payload } = state;
  const card = el("section", "card");

  const badge = el("span", "badge", task.platform);
  badge.id = "platform-badge";
  const head = el("header", "card-head");
  head.append(badge, el("span", "uid", task.post_uid));
  card.append(head);

  const post = el("div", "post");
  if (payload.post) {
    if (payload.post.text_content) {
      post.append(el("p", "post-text", payload.post.text_content));
    }
    if (payload.post.media_refs.length > 0) {
      post.append(mediaNode(payload.post));
    }
    if (payload.post.author) {
      post.append(el("p", "author", `by ${payload.post.author}`));
    }
  } else {
    post.append(el("p", "post-missing", "post content unavailable"));
  }
  card.append(post);

  const context = el("div", "article-context");
  context.append(el("h2", "", payload.article_title));
  const source = el("a", "source-link", "open source article") as HTMLAnchorElement;
  source.href = payload.source_url;
  source.target = "_blank";
  source.rel = "noopener";
  context.append(source);
  context.append(el("p", "verdict", `journalist verdict: ${payload.article_verdict_raw}`));
  const label = el("p", "label", `assigned label: ${payload.label_norm}`);
  label.id = "assigned-label";
  context.append(label);
  card.append(context);

  const controls = el("div", "controls");
  const note = document.createElement("textarea");
  note.id = "note";
  note.placeholder = "note (kept in the audit log)";
  const busy = state.phase === "submitting";
  const submit = (verdict: Verdict) => void session.submit(verdict, note.value);
  const confirm = el("button", "confirm", "Confirm (c)") as HTMLButtonElement;
  confirm.id = "confirm";
  confirm.disabled = busy;
  confirm.onclick = () => submit("confirmed");
  const reject = el("button", "reject", "Reject (r)") as HTMLButtonElement;
  reject.id = "reject";
  reject.disabled = busy;
  reject.onclick = () => submit("rejected");
  controls.append(note, confirm, reject);
  card.append(controls);

  root.append(card);
}

// c -> confirm, r -> reject: must produce exactly the same request as the
// buttons, so both paths funnel through the rendered buttons' handlers.
export function bindKeyboard(root: HTMLElement): (event: KeyboardEvent) => void {
  const handler = (event: KeyboardEvent) => {
    if (event.target instanceof HTMLTextAreaElement ||
        event.target instanceof HTMLInputElement) {
      return; // typing a note
    }
    const id = event.key === "c" ? "confirm" : event.key === "r" ? "reject" : null;
    if (id) {
      const button = root.querySelector<HTMLButtonElement>(`#${id}`);
      if (button && !button.disabled) {
        button.click();
      }
    }
  };
  window.addEventListener("keydown", handler);
  return handler;
}
