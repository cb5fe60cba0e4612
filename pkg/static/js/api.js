// Thin client over the review service JSON API. All corpus mutations go
// through here; the UI never touches storage directly.
export class ApiClient {
    constructor(baseUrl = "", fetchFn = (...args) => fetch(...args)) {
        this.baseUrl = baseUrl;
        this.fetchFn = fetchFn;
    }
    async nextTask(reviewer) {
        const resp = await this.fetchFn(`${this.baseUrl}/api/tasks/next?reviewer=${encodeURIComponent(reviewer)}`);
        if (resp.status === 204) {
            return { kind: "empty" };
        }
        if (!resp.ok) {
            throw new Error(`next task failed: HTTP ${resp.status}`);
        }
        const body = (await resp.json());
        return { kind: "task", task: body.task, payload: body.payload };
    }
    async submitVerdict(taskId, verdict, reviewer, note) {
        const resp = await this.fetchFn(`${this.baseUrl}/api/tasks/${encodeURIComponent(taskId)}/verdict`, {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify({ verdict, reviewer, note }),
        });
        if (resp.status === 404) {
            return { kind: "not_found", message: await errorMessage(resp) };
        }
        if (resp.status === 409) {
            return { kind: "conflict", message: await errorMessage(resp) };
        }
        if (!resp.ok) {
            throw new Error(`verdict failed: HTTP ${resp.status}`);
        }
        const body = (await resp.json());
        return { kind: "ok", task: body.task };
    }
    async stats() {
        const resp = await this.fetchFn(`${this.baseUrl}/api/stats`);
        if (!resp.ok) {
            throw new Error(`stats failed: HTTP ${resp.status}`);
        }
        return (await resp.json());
    }
}
async function errorMessage(resp) {
    try {
        const body = (await resp.json());
        return body.error ?? `HTTP ${resp.status}`;
    }
    catch {
        return `HTTP ${resp.status}`;
    }
}
