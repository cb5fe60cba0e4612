"""HTTP/JSON interface for the review queue plus static asset serving.

Runs on the stdlib threading HTTP server: a desk-scale tool needs no web
framework, and all state mutations funnel through the queue's lock anyway.
"""

from __future__ import annotations

import errno
import json
import logging
import mimetypes
import re
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs

from .errors import (
    AlreadyDecided,
    LeaseHeldByOther,
    PortInUse,
    QueueEmpty,
    TaskNotFound,
)
from .store import Store
from .verification import VerificationQueue

log = logging.getLogger(__name__)

FALLBACK_PAGE = """<!doctype html>
<html><head><meta charset="utf-8"><title>amused review</title></head>
<body><h1>amused review service</h1>
<p>No review UI assets were found. The JSON API is live:</p>
<ul>
<li><code>GET /api/tasks/next?reviewer=&lt;id&gt;</code></li>
<li><code>POST /api/tasks/{task_id}/verdict</code></li>
<li><code>GET /api/stats</code></li>
</ul></body></html>
"""

_VERDICT_PATH = re.compile(r"^/api/tasks/([^/]+)/verdict$")


class _Handler(BaseHTTPRequestHandler):
    server_version = "amused/0.1"

    @property
    def queue(self) -> VerificationQueue:
        return self.server.queue

    def log_message(self, fmt, *args):
        log.debug("%s - %s", self.address_string(), fmt % args)

    def _send_json(self, status: int, payload):
        body = json.dumps(payload, ensure_ascii=False).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def do_GET(self):
        path, _, query = self.path.partition("?")
        if path == "/api/stats":
            self._send_json(200, self.queue.stats())
            return
        if path == "/api/tasks/next":
            params = parse_qs(query, keep_blank_values=True)
            reviewer = (params.get("reviewer") or [""])[0]
            if not reviewer:
                self._send_json(400, {"error": "reviewer query parameter required"})
                return
            try:
                task, payload = self.queue.next_task(reviewer)
            except QueueEmpty:
                self.send_response(204)
                self.end_headers()
                return
            self._send_json(200, {"task": task.to_dict(), "payload": payload})
            return
        self._serve_static(path)

    def do_POST(self):
        m = _VERDICT_PATH.match(self.path.partition("?")[0])
        if not m:
            self._send_json(404, {"error": "unknown endpoint"})
            return
        task_id = m.group(1)
        length = int(self.headers.get("Content-Length") or 0)
        try:
            body = json.loads(self.rfile.read(length) or b"{}")
        except ValueError:
            self._send_json(400, {"error": "invalid JSON body"})
            return
        try:
            task = self.queue.submit_verdict(
                task_id,
                verdict=body.get("verdict", ""),
                reviewer=body.get("reviewer", ""),
                note=body.get("note", ""),
            )
        except TaskNotFound:
            self._send_json(404, {"error": f"no task {task_id}"})
            return
        except (AlreadyDecided, LeaseHeldByOther) as exc:
            self._send_json(409, {"error": str(exc)})
            return
        except ValueError as exc:
            self._send_json(400, {"error": str(exc)})
            return
        self._send_json(200, {"task": task.to_dict()})

    def _serve_static(self, path: str):
        static_dir = self.server.static_dir
        if path == "/":
            path = "/index.html"
        if static_dir is not None:
            target = (static_dir / path.lstrip("/")).resolve()
            if target.is_file() and static_dir.resolve() in target.parents:
                ctype = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
                data = target.read_bytes()
                self.send_response(200)
                self.send_header("Content-Type", ctype)
                self.send_header("Content-Length", str(len(data)))
                self.end_headers()
                self.wfile.write(data)
                return
        if path == "/index.html":
            data = FALLBACK_PAGE.encode("utf-8")
            self.send_response(200)
            self.send_header("Content-Type", "text/html; charset=utf-8")
            self.send_header("Content-Length", str(len(data)))
            self.end_headers()
            self.wfile.write(data)
            return
        self._send_json(404, {"error": "not found"})


class ReviewServer:
    """Wraps the HTTP server with an explicit start/stop lifecycle."""

    def __init__(self, store: Store, port: int, static_dir: str | Path | None = None,
                 host: str = "127.0.0.1"):
        self.queue = VerificationQueue(store)
        try:
            self._httpd = ThreadingHTTPServer((host, port), _Handler)
        except OSError as exc:
            if exc.errno == errno.EADDRINUSE:
                raise PortInUse(f"port {port} already bound") from exc
            raise
        self._httpd.queue = self.queue
        self._httpd.static_dir = Path(static_dir) if static_dir else None
        self._httpd.daemon_threads = True
        self._serving = False

    @property
    def port(self) -> int:
        return self._httpd.server_address[1]

    def serve_forever(self):
        self._serving = True
        try:
            self._httpd.serve_forever()
        except KeyboardInterrupt:
            pass
        finally:
            self._serving = False
            self._httpd.server_close()

    def start_background(self):
        import threading
        self._serving = True
        thread = threading.Thread(target=self._httpd.serve_forever, daemon=True)
        thread.start()
        return thread

    def stop(self):
        # shutdown() blocks forever if serve_forever never ran
        if self._serving:
            self._httpd.shutdown()
            self._serving = False
        self._httpd.server_close()


def serve(store: Store, port: int, static_dir: str | Path | None = None,
          host: str = "127.0.0.1") -> ReviewServer:
    return ReviewServer(store, port, static_dir, host=host)
