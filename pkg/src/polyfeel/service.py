"""HTTP shell around the engine: analyze/render endpoints plus a live clock.

The service owns a single session: one pattern with a revision counter,
its analyses, and a transport.  Every response is produced by the same
library calls a direct user would make, serialized with compact JSON, so
service output and library output are byte-identical.  Playback streams
pulse ticks of the rendered (swung) timeline over a server-sent event feed.
"""

from __future__ import annotations

import asyncio
import base64
import json
import threading

from fastapi import FastAPI, Request
from fastapi.responses import Response, StreamingResponse

from .analysis import analyze_pattern, build_report
from .errors import EngineError, PatternError
from .midi import export_midi
from .pattern import Pattern
from .render import PerformanceTimeline, RenderOptions, render
from .timing import FeelProfile

_OPTION_KEYS = {
    "velocityMode": "velocity_mode",
    "vMin": "v_min",
    "vMax": "v_max",
    "phraseAccentFirst": "phrase_accent_first",
    "phraseAccentLast": "phrase_accent_last",
    "laidBackMsPerBeat": "laid_back_ms_per_beat",
    "switchProbability": "switch_probability",
    "walkStep": "walk_step",
    "seed": "seed",
    "topK": "top_k",
}


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _json_response(obj, status_code: int = 200) -> Response:
    return Response(
        content=_dumps(obj), status_code=status_code, media_type="application/json"
    )


def _error(status: int, code: str, message: str, field=None) -> Response:
    return _json_response(
        {"code": code, "message": message, "field": field}, status_code=status
    )


def analyze_document(doc: dict) -> dict:
    """Library-level analyze: pattern document in, report document out."""
    pattern = Pattern.from_dict(doc)
    return build_report(analyze_pattern(pattern))


def options_from_dict(doc: dict) -> RenderOptions:
    kwargs = {}
    for wire_key, field_name in _OPTION_KEYS.items():
        if wire_key in doc:
            kwargs[field_name] = doc[wire_key]
    return RenderOptions(**kwargs)


class EngineSession:
    """One pattern, its analyses, and the transport; writes are serialized."""

    def __init__(self):
        self._lock = threading.Lock()
        self.pattern: Pattern | None = None
        self.analyses = []
        self.report: dict | None = None
        self.revision = 0
        self.transport = "stopped"
        self.playhead = (0, 0)
        self.snapshot: PerformanceTimeline | None = None
        self.epoch = 0

    def set_pattern(self, pattern: Pattern) -> tuple[int, dict]:
        with self._lock:
            analyses = analyze_pattern(pattern)
            self.pattern = pattern
            self.analyses = analyses
            self.report = build_report(analyses)
            self.revision += 1
            return self.revision, self.report

    def render_current(
        self, profile: FeelProfile, options: RenderOptions
    ) -> PerformanceTimeline:
        with self._lock:
            if self.pattern is None:
                raise EngineError("no pattern loaded")
            interpretation_lists = [
                list(a.interpretations) if a.ok else None for a in self.analyses
            ]
            phrase_list = [a.phrases if a.ok else None for a in self.analyses]
            return render(
                self.pattern, interpretation_lists, phrase_list, profile, options
            )

    def play(self, profile: FeelProfile, options: RenderOptions) -> None:
        snapshot = self.render_current(profile, options)
        with self._lock:
            self.snapshot = snapshot
            self.transport = "playing"
            self.playhead = (0, 0)
            self.epoch += 1

    def stop(self) -> None:
        with self._lock:
            self.transport = "stopped"
            self.epoch += 1

    async def clock_ticks(self):
        """Generate SSE frames for the rendered pulse grid, paced in real time.

        Emits one pass through the snapshot and ends (or ends early when the
        transport stops or a newer play supersedes this one).  A reconnecting
        client keeps the playhead looping, which is the default behaviour of
        a browser EventSource.
        """
        with self._lock:
            epoch = self.epoch
            snapshot = self.snapshot
            playing = self.transport == "playing"
        if not playing or snapshot is None or not snapshot.clock:
            return
        previous = 0.0
        for bar, pulse, t_ms in snapshot.clock:
            if self.transport != "playing" or self.epoch != epoch:
                return
            delay = (t_ms - previous) / 1000.0
            if delay > 0:
                await asyncio.sleep(delay)
            previous = t_ms
            self.playhead = (bar, pulse)
            yield "data: %s\n\n" % _dumps({"bar": bar, "pulse": pulse, "tMs": t_ms})
        tail = (snapshot.total_ms - previous) / 1000.0
        if tail > 0:
            await asyncio.sleep(tail)


def create_app(session: EngineSession | None = None) -> FastAPI:
    app = FastAPI(title="polyfeel engine")
    app.state.session = session or EngineSession()

    async def read_json(request: Request):
        try:
            return await request.json()
        except Exception:
            return None

    @app.post("/v1/analyze")
    async def analyze(request: Request):
        doc = await read_json(request)
        if not isinstance(doc, dict):
            return _error(400, "invalid_json", "body must be a pattern document")
        try:
            return _json_response(analyze_document(doc))
        except PatternError as exc:
            return _error(400, "invalid_pattern", str(exc), exc.field)

    @app.put("/v1/pattern")
    async def put_pattern(request: Request):
        doc = await read_json(request)
        if not isinstance(doc, dict):
            return _error(400, "invalid_json", "body must be a pattern document")
        try:
            pattern = Pattern.from_dict(doc)
        except PatternError as exc:
            return _error(400, "invalid_pattern", str(exc), exc.field)
        revision, report = app.state.session.set_pattern(pattern)
        return _json_response({"revision": revision, "report": report})

    @app.post("/v1/render")
    async def render_endpoint(request: Request):
        session: EngineSession = app.state.session
        doc = await read_json(request)
        doc = doc if isinstance(doc, dict) else {}
        if session.pattern is None:
            return _error(400, "no_pattern", "store a pattern first", "pattern")
        if "revision" in doc and doc["revision"] != session.revision:
            return _error(
                409,
                "stale_revision",
                "pattern changed since this analysis; re-analyze and retry",
                "revision",
            )
        notes = []
        if isinstance(doc.get("profile"), dict):
            profile = FeelProfile.from_dict(doc["profile"])
        else:
            profile = FeelProfile()
            notes.append("default profile applied")
        try:
            options = options_from_dict(doc.get("options") or {})
        except EngineError as exc:
            return _error(400, "invalid_options", str(exc), "options")
        if not isinstance(doc.get("options"), dict):
            notes.append("default options applied")
        timeline = session.render_current(profile, options)
        payload = timeline.to_dict()
        payload["notes"] = notes
        if doc.get("midi"):
            payload["smfBase64"] = base64.b64encode(export_midi(timeline)).decode()
        return _json_response(payload)

    @app.post("/v1/transport")
    async def transport(request: Request):
        session: EngineSession = app.state.session
        doc = await read_json(request)
        doc = doc if isinstance(doc, dict) else {}
        action = doc.get("action")
        if action == "play":
            if session.pattern is None:
                return _error(400, "no_pattern", "store a pattern first", "pattern")
            options_doc = dict(doc.get("options") or {})
            if "seed" in doc:
                options_doc["seed"] = doc["seed"]
            profile = (
                FeelProfile.from_dict(doc["profile"])
                if isinstance(doc.get("profile"), dict)
                else FeelProfile()
            )
            try:
                options = options_from_dict(options_doc)
            except EngineError as exc:
                return _error(400, "invalid_options", str(exc), "options")
            session.play(profile, options)
        elif action == "stop":
            session.stop()
        else:
            return _error(400, "invalid_action", "action must be play or stop", "action")
        return _json_response(
            {"transport": session.transport, "revision": session.revision}
        )

    @app.get("/v1/clock")
    async def clock():
        session: EngineSession = app.state.session
        return StreamingResponse(
            session.clock_ticks(), media_type="text/event-stream"
        )

    return app
