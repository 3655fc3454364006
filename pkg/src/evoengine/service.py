"""HTTP face of the engine: validation, classification, presets, runs.

Runs execute on background threads; an in-memory registry keeps their
growing history. Clients either poll the snapshot endpoint or subscribe
to the per-run SSE stream, which replays the full history from the start
and ends with a terminal event. Completed runs stay available until
deleted.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field
from typing import Optional

from fastapi import FastAPI, HTTPException, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import StreamingResponse
from fastapi.staticfiles import StaticFiles

from .engine import GenerationStats, StopReason, run
from .errors import EngineError
from .experiment import Experiment
from .model import EngineConfig, to_wire, validate
from .presets import PresetRequest, apply_preset, classify
from .problems import make_problem


@dataclass
class RunState:
    run_id: str
    experiment: Experiment
    condition: threading.Condition = field(default_factory=threading.Condition)
    history: list[GenerationStats] = field(default_factory=list)
    status: str = "running"
    stop_reason: Optional[StopReason] = None
    best_fitness: Optional[float] = None
    error: Optional[str] = None

    def snapshot(self) -> dict:
        with self.condition:
            body = {
                "runId": self.run_id,
                "status": self.status,
                "history": [to_wire(s) for s in self.history],
            }
            if self.stop_reason is not None:
                body["stopReason"] = self.stop_reason.value
            if self.best_fitness is not None:
                body["best"] = self.best_fitness
            if self.error is not None:
                body["error"] = self.error
            return body


class RunRegistry:
    def __init__(self):
        self._lock = threading.Lock()
        self._runs: dict[str, RunState] = {}

    def create(self, experiment: Experiment) -> RunState:
        state = RunState(run_id=uuid.uuid4().hex, experiment=experiment)
        with self._lock:
            self._runs[state.run_id] = state
        thread = threading.Thread(target=_execute, args=(state,), daemon=True)
        thread.start()
        return state

    def get(self, run_id: str) -> Optional[RunState]:
        with self._lock:
            return self._runs.get(run_id)

    def delete(self, run_id: str) -> bool:
        with self._lock:
            return self._runs.pop(run_id, None) is not None


def _execute(state: RunState) -> None:
    def on_generation(stats: GenerationStats) -> None:
        with state.condition:
            state.history.append(stats)
            state.condition.notify_all()

    try:
        record = run(
            state.experiment.engine,
            state.experiment.run,
            make_problem(state.experiment.problem),
            on_generation=on_generation,
        )
        with state.condition:
            state.status = "finished"
            state.stop_reason = record.stop_reason
            state.best_fitness = record.best.fitness
            state.condition.notify_all()
    except Exception as exc:  # surfaced through the snapshot and stream
        with state.condition:
            state.status = "failed"
            state.error = str(exc)
            state.condition.notify_all()


def _sse(event: str, data: dict) -> str:
    return f"event: {event}\ndata: {json.dumps(data)}\n\n"


def create_app(static_dir: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="evoengine")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    registry = RunRegistry()

    @app.get("/api/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/api/validate")
    def validate_config(config: EngineConfig) -> dict:
        return to_wire(validate(config))

    @app.post("/api/classify")
    def classify_config(config: EngineConfig) -> dict:
        report = validate(config)
        if not report.feasible:
            raise HTTPException(
                status_code=400,
                detail={
                    "code": "INFEASIBLE_CONFIG",
                    "violations": [to_wire(v) for v in report.violations],
                },
            )
        return {"paradigm": classify(config).value}

    @app.post("/api/preset")
    def preset_config(request: PresetRequest) -> dict:
        try:
            return to_wire(apply_preset(request.paradigm, request.params))
        except EngineError as err:
            raise HTTPException(
                status_code=400,
                detail={"code": err.code, "message": str(err)},
            )

    @app.post("/api/runs", status_code=201)
    def start_run(experiment: Experiment) -> dict:
        report = validate(experiment.engine)
        if not report.feasible:
            raise HTTPException(
                status_code=400,
                detail={
                    "code": "INFEASIBLE_CONFIG",
                    "violations": [to_wire(v) for v in report.violations],
                },
            )
        state = registry.create(experiment)
        return {"runId": state.run_id}

    def _lookup(run_id: str) -> RunState:
        state = registry.get(run_id)
        if state is None:
            raise HTTPException(status_code=404, detail="unknown run")
        return state

    @app.get("/api/runs/{run_id}")
    def run_snapshot(run_id: str) -> dict:
        return _lookup(run_id).snapshot()

    @app.get("/api/runs/{run_id}/events")
    def run_events(run_id: str) -> StreamingResponse:
        state = _lookup(run_id)

        def stream():
            cursor = 0
            while True:
                with state.condition:
                    while (
                        cursor >= len(state.history) and state.status == "running"
                    ):
                        state.condition.wait(timeout=0.5)
                    batch = list(state.history[cursor:])
                    status = state.status
                    reason = state.stop_reason
                    error = state.error
                for stats in batch:
                    yield _sse("generation", to_wire(stats))
                cursor += len(batch)
                if status != "running":
                    terminal = {"runId": run_id, "status": status}
                    if reason is not None:
                        terminal["stopReason"] = reason.value
                    if error is not None:
                        terminal["error"] = error
                    yield _sse("complete", terminal)
                    return

        return StreamingResponse(
            stream(),
            media_type="text/event-stream",
            headers={"Cache-Control": "no-cache", "Connection": "keep-alive"},
        )

    @app.delete("/api/runs/{run_id}", status_code=204)
    def delete_run(run_id: str) -> Response:
        if not registry.delete(run_id):
            raise HTTPException(status_code=404, detail="unknown run")
        return Response(status_code=204)

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="panel")

    return app


app = create_app()
