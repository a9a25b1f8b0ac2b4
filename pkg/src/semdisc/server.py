"""Local HTTP/JSON API.

Every route delegates to the library and serializes with the same
`to_json_dict` methods the CLI uses, so responses match direct library
calls number-for-number.  Stateless apart from the optional session
store, which is lock-protected and per-session independent.
"""

from __future__ import annotations

import json
import threading
import uuid

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from .assignment import merit_balanced, merit_isolated, solve_nxn
from .associations import NoiseModel, load_bundled
from .distance import pairwise_report
from .errors import SemdiscError, UnknownNameError, ValidationError
from .inference import sample_assignment_distribution
from .interpret import (
    build_stimuli,
    predict_accuracy,
    predict_rt,
    prediction_csv,
    preset,
)
from .optimizer import (
    PaletteConstraints,
    enumerate_palettes,
    score_palette,
    swap_what_if,
)


def _envelope(status, code, message):
    return JSONResponse(
        status_code=status,
        content={"error": {"code": code, "message": message}},
    )


class _SessionStore:
    def __init__(self):
        self._lock = threading.Lock()
        self._sessions = {}

    def create(self, state):
        sid = uuid.uuid4().hex
        with self._lock:
            self._sessions[sid] = dict(state)
        return sid

    def get(self, sid):
        with self._lock:
            if sid not in self._sessions:
                raise UnknownNameError(f"unknown session: {sid}")
            return dict(self._sessions[sid])

    def update(self, sid, state):
        with self._lock:
            if sid not in self._sessions:
                raise UnknownNameError(f"unknown session: {sid}")
            self._sessions[sid].update(state)
            return dict(self._sessions[sid])


def _require(body, key, kind=None):
    if key not in body:
        raise ValidationError(f"missing field: {key}")
    value = body[key]
    if kind is not None and not isinstance(value, kind):
        raise ValidationError(f"field {key} has the wrong type")
    return value


def _noise(body):
    return NoiseModel(float(body.get("scale", 1.4)))


def create_app(ui_dir=None) -> FastAPI:
    app = FastAPI(
        title="semdisc",
        openapi_url="/v1/openapi.json",
        docs_url="/v1/docs",
        redoc_url=None,
    )
    table = load_bundled()
    sessions = _SessionStore()

    @app.exception_handler(UnknownNameError)
    async def _unknown(request, exc):
        return _envelope(404, "unknown_name", str(exc))

    @app.exception_handler(SemdiscError)
    async def _invalid(request, exc):
        return _envelope(400, "validation_error", str(exc))

    @app.exception_handler(RequestValidationError)
    async def _malformed(request, exc):
        return _envelope(400, "malformed_request", str(exc))

    @app.exception_handler(json.JSONDecodeError)
    async def _bad_json(request, exc):
        return _envelope(400, "malformed_request", f"invalid JSON: {exc}")

    @app.exception_handler(Exception)
    async def _internal(request, exc):
        return _envelope(500, "internal_error", str(exc))

    async def _body(request: Request) -> dict:
        try:
            body = await request.json()
        except json.JSONDecodeError as exc:
            raise ValidationError(f"invalid JSON: {exc}") from None
        if not isinstance(body, dict):
            raise ValidationError("request body must be a JSON object")
        return body

    def _subset(body):
        concepts = _require(body, "concepts", list)
        colors = _require(body, "colors", list)
        return table.subset([str(c) for c in concepts], [int(c) for c in colors])

    @app.get("/v1/colors")
    def colors():
        return {"colors": [c.to_json_dict() for c in table.colors]}

    @app.get("/v1/concepts")
    def concepts():
        return {"concepts": list(table.concepts)}

    @app.get("/v1/associations")
    def associations():
        """Full mean-rating matrix, keyed by concept in color-id order."""
        return {
            "concepts": list(table.concepts),
            "color_ids": table.color_ids,
            "ratings": {
                k: [float(v) for v in table.concept_row(k)] for k in table.concepts
            },
        }

    @app.post("/v1/semantic-distance")
    async def semantic_distance_route(request: Request):
        body = await _body(request)
        sub = _subset(body)
        report = pairwise_report(sub, _noise(body))
        out = report.to_json_dict()
        # full matrices for heatmap clients, alongside the canonical
        # lower-triangle serialization
        out["delta_s_matrix"] = report.delta_s.tolist()
        out["delta_e_matrix"] = report.delta_e.tolist()
        return out

    @app.post("/v1/assign")
    async def assign_route(request: Request):
        body = await _body(request)
        sub = _subset(body)
        kind = body.get("merit", "isolated")
        if kind == "isolated":
            merit = merit_isolated(sub)
        elif kind == "balanced":
            merit = merit_balanced(sub)
        else:
            raise ValidationError("merit must be 'isolated' or 'balanced'")
        return solve_nxn(merit).to_json_dict()

    @app.post("/v1/discriminability")
    async def discriminability_route(request: Request):
        body = await _body(request)
        sub = _subset(body)
        dist = sample_assignment_distribution(
            sub,
            _noise(body),
            samples=int(body.get("samples", 100_000)),
            seed=int(body.get("seed", 0)),
        )
        return dist.to_json_dict(n=len(sub.concepts))

    @app.post("/v1/predict")
    async def predict_route(request: Request):
        body = await _body(request)
        sub = _subset(body)
        rows = build_stimuli(sub, _noise(body))
        acc_spec = preset(str(body.get("model", "Acc 2.2")))
        rt_spec = preset(str(body["rt_model"])) if body.get("rt_model") else None
        include_ties = bool(body.get("include_ties", False))
        usable = [r for r in rows if include_ties or not r.tie]
        acc = predict_accuracy(rows, acc_spec, include_ties)
        rt = predict_rt(rows, rt_spec, include_ties) if rt_spec else [None] * len(usable)
        return {
            "model": acc_spec.label,
            "rt_model": rt_spec.label if rt_spec else None,
            "rows": [
                {
                    "target": r.target,
                    "color_pair": list(r.color_pair),
                    "correct_color": r.correct_color,
                    "delta_s": r.delta_s,
                    "delta_e": r.delta_e,
                    "assoc": r.assoc,
                    "tie": r.tie,
                    "pred_accuracy": pa,
                    "pred_rt_ms": prt,
                }
                for r, pa, prt in zip(usable, acc, rt)
            ],
            "csv": prediction_csv(rows, acc_spec=acc_spec, rt_spec=rt_spec,
                                  include_ties=include_ties),
        }

    @app.post("/v1/optimize")
    async def optimize_route(request: Request):
        body = await _body(request)
        concepts = _require(body, "concepts", list)
        constraints = (
            PaletteConstraints.from_json_dict(body["constraints"])
            if "constraints" in body
            else PaletteConstraints.default()
        )
        pool = body.get("pool")
        found = enumerate_palettes(
            table,
            tuple(str(c) for c in concepts),
            constraints,
            limit=int(body.get("limit", 20)),
            model=_noise(body),
            pool=[int(c) for c in pool] if pool else None,
            objective=str(body.get("objective", "mean_delta_s")),
        )
        if not found:
            return _envelope(422, "infeasible", "no feasible palette under these constraints")
        return {"palettes": [c.to_json_dict() for c in found]}

    @app.post("/v1/palette/swap")
    async def swap_route(request: Request):
        body = await _body(request)
        concepts = _require(body, "concepts", list)
        colors = [int(c) for c in _require(body, "colors", list)]
        candidate = score_palette(table, tuple(str(c) for c in concepts), colors,
                                  _noise(body))
        swapped = swap_what_if(
            candidate,
            int(_require(body, "remove")),
            int(_require(body, "add")),
            table,
            _noise(body),
        )
        return swapped.to_json_dict()

    @app.post("/v1/sessions")
    async def create_session(request: Request):
        body = await _body(request)
        sid = sessions.create(
            {
                "dataset": body.get("dataset", "uw58"),
                "concepts": body.get("concepts", []),
                "palette": body.get("palette", []),
                "seed": body.get("seed", 0),
            }
        )
        return {"session_id": sid, **sessions.get(sid)}

    @app.get("/v1/sessions/{sid}")
    def get_session(sid: str):
        return {"session_id": sid, **sessions.get(sid)}

    @app.put("/v1/sessions/{sid}")
    async def update_session(sid: str, request: Request):
        body = await _body(request)
        allowed = {k: body[k] for k in ("concepts", "palette", "seed") if k in body}
        return {"session_id": sid, **sessions.update(sid, allowed)}

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
