"""Read-only HTTP endpoint layer over one loaded dataset.

The service holds exactly one immutable dataset; every request is scored
against it, so identical request bodies always produce identical response
bodies. Nothing is mutable over the wire.
"""

from __future__ import annotations

from pathlib import Path

import jsonschema
from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, PlainTextResponse

from .dataio import (
    BUNDLED_DATASET_ID,
    canonical_dumps,
    dataset_to_document,
    load_bundled_dataset,
    load_dataset,
    score_table_document,
    sensitivity_document,
    weights_from_document,
    _schema,
)
from .model import check_weight_scheme
from .scoring import ivmf_scores
from .stats import LEVELS, sensitivity_table

_JSON = "application/json; charset=utf-8"


def _weights_errors(document) -> list[dict]:
    """Field-level diagnostics for an invalid weight-scheme body."""
    if not isinstance(document, dict):
        return [{"field": "$", "message": "weight scheme must be an object"}]
    validator = jsonschema.Draft202012Validator(_schema("weights.schema.json"))
    errors = sorted(validator.iter_errors(document), key=lambda e: list(e.absolute_path))
    out = [
        {"field": ".".join(str(p) for p in err.absolute_path) or "$",
         "message": err.message}
        for err in errors
    ]
    if out:
        return out
    scheme = weights_from_document(document)
    return [
        {"field": finding.field, "message": finding.message}
        for finding in check_weight_scheme(scheme)
    ]


def _bad_request(errors: list[dict]) -> JSONResponse:
    return JSONResponse(status_code=400, content={"errors": errors})


def create_app(
    dataset_path: str | Path | None = None,
    cors_origins: list[str] | None = None,
) -> FastAPI:
    if dataset_path is None:
        dataset = load_bundled_dataset()
        dataset_id = BUNDLED_DATASET_ID
    else:
        dataset = load_dataset(dataset_path)
        dataset_id = Path(dataset_path).stem

    dataset_bytes = canonical_dumps(dataset_to_document(dataset)).encode("utf-8")

    app = FastAPI(title="ivmf scoring service", version="0.1.0", docs_url=None,
                  redoc_url=None)

    if cors_origins:
        from fastapi.middleware.cors import CORSMiddleware

        app.add_middleware(
            CORSMiddleware,
            allow_origins=list(cors_origins),
            allow_methods=["GET", "POST"],
            allow_headers=["*"],
        )

    @app.exception_handler(RequestValidationError)
    async def _body_error(request: Request, exc: RequestValidationError):
        errors = [
            {"field": ".".join(str(p) for p in err.get("loc", ())),
             "message": err.get("msg", "invalid body")}
            for err in exc.errors()
        ]
        return _bad_request(errors or [{"field": "$", "message": "invalid body"}])

    @app.get("/api/health")
    async def health() -> PlainTextResponse:
        return PlainTextResponse("ok")

    @app.get("/api/dataset")
    async def get_dataset() -> Response:
        return Response(content=dataset_bytes, media_type=_JSON)

    @app.post("/api/score")
    async def score(body: dict) -> Response:
        selector = body.get("dataset")
        if selector is not None and selector != dataset_id:
            return _bad_request(
                [{"field": "dataset",
                  "message": f"unknown dataset {selector!r}; this service hosts "
                             f"{dataset_id!r}"}]
            )
        weights_doc = body.get("weights")
        if weights_doc is None:
            return _bad_request([{"field": "weights", "message": "missing weights"}])
        errors = _weights_errors(weights_doc)
        if errors:
            return _bad_request(errors)
        if len(dataset.protocols) < 2:
            # Defensive: the loader already rejects datasets this small.
            return JSONResponse(
                status_code=422,
                content={"errors": [{"field": "dataset",
                                     "message": "dataset too small to normalize"}]},
            )
        table = ivmf_scores(dataset, weights_from_document(weights_doc))
        return Response(
            content=canonical_dumps(score_table_document(table)), media_type=_JSON
        )

    @app.post("/api/sensitivity")
    async def sensitivity(body: dict) -> Response:
        baseline_doc = body.get("baseline")
        variants_doc = body.get("variants")
        level = str(body.get("level", "IVMF")).upper()
        if level not in LEVELS:
            return _bad_request(
                [{"field": "level", "message": f"level must be one of {LEVELS}"}]
            )
        if baseline_doc is None:
            return _bad_request([{"field": "baseline", "message": "missing baseline"}])
        if not isinstance(variants_doc, list) or not variants_doc:
            return _bad_request(
                [{"field": "variants", "message": "at least one variant is required"}]
            )
        errors = [
            {"field": f"baseline.{e['field']}", "message": e["message"]}
            for e in _weights_errors(baseline_doc)
        ]
        for i, doc in enumerate(variants_doc):
            errors.extend(
                {"field": f"variants[{i}].{e['field']}", "message": e["message"]}
                for e in _weights_errors(doc)
            )
        if errors:
            return _bad_request(errors)
        rows = sensitivity_table(
            dataset,
            weights_from_document(baseline_doc),
            [weights_from_document(doc) for doc in variants_doc],
            level=level,
        )
        return Response(
            content=canonical_dumps(sensitivity_document(rows)), media_type=_JSON
        )

    return app
