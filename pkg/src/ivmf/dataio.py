"""Canonical file formats: dataset/weight-scheme documents and report output.

Documents are JSON, UTF-8, schema-validated on load with unknown fields
rejected (the dataset's numbers are load-bearing, so transcription typos must
fail loudly). The canonical serialized form -- sorted keys, two-space indent,
trailing newline -- is byte-stable: serialize(parse(serialize(x))) is the
identity.
"""

from __future__ import annotations

import csv
import io
import json
from importlib import resources
from pathlib import Path

import jsonschema

from .model import (
    ComplexityClass,
    ComponentSpec,
    Dataset,
    ProtocolRecord,
    SecurityProperty,
    TrustAssignment,
    WeightScheme,
    check_weight_scheme,
    validate_dataset,
)
from .scoring import ScoreTable
from .stats import HistogramSpec, SensitivityRow
from .trustexpr import LintFinding

BUNDLED_DATASET_ID = "ivmf-2024"
BUNDLED_SCHEME_NAMES = ("default", "equal", "theoretical-pu0")

REPORT_FORMATS = ("json", "csv", "markdown")
_FORMAT_ALIASES = {"md": "markdown"}


class DataError(Exception):
    """Base for loader failures; ``code`` is stable and machine-readable."""

    code = "data-error"


class DataFileError(DataError):
    code = "file-not-found"


class DocumentError(DataError):
    """The file is not well-formed JSON."""

    code = "malformed-document"


class SchemaViolationError(DataError):
    code = "schema-violation"

    def __init__(self, path: str, violations: list[str]):
        self.violations = violations
        lines = "\n".join(f"  - {v}" for v in violations)
        super().__init__(f"{path}: document does not match schema:\n{lines}")


class InvariantViolationError(DataError):
    code = "invariant-violation"

    def __init__(self, path: str, findings):
        self.findings = list(findings)
        lines = "\n".join(f"  - {f}" for f in self.findings)
        super().__init__(f"{path}: dataset invariants violated:\n{lines}")


def canonical_dumps(document) -> str:
    """The one true on-disk/wire form; identical input gives identical bytes."""
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _reject_nonfinite(token: str):
    raise ValueError(f"non-finite number {token!r} is not allowed")


def _read_document(path: Path) -> dict:
    if not path.is_file():
        raise DataFileError(f"file not found: {path}")
    text = path.read_text(encoding="utf-8")
    try:
        return json.loads(text, parse_constant=_reject_nonfinite)
    except ValueError as exc:
        raise DocumentError(f"{path}: malformed JSON document: {exc}") from exc


def _schema(name: str) -> dict:
    text = resources.files("ivmf").joinpath(f"data/schema/{name}").read_text("utf-8")
    return json.loads(text)


def _validate_schema(document: dict, schema: dict, path: Path) -> None:
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(document), key=lambda e: list(e.absolute_path))
    if errors:
        violations = [
            f"{_json_path(err)}: {err.message}" for err in errors
        ]
        raise SchemaViolationError(str(path), violations)


def _json_path(error) -> str:
    parts = ["$"]
    for item in error.absolute_path:
        parts.append(f"[{item}]" if isinstance(item, int) else f".{item}")
    return "".join(parts)


def resolve_dataset_path(path: str | Path) -> Path:
    """Accept either the exact file or the file with a .json suffix left off."""
    p = Path(path)
    if not p.is_file() and p.suffix != ".json":
        with_suffix = p.with_name(p.name + ".json")
        if with_suffix.is_file():
            return with_suffix
    return p


# ---------------------------------------------------------------------------
# Dataset documents.


def dataset_from_document(document: dict) -> Dataset:
    protocols = []
    for entry in document["protocols"]:
        components = tuple(
            ComponentSpec(c["name"], ComplexityClass(c["class"]))
            for c in entry["components"]
        )
        assignments = {}
        for key, body in entry["properties"].items():
            prop = SecurityProperty(key)
            assignments[prop] = TrustAssignment(
                property=prop,
                score=body["score"],
                expression=body.get("expression"),
                justification=body.get("justification"),
            )
        protocols.append(
            ProtocolRecord(
                name=entry["name"],
                components=components,
                pu=entry["pu"],
                assignments=assignments,
                sources=tuple(entry["pu_sources"]),
            )
        )
    return Dataset(schema_version=document["schema_version"], protocols=tuple(protocols))


def dataset_to_document(dataset: Dataset) -> dict:
    protocols = []
    for record in dataset.protocols:
        properties = {}
        for prop in SecurityProperty:
            assignment = record.assignments[prop]
            body: dict = {"score": assignment.score}
            if assignment.expression is not None:
                body["expression"] = assignment.expression
            if assignment.justification is not None:
                body["justification"] = assignment.justification
            properties[prop.value] = body
        protocols.append(
            {
                "name": record.name,
                "components": [
                    {"name": c.name, "class": int(c.complexity_class)}
                    for c in record.components
                ],
                "pu": record.pu,
                "pu_sources": list(record.sources),
                "properties": properties,
            }
        )
    return {"schema_version": dataset.schema_version, "protocols": protocols}


def load_dataset(path: str | Path) -> Dataset:
    """Parse, schema-check and invariant-validate a dataset file."""
    p = resolve_dataset_path(path)
    document = _read_document(p)
    _validate_schema(document, _schema("dataset.schema.json"), p)
    dataset = dataset_from_document(document)
    findings = validate_dataset(dataset)
    if findings:
        raise InvariantViolationError(str(p), findings)
    return dataset


def bundled_dataset_path() -> Path:
    return Path(str(resources.files("ivmf").joinpath(f"data/{BUNDLED_DATASET_ID}.json")))


def load_bundled_dataset() -> Dataset:
    return load_dataset(bundled_dataset_path())


# ---------------------------------------------------------------------------
# Weight-scheme documents.


def weights_from_document(document: dict) -> WeightScheme:
    ivmf, tm = document["ivmf"], document["tm"]
    return WeightScheme(
        name=document["name"],
        w_cmpx=float(ivmf["cmpx"]),
        w_pu=float(ivmf["pu"]),
        w_tm=float(ivmf["tm"]),
        w_sec=float(tm["sec"]),
        w_anon=float(tm["anon"]),
        w_ivf=float(tm["ivf"]),
        w_uvf=float(tm["uvf"]),
        w_evf=float(tm["evf"]),
        w_cres=float(tm["cres"]),
    )


def weights_to_document(scheme: WeightScheme) -> dict:
    return {
        "name": scheme.name,
        "ivmf": {"cmpx": scheme.w_cmpx, "pu": scheme.w_pu, "tm": scheme.w_tm},
        "tm": {
            "sec": scheme.w_sec,
            "anon": scheme.w_anon,
            "ivf": scheme.w_ivf,
            "uvf": scheme.w_uvf,
            "evf": scheme.w_evf,
            "cres": scheme.w_cres,
        },
    }


def load_weights(path: str | Path) -> WeightScheme:
    p = resolve_dataset_path(path)
    document = _read_document(p)
    _validate_schema(document, _schema("weights.schema.json"), p)
    scheme = weights_from_document(document)
    findings = check_weight_scheme(scheme)
    if findings:
        raise InvariantViolationError(str(p), findings)
    return scheme


def bundled_weights_path(name: str = "default") -> Path:
    return Path(str(resources.files("ivmf").joinpath(f"data/weights/{name}.json")))


def load_bundled_weights(name: str = "default") -> WeightScheme:
    return load_weights(bundled_weights_path(name))


# ---------------------------------------------------------------------------
# Report serialization. Numeric display precision follows the published
# tables: raw composites 3 decimals, normalized values 4, r and R-squared 3,
# t 3, p 4.


def _fmt_raw(x: float) -> str:
    return f"{x:.3f}"


def _fmt_norm(x: float) -> str:
    return f"{x:.4f}"


def _opt(value: float | None, fmt) -> str:
    return "n/a" if value is None else fmt(value)


def score_table_document(table: ScoreTable) -> dict:
    """Wire form of a score table (also the POST /api/score response body)."""
    rows = []
    for row in table.by_rank():
        properties = {}
        for prop, ps in row.properties.items():
            body: dict = {"raw": ps.raw, "norm": round(ps.norm, 4)}
            if ps.expression is not None:
                body["expression"] = ps.expression
                body["expression_tier"] = ps.expression_tier
            body["mismatch"] = ps.mismatch
            properties[prop.value] = body
        rows.append(
            {
                "name": row.name,
                "rank": row.rank,
                "ivmf_norm": round(row.ivmf_norm, 4),
                "ivmf_raw": round(row.ivmf_raw, 3),
                "tm_rank": row.tm_rank,
                "tm_norm": round(row.tm_norm, 4),
                "tm_raw": round(row.tm_raw, 3),
                "cmpx_raw": row.cmpx_raw,
                "cmpx_norm": round(row.cmpx_norm, 4),
                "pu_raw": row.pu_raw,
                "pu_norm": round(row.pu_norm, 4),
                "properties": properties,
            }
        )
    return {
        "scheme": table.scheme,
        "n": len(table.rows),
        "warnings": list(table.warnings),
        "rows": rows,
    }


def sensitivity_document(rows: list[SensitivityRow]) -> dict:
    return {
        "rows": [
            {
                "baseline": r.baseline_scheme,
                "variant": r.variant_scheme,
                "level": r.level,
                "n": r.n,
                "r": round(r.r, 3),
                "r_squared": round(r.r_squared, 3),
                "t": None if r.t is None else round(r.t, 3),
                "p": None if r.p is None else round(r.p, 4),
                "flags": list(r.flags),
            }
            for r in rows
        ]
    }


def histogram_document(spec: HistogramSpec) -> dict:
    return {
        "bin_count": spec.bin_count,
        "range": [spec.lo, spec.hi],
        "counts": list(spec.counts),
        "total": sum(spec.counts),
    }


def lint_document(findings: list[LintFinding]) -> dict:
    return {
        "findings": [
            {
                "protocol": f.protocol,
                "property": f.property.value,
                "stored_score": f.stored_score,
                "expression": f.expression,
                "expression_tier": f.expression_tier,
                "message": f.message,
            }
            for f in findings
        ]
    }


def _md_table(header: list[str], rows: list[list[str]]) -> str:
    lines = [" | ".join(header), " | ".join(["---"] * len(header))]
    lines.extend(" | ".join(row) for row in rows)
    return "\n".join(lines) + "\n"


def _csv_table(header: list[str], rows: list[list[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)  # RFC 4180: quoting as needed, CRLF line ends
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _score_cells(table: ScoreTable) -> list[list[str]]:
    return [
        [
            row.name,
            str(row.rank),
            _fmt_norm(row.ivmf_norm),
            _fmt_raw(row.ivmf_raw),
            str(row.pu_raw),
        ]
        for row in table.by_rank()
    ]


_SCORE_HEADER = ["Name", "Rank", "Normalized", "Raw", "PU"]

_SCORE_CSV_HEADER = [
    "name", "rank", "ivmf_norm", "ivmf_raw", "tm_rank", "tm_norm", "tm_raw",
    "cmpx_raw", "cmpx_norm", "pu_raw", "pu_norm",
    "sec_raw", "sec_norm", "anon_raw", "anon_norm", "ivf_raw", "ivf_norm",
    "uvf_raw", "uvf_norm", "evf_raw", "evf_norm", "cres_raw", "cres_norm",
]


def _score_csv_cells(table: ScoreTable) -> list[list[str]]:
    rows = []
    for row in table.by_rank():
        cells = [
            row.name, str(row.rank), _fmt_norm(row.ivmf_norm), _fmt_raw(row.ivmf_raw),
            str(row.tm_rank), _fmt_norm(row.tm_norm), _fmt_raw(row.tm_raw),
            str(row.cmpx_raw), _fmt_norm(row.cmpx_norm),
            str(row.pu_raw), _fmt_norm(row.pu_norm),
        ]
        for prop in SecurityProperty:
            ps = row.properties[prop]
            cells.extend([str(ps.raw), _fmt_norm(ps.norm)])
        rows.append(cells)
    return rows


_SENS_HEADER = ["Baseline", "Variant", "Level", "n", "r", "R2", "t", "p", "Flags"]


def _sensitivity_cells(rows: list[SensitivityRow]) -> list[list[str]]:
    return [
        [
            r.baseline_scheme,
            r.variant_scheme,
            r.level,
            str(r.n),
            f"{r.r:.3f}",
            f"{r.r_squared:.3f}",
            _opt(r.t, lambda x: f"{x:.3f}"),
            _opt(r.p, lambda x: f"{x:.4f}"),
            "; ".join(r.flags),
        ]
        for r in rows
    ]


_HIST_HEADER = ["Bin", "Range", "Count"]


def _histogram_cells(spec: HistogramSpec) -> list[list[str]]:
    edges = spec.edges()
    rows = []
    for i, count in enumerate(spec.counts):
        closer = "]" if i == spec.bin_count - 1 else ")"
        rows.append(
            [str(i + 1), f"[{_fmt_norm(edges[i])}, {_fmt_norm(edges[i + 1])}{closer}", str(count)]
        )
    return rows


_LINT_HEADER = ["Protocol", "Property", "Stored", "Expression", "Tier", "Message"]


def _lint_cells(findings: list[LintFinding]) -> list[list[str]]:
    return [
        [
            f.protocol or "",
            f.property.value,
            str(f.stored_score),
            f.expression,
            "n/a" if f.expression_tier is None else str(f.expression_tier),
            f.message,
        ]
        for f in findings
    ]


def write_report(table, format: str = "markdown") -> str:
    """Render a ScoreTable, sensitivity rows, histogram, or lint findings.

    Output is deterministic: identical input produces identical bytes.
    """
    fmt = _FORMAT_ALIASES.get(format, format)
    if fmt not in REPORT_FORMATS:
        raise ValueError(f"unsupported format {format!r}; expected one of "
                         f"{REPORT_FORMATS + tuple(_FORMAT_ALIASES)}")

    if isinstance(table, ScoreTable):
        if not table.rows:
            raise ValueError("empty table")
        if fmt == "json":
            return canonical_dumps(score_table_document(table))
        if fmt == "csv":
            return _csv_table(_SCORE_CSV_HEADER, _score_csv_cells(table))
        return _md_table(_SCORE_HEADER, _score_cells(table))

    if isinstance(table, HistogramSpec):
        if fmt == "json":
            return canonical_dumps(histogram_document(table))
        cells = _histogram_cells(table)
        if fmt == "csv":
            return _csv_table(_HIST_HEADER, cells)
        return _md_table(_HIST_HEADER, cells)

    if isinstance(table, (list, tuple)):
        if not table:
            raise ValueError("empty table")
        if all(isinstance(r, SensitivityRow) for r in table):
            rows = list(table)
            if fmt == "json":
                return canonical_dumps(sensitivity_document(rows))
            cells = _sensitivity_cells(rows)
            if fmt == "csv":
                return _csv_table(_SENS_HEADER, cells)
            return _md_table(_SENS_HEADER, cells)
        if all(isinstance(r, LintFinding) for r in table):
            findings = list(table)
            if fmt == "json":
                return canonical_dumps(lint_document(findings))
            cells = _lint_cells(findings)
            if fmt == "csv":
                return _csv_table(_LINT_HEADER, cells)
            return _md_table(_LINT_HEADER, cells)

    raise TypeError(f"cannot render {type(table).__name__} as a report")
