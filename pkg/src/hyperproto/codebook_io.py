"""Codebook files: a JSON header line followed by one CSV row per prototype.

    # hyperproto-codebook {"schema_version": 1, "scheme": "rm", "K": 100, ...}
    -0.125,0.125,...
    ...

Values are written with 17 significant digits, which round-trips IEEE
doubles exactly.  A pure-JSON variant ``{"header": {...}, "vectors": [...]}``
is also accepted and written with ``fmt="json"``.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .sphere_map import Codebook, Scheme

SCHEMA_VERSION = 1
MAGIC = "# hyperproto-codebook "


class CodebookFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def header_for(cb: Codebook) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "scheme": cb.scheme.value,
        "K": cb.num_classes,
        "n": cb.dim,
        "seed": cb.params.get("seed"),
        "assignment_seed": cb.assignment_seed,
        "params": cb.params,
        "certified_max_cosine_bound": cb.certified_max_cosine,
    }


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def dumps(cb: Codebook, fmt: str = "csv") -> str:
    header = header_for(cb)
    if fmt == "json":
        return json.dumps({"header": header, "vectors": cb.vectors.tolist()}, indent=1) + "\n"
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [MAGIC + json.dumps(header, sort_keys=True)]
    lines.extend(",".join(_fmt(x) for x in row) for row in cb.vectors)
    return "\n".join(lines) + "\n"


def write_codebook(cb: Codebook, path, fmt: str = "csv") -> None:
    Path(path).write_text(dumps(cb, fmt))


def _from_header(header: dict, vectors: np.ndarray, line: int | None) -> Codebook:
    try:
        version = header["schema_version"]
        scheme = Scheme(header["scheme"])
        K, n = int(header["K"]), int(header["n"])
    except (KeyError, ValueError, TypeError) as exc:
        raise CodebookFormatError(f"bad header: {exc}", line) from exc
    if version != SCHEMA_VERSION:
        raise CodebookFormatError(f"unsupported schema_version {version}", line)
    if vectors.shape != (K, n):
        raise CodebookFormatError(f"header declares {K}x{n} but body is {vectors.shape[0]}x{vectors.shape[1] if vectors.ndim == 2 else 0}")
    try:
        return Codebook(
            vectors,
            scheme,
            header.get("assignment_seed"),
            dict(header.get("params") or {}),
            header.get("certified_max_cosine_bound"),
        )
    except ValueError as exc:
        raise CodebookFormatError(str(exc)) from exc


def loads(text: str) -> Codebook:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CodebookFormatError(exc.msg, exc.lineno) from exc
        try:
            vectors = np.array(doc["vectors"], dtype=np.float64)
            header = doc["header"]
        except (KeyError, ValueError, TypeError) as exc:
            raise CodebookFormatError(f"malformed JSON codebook: {exc}") from exc
        return _from_header(header, vectors, None)

    lines = text.splitlines()
    if not lines or not lines[0].startswith(MAGIC):
        raise CodebookFormatError("missing codebook header", 1)
    try:
        header = json.loads(lines[0][len(MAGIC):])
    except json.JSONDecodeError as exc:
        raise CodebookFormatError(f"header is not valid JSON ({exc.msg})", 1) from exc
    if not isinstance(header, dict):
        raise CodebookFormatError("header must be a JSON object", 1)
    n = header.get("n")
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            row = [float(x) for x in line.split(",")]
        except ValueError as exc:
            raise CodebookFormatError(f"non-numeric value ({exc})", lineno) from exc
        if n is not None and len(row) != n:
            raise CodebookFormatError(f"expected {n} values, found {len(row)}", lineno)
        rows.append(row)
    if not rows:
        raise CodebookFormatError("codebook has no rows", len(lines))
    return _from_header(header, np.array(rows, dtype=np.float64), 1)


def read_codebook(path) -> Codebook:
    return loads(Path(path).read_text())
