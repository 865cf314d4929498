"""
Result documents emitted by the CLI.

Every document embeds a RunManifest with the command line, the random seeds
and the evaluator parameters needed to reproduce it. JSON documents carry
the manifest under ``manifest``; TSV documents start with one ``# key=value``
comment line per manifest field.
"""

import json
import shlex
from datetime import datetime, timezone
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, Field

from lt_influence import __version__


class OutputFormat(str, Enum):
    JSON = "json"
    TSV = "tsv"


class RunManifest(BaseModel):
    command_line: str = Field(..., description="The invocation, shell-quoted")
    rng_seeds: List[int] = Field(default_factory=list)
    evaluator: Dict[str, Any] = Field(default_factory=dict)
    tool_version: str = Field(__version__)
    timestamp: str = Field(..., description="UTC time the run started, ISO 8601")

    @classmethod
    def capture(
        cls,
        argv: Sequence[str],
        rng_seeds: Sequence[int] = (),
        evaluator: Optional[Dict[str, Any]] = None,
        prog_name: str = "lt-influence",
    ) -> "RunManifest":
        return cls(
            command_line=shlex.join([prog_name, *argv]),
            rng_seeds=list(rng_seeds),
            evaluator=evaluator or {},
            timestamp=datetime.now(timezone.utc).isoformat(timespec="seconds"),
        )

    def comment_lines(self) -> List[str]:
        lines = []
        for key, value in self.model_dump(mode="json").items():
            if isinstance(value, (dict, list)):
                value = json.dumps(value, sort_keys=True)
            lines.append(f"# {key}={value}")
        return lines


class TSVTable(BaseModel):
    header: List[str]
    rows: List[List[Any]] = Field(default_factory=list)


class ResultDocument(BaseModel):
    """
    A command's result: a JSON payload, and optionally a table that replaces
    the key/value rendering of the payload in TSV output.
    """

    manifest: RunManifest
    payload: Dict[str, Any] = Field(default_factory=dict)
    table: Optional[TSVTable] = None


def _plain(value: Any) -> Any:
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, BaseModel):
        return _plain(value.model_dump(mode="json"))
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [_plain(v) for v in items]
    return value


def _cell(value: Any) -> str:
    value = _plain(value)
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, list) and all(isinstance(v, (int, float)) for v in value):
        return ",".join(_cell(v) for v in value)
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True)
    return str(value)


def render(document: ResultDocument, fmt: OutputFormat) -> str:
    if fmt == OutputFormat.JSON:
        body = {**_plain(document.payload), "manifest": document.manifest.model_dump(mode="json")}
        return json.dumps(body, indent=2) + "\n"

    lines = document.manifest.comment_lines()
    if document.table is not None:
        lines.append("\t".join(document.table.header))
        lines.extend("\t".join(_cell(cell) for cell in row) for row in document.table.rows)
    else:
        lines.extend(f"{key}\t{_cell(value)}" for key, value in document.payload.items())
    return "\n".join(lines) + "\n"
