"""Versioned JSON envelope around every command's payload."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from branchcov import __version__

SCHEMA = "branchcov.report/1"


@dataclass
class ReportEnvelope:
    command: list[str]
    payload: dict
    seed: int | None = None
    timing: dict[str, str] = field(default_factory=dict)
    tool_version: str = __version__
    schema: str = SCHEMA

    def to_json(self) -> dict:
        out = {
            "schema": self.schema,
            "tool_version": self.tool_version,
            "command": list(self.command),
            "payload": self.payload,
            "timing": dict(self.timing),
        }
        if self.seed is not None:
            out["seed"] = self.seed
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, data) -> ReportEnvelope:
        if isinstance(data, str):
            data = json.loads(data)
        if data.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {data.get('schema')!r}")
        return cls(
            command=data["command"],
            payload=data["payload"],
            seed=data.get("seed"),
            timing=data.get("timing", {}),
            tool_version=data["tool_version"],
        )


class Timer:
    """Context manager recording elapsed wall time as a decimal string in seconds."""

    def __enter__(self) -> Timer:
        self.start = time.perf_counter()
        self.seconds = "0"
        return self

    def __exit__(self, *exc) -> None:
        self.seconds = f"{time.perf_counter() - self.start:.6f}"
