"""Registry of shipped example instances stored as JSON data files."""

from __future__ import annotations

import json
import os
from pathlib import Path

ENV_VAR = "BRANCHCOV_FIXTURES"
KINDS = ("plcov", "bezout", "fintop")


class UnknownFixture(KeyError):
    pass


def fixture_dir() -> Path:
    override = os.environ.get(ENV_VAR)
    if override:
        return Path(override)
    return Path(__file__).with_name("fixtures")


def names() -> list[str]:
    return sorted(p.stem for p in fixture_dir().glob("*.json"))


def load(name: str) -> dict:
    path = fixture_dir() / f"{name}.json"
    if not path.is_file():
        raise UnknownFixture(f"unknown fixture {name!r}")
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if data.get("kind") not in KINDS:
        raise ValueError(f"fixture {name!r}: field 'kind' must be one of {', '.join(KINDS)}")
    return data


def listing() -> list[dict]:
    out = []
    for name in names():
        data = load(name)
        out.append({"name": name, "kind": data["kind"], "description": data.get("description", "")})
    return out
