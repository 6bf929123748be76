from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Any

import yaml
from pydantic import BaseModel, Field, ValidationError

from fmsync.exception import SuiteError


class CaseSpec(BaseModel):
    name: str = Field(description="Case name shown in reports")
    graph: Path = Field(description="Graph file, relative to the suite file")
    depth: int | None = Field(default=None, description="Divide depth cap for this case")
    general: str | None = Field(default=None, description="Overrides the file's general")


class SuiteSpec(BaseModel):
    cases: list[CaseSpec] = Field(default_factory=list, description="Verification cases")


@dataclass(frozen=True, slots=True, kw_only=True)
class SuiteCase:
    name: str
    graph_file: Path
    depth: int | None
    general: str | None


def load_suite(suite_file: Path) -> list[SuiteCase]:
    if not suite_file.exists():
        raise SuiteError(f"Suite file not found: {suite_file}")
    if not suite_file.is_file():
        raise SuiteError(f"Suite path is not a file: {suite_file}")
    try:
        with open(suite_file, encoding="utf-8") as f:
            data: dict[str, Any] = yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        raise SuiteError(f"Invalid YAML in suite file: {e}") from e
    if not isinstance(data, dict):
        raise SuiteError("Suite file must contain a mapping")

    version = data.get("version", 1)
    if version != 1:
        raise SuiteError(f"Unsupported suite version: {version}")

    try:
        spec = SuiteSpec(cases=data.get("cases", []))
    except ValidationError as e:
        raise SuiteError(f"Invalid suite file: {e}") from e

    names = [case.name for case in spec.cases]
    if len(set(names)) != len(names):
        raise SuiteError("Case names must be unique")
    for case in spec.cases:
        if case.depth is not None and case.depth < 1:
            raise SuiteError(f"Case {case.name}: depth must be at least 1")

    return [
        SuiteCase(
            name=case.name,
            graph_file=(suite_file.parent / case.graph).absolute(),
            depth=case.depth,
            general=case.general,
        )
        for case in spec.cases
    ]
