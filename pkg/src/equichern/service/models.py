"""Pydantic request/response models for the verification service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field


class RunRequest(BaseModel):
    command: Literal["verify-core", "universal-check", "series", "anomaly", "all"] = "all"
    scenario_text: str = Field(description="scenario file contents")
    truncation: Optional[int] = Field(default=None, description="override the scenario truncation")


class CheckModel(BaseModel):
    name: str
    suite: str
    status: Literal["PASS", "FAIL"]
    value: str


class RunResponse(BaseModel):
    exit_code: int
    report: str
    checks: list[CheckModel]
    failed_suites: list[str]


class SchemaErrorModel(BaseModel):
    line: int
    message: str


class ValidateRequest(BaseModel):
    scenario_text: str


class ValidateResponse(BaseModel):
    valid: bool
    errors: list[SchemaErrorModel] = []
    canonical_text: Optional[str] = None


class SeriesResponse(BaseModel):
    name: str
    degree: int
    normalization: Optional[str] = None
    log_coefficients: dict[str, str]
    expansion: dict[str, str]


class HealthResponse(BaseModel):
    status: str
    version: str
