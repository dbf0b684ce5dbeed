"""Run configuration shared by the CLI and the search drivers.

Precedence: built-in defaults < config file (key=value lines) < flags.
``RIESZ_LAB_THREADS`` caps worker threads for the parallel loops.
"""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass


@dataclass
class RunConfig:
    grid_1d: int = 256
    grid_2d: int = 128
    grid_3d: int = 64
    offset: float = 0.5
    tol: float = 1e-10
    max_terms: int = 200
    rel_tol: float = 1e-16
    seed: int = 0
    budget: int = 200
    max_degree: int = 8
    threads: int | None = None
    out: str | None = None
    fmt: str = "csv"

    def __post_init__(self) -> None:
        for name in ("grid_1d", "grid_2d", "grid_3d"):
            n = getattr(self, name)
            if n < 2 or n % 2:
                raise ValueError(f"{name} must be even and >= 2")
        if self.tol <= 0 or self.rel_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.budget < 1:
            raise ValueError("budget must be >= 1")
        if self.fmt not in ("csv", "json"):
            raise ValueError("format must be csv or json")

    def grid_for(self, dim: int) -> int:
        try:
            return {1: self.grid_1d, 2: self.grid_2d, 3: self.grid_3d}[dim]
        except KeyError:
            raise ValueError(f"no default grid for dim={dim}") from None

    def series_control(self):
        from .series import SeriesControl

        return SeriesControl(max_terms=self.max_terms, rel_tol=self.rel_tol)


def thread_count(threads: int | None = None) -> int:
    """Worker count: explicit arg, else RIESZ_LAB_THREADS, else cpu count."""
    if threads is not None:
        return max(1, int(threads))
    env = os.environ.get("RIESZ_LAB_THREADS")
    if env:
        return max(1, int(env))
    return min(8, os.cpu_count() or 1)


_FIELD_TYPES = {f.name: f.type for f in dataclasses.fields(RunConfig)}


def parse_config_file(path) -> dict:
    """Parse `key = value` lines; '#' starts a comment; keys must be
    RunConfig fields."""
    out: dict = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in _FIELD_TYPES:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            out[key] = _coerce(key, value)
    return out


def _coerce(key: str, value: str):
    if key == "fmt":
        return value
    if key == "out":
        return value
    if key == "threads":
        return int(value)
    if key in ("offset", "tol", "rel_tol"):
        return float(value)
    return int(value)


def make_config(file_path=None, **overrides) -> RunConfig:
    values: dict = {}
    if file_path is not None:
        values.update(parse_config_file(file_path))
    values.update({k: v for k, v in overrides.items() if v is not None})
    return RunConfig(**values)
