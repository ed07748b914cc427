"""Run configuration and the errors shared across modules."""

from __future__ import annotations

import os
from dataclasses import dataclass
from dataclasses import field as dc_field
from typing import Optional

from .linalg import check_field

TOLERANCE = 1e-9
VERTEX_CAP = 20
MAX_VERTEX_CAP = 24


class CapExceededError(ValueError):
    """An exponential enumeration was asked to run past its configured bound."""


def default_threads() -> int:
    env = os.environ.get("BGPH_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"BGPH_THREADS must be an integer, got {env!r}") from None
    return 1


@dataclass(frozen=True)
class RunConfig:
    field: int = 2
    vertex_cap: int = VERTEX_CAP
    tolerance: float = TOLERANCE
    threads: int = dc_field(default_factory=default_threads)
    out: Optional[str] = None
    svg: Optional[str] = None

    def __post_init__(self):
        check_field(self.field)
        if not 1 <= self.vertex_cap <= MAX_VERTEX_CAP:
            raise ValueError(f"vertex cap must lie in [1, {MAX_VERTEX_CAP}], got {self.vertex_cap}")
        if self.threads < 1:
            raise ValueError("thread count must be positive")


def check_vertex_cap(m: int, cap: int = VERTEX_CAP) -> None:
    if m > cap:
        raise CapExceededError(
            f"{m} points exceed the vertex cap of {cap}; the subset decomposition visits 2^{m} subsets"
        )
