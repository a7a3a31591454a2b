"""Desk-scale resource guards.

Exhaustive enumerations are capped so a stray argument cannot wedge the
process.  The environment variable SBL_MAX_D replaces every default cap.
"""

from __future__ import annotations

import os

from .errors import ResourceGuardError

ENV_VAR = "SBL_MAX_D"


def max_d_cap(default: int) -> int:
    raw = os.environ.get(ENV_VAR)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{ENV_VAR} must be an integer, got {raw!r}") from None


def guard_d(d: int, default_cap: int, what: str) -> None:
    cap = max_d_cap(default_cap)
    if d > cap:
        raise ResourceGuardError(
            f"{what} is guarded at D <= {cap} (requested D={d}); "
            f"set {ENV_VAR} to override"
        )
