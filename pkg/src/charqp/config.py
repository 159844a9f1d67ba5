"""Runtime limits, read from CHARQP_* environment variables."""
from __future__ import annotations

import os
from dataclasses import dataclass, replace

ENV_PREFIX = "CHARQP_"


@dataclass(frozen=True)
class Settings:
    budget: int = 10 ** 9          # point-column evaluations per brute-force count
    subset_cap: int = 22           # max columns for the subset formula
    weyl_cap: int = 10 ** 6        # max |W| for explicit enumeration
    jobs: int = 1                  # worker processes for counting
    weyl_cache_dir: str = ""       # optional on-disk cache of enumerated groups


def _int_env(name: str, default: int) -> int:
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None or raw == "":
        return default
    try:
        return int(float(raw))
    except ValueError as exc:
        raise ValueError(f"{ENV_PREFIX}{name} must be an integer, got {raw!r}") from exc


def from_env() -> Settings:
    return Settings(
        budget=_int_env("BUDGET", Settings.budget),
        subset_cap=_int_env("SUBSET_CAP", Settings.subset_cap),
        weyl_cap=_int_env("WEYL_CAP", Settings.weyl_cap),
        jobs=_int_env("JOBS", Settings.jobs),
        weyl_cache_dir=os.environ.get(ENV_PREFIX + "WEYL_CACHE", ""),
    )


_current: Settings | None = None


def settings() -> Settings:
    global _current
    if _current is None:
        _current = from_env()
    return _current


def override(**kwargs) -> Settings:
    """Replace selected fields (None values are ignored); returns the new settings."""
    global _current
    clean = {k: v for k, v in kwargs.items() if v is not None}
    _current = replace(settings(), **clean)
    return _current


def reset() -> None:
    global _current
    _current = None
