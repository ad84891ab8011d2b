from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from pathlib import Path

from dotenv import dotenv_values


class ConfigError(RuntimeError):
    pass


@dataclass(frozen=True)
class Settings:
    # Storage
    CHECKPOINT_DIR: str | None = None  # no checkpoint reuse when unset
    LOCK_TIMEOUT_S: int = 30

    # Pipeline
    BLOCK_BUDGET: int = 1 << 22  # integers per sub-interval
    SIEVE_WINDOW: int = 1 << 20  # integers per sieve window

    # Verifier
    EVAL_CHUNK: int = 64  # points per subproduct-tree leaf

    # Analysis
    THRESHOLD: int = 100  # |r_p| < THRESHOLD counts as a near miss

    # Runtime
    THREADS: int = os.cpu_count() or 1
    LOG_LEVEL: str = "INFO"


def load_settings(path: str | Path | None = None) -> Settings:
    """Settings with overrides from a dotenv-format file.

    The process environment is never read; only the given file is.
    """
    base = Settings()
    if path is None:
        return base
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"Config file not found: {path}")

    known = {f.name: f for f in fields(Settings)}
    overrides: dict[str, object] = {}
    for key, raw in dotenv_values(path).items():
        if key not in known:
            raise ConfigError(f"Unknown setting {key} in {path}")
        if raw is None or raw == "":
            overrides[key] = None if key == "CHECKPOINT_DIR" else getattr(base, key)
            continue
        default = getattr(base, key)
        try:
            overrides[key] = int(raw) if isinstance(default, int) else raw
        except ValueError as e:
            raise ConfigError(f"Setting {key} must be an integer, got {raw!r}") from e

    cfg = replace(base, **overrides)
    for key in ("BLOCK_BUDGET", "SIEVE_WINDOW", "EVAL_CHUNK", "THRESHOLD", "THREADS"):
        if getattr(cfg, key) < 1:
            raise ConfigError(f"Setting {key} must be positive")
    return cfg


settings = Settings()
