# Core/config.py
from __future__ import annotations

import logging
import os

from dotenv import load_dotenv

# Load environment variables from .env at project root
load_dotenv()


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name, "").strip()
    return int(raw) if raw else default


def _env_float(name: str, default: float) -> float:
    raw = os.getenv(name, "").strip()
    return float(raw) if raw else default


# Exhaustive k-core search is factorial in n; 12 is a hard ceiling.
BRUTE_FORCE_LIMIT: int = min(_env_int("GMATCH_BRUTE_FORCE_LIMIT", 8), 12)
DEFAULT_SEED: int = _env_int("GMATCH_DEFAULT_SEED", 0)
SWEEP_WORKERS: int = max(_env_int("GMATCH_WORKERS", 1), 1)
LOG_LEVEL: str = (os.getenv("GMATCH_LOG_LEVEL") or "WARNING").strip().upper()
ASSIGNMENT_TOL: float = _env_float("GMATCH_ASSIGNMENT_TOL", 1e-9)


def get_logger(name: str) -> logging.Logger:
    """Return a module logger; handlers are attached once on the package root."""
    root = logging.getLogger("gmatch")
    if not root.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(name)s %(message)s"))
        root.addHandler(handler)
        root.setLevel(LOG_LEVEL)
        root.propagate = False
    return root.getChild(name)


def settings_summary() -> dict:
    """Effective settings, as reported by /health and `--help`."""
    return {
        "brute_force_limit": BRUTE_FORCE_LIMIT,
        "default_seed": DEFAULT_SEED,
        "workers": SWEEP_WORKERS,
        "log_level": LOG_LEVEL,
        "assignment_tol": ASSIGNMENT_TOL,
    }
