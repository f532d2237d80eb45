"""Run configuration: numerical tolerances plus the RNG seed."""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

SEED_ENV = "PEARLLAB_SEED"


def load_toml(path: str) -> dict:
    with open(path, "rb") as fh:
        return tomllib.load(fh)


@dataclass(frozen=True)
class Settings:
    samples: int = 1024
    lagrangian_tol: float = 1e-9
    winding_tol: float = 1e-6
    residual_tol: float = 1e-10
    seed: int = 0

    @classmethod
    def load(cls, path: str | None = None, env=None) -> Settings:
        env = os.environ if env is None else env
        s = cls()
        if path:
            data = load_toml(path)
            known = {f.name: f.type for f in fields(cls)}
            unknown = set(data) - set(known)
            if unknown:
                raise ValueError(f"{path}: unknown settings {sorted(unknown)}")
            s = replace(s, **{k: (int(v) if k in ("samples", "seed") else float(v)) for k, v in data.items()})
        if env.get(SEED_ENV):
            s = replace(s, seed=int(env[SEED_ENV]))
        if s.samples < 256:
            raise ValueError("samples must be at least 256")
        return s
