"""Caps and output settings.

A JSON file named by ``FQPLAB_CONFIG`` supplies defaults; ``--caps`` on the
command line overrides individual fields.
"""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass

CONFIG_ENV = "FQPLAB_CONFIG"


@dataclass(frozen=True)
class Config:
    ring_size: int = 4096
    ideal_count: int = 100_000
    oracle_module_size: int = 64
    oracle_generators: int = 3
    candidates: int = 1_000_000
    content_degree: int = 1
    content_pairs: int = 5_000_000
    axiom_size: int = 256
    output_format: str = "human"

    def __post_init__(self):
        for f in dataclasses.fields(self):
            v = getattr(self, f.name)
            if f.name == "output_format":
                if v not in ("human", "machine"):
                    raise ValueError(f"output_format must be human or machine, got {v!r}")
            elif f.name == "content_degree":
                if not isinstance(v, int) or v < 0:
                    raise ValueError("content_degree must be a non-negative integer")
            elif not isinstance(v, int) or v <= 0:
                raise ValueError(f"cap {f.name} must be a positive integer, got {v!r}")

    def replace(self, **changes) -> "Config":
        return dataclasses.replace(self, **changes)

    def with_overrides(self, text: str) -> "Config":
        """Apply ``name=value,name=value`` overrides."""
        changes = {}
        names = {f.name for f in dataclasses.fields(self)}
        for part in filter(None, (p.strip() for p in text.split(","))):
            key, sep, value = part.partition("=")
            key = key.strip().replace("-", "_")
            if not sep or key not in names:
                raise ValueError(f"unknown cap override {part!r}")
            changes[key] = value.strip() if key == "output_format" else int(value)
        return self.replace(**changes)


def load_config(path: str | None = None) -> Config:
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        return Config()
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    return Config(**data)


DEFAULT = Config()
