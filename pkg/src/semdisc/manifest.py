"""Run manifests: enough metadata to reproduce any CLI output."""

from __future__ import annotations

import datetime
import hashlib
import json
from dataclasses import dataclass, field

from . import __version__
from .associations import dataset_paths


def dataset_digests():
    out = {}
    for name, path in dataset_paths().items():
        with open(path, "rb") as f:
            out[name] = hashlib.sha256(f.read()).hexdigest()
    return out


@dataclass
class RunManifest:
    command: str
    digests: dict = field(default_factory=dataset_digests)
    seed: int | None = None
    version: str = __version__
    timestamp: str = field(
        default_factory=lambda: datetime.datetime.now(datetime.timezone.utc).isoformat(
            timespec="seconds"
        )
    )

    def to_json(self):
        return json.dumps(
            {
                "command": self.command,
                "dataset_digests": self.digests,
                "seed": self.seed,
                "version": self.version,
                "timestamp": self.timestamp,
            },
            indent=2,
            sort_keys=True,
        )
