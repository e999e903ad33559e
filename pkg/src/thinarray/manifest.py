"""
Run manifests: the reproducibility record written next to every output.

``results/dataset.csv`` gets ``results/dataset.csv.manifest.json`` holding the
tool version, master seed, configuration digest, command, flags and start /
finish timestamps.
"""

import argparse
import json
import logging
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Optional

from . import __version__

logger = logging.getLogger(__name__)

MANIFEST_SUFFIX = ".manifest.json"


def manifest_path(output_path: str) -> Path:
    return Path(str(output_path) + MANIFEST_SUFFIX)


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec='seconds')


@dataclass
class RunManifest:
    """Provenance of one command invocation"""
    command: str
    flags: Dict[str, Any]
    seed: Optional[int] = None
    config_digest: Optional[str] = None
    tool_version: str = __version__
    started_at: str = field(default_factory=_now)
    finished_at: Optional[str] = None
    outputs: Dict[str, str] = field(default_factory=dict)

    @classmethod
    def from_args(cls, command: str, args: argparse.Namespace,
                  config_digest: Optional[str] = None) -> "RunManifest":
        flags = {k: v for k, v in sorted(vars(args).items()) if k != "func"}
        return cls(command=command, flags=flags, seed=flags.get("seed"), config_digest=config_digest)

    def finish(self) -> None:
        self.finished_at = _now()

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def write(self, output_path: str) -> Path:
        """Write the manifest beside ``output_path`` and return its path."""
        if self.finished_at is None:
            self.finish()
        path = manifest_path(output_path)
        self.outputs.setdefault("primary", Path(output_path).name)
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(self.to_dict(), f, indent=2, default=str)
            f.write('\n')
        logger.debug(f"Manifest saved to {path}")
        return path


def read_manifest(output_path: str) -> Dict[str, Any]:
    """Load the manifest written for ``output_path``."""
    path = manifest_path(output_path)
    if not path.exists():
        raise FileNotFoundError(f"Manifest not found: {path}")
    with open(path, 'r', encoding='utf-8') as f:
        return json.load(f)
