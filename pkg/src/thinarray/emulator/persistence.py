"""
Model documents: one JSON file per trained emulator.

{
  "format_version": 1,
  "kind": "random_forest",
  "target": "mean",
  "scaler": {"mean": [...], "std": [...]},
  "params": {...},
  "metadata": {"n_train": 400, "seed": 1, "bounds": {...}, "tool_version": "0.1.0"},
  "manifest": "model_mean.json.manifest.json"
}
"""

import json
import logging
from pathlib import Path
from typing import Optional

from .. import __version__
from ..models import Bounds
from .forest import RandomForest
from .knn import KnnRegressor
from .models import MODEL_KINDS, EmulatorModel
from .ridge import RidgeRegressor
from .scaler import FeatureScaler

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1

_REGRESSORS = {
    "ridge": RidgeRegressor,
    "random_forest": RandomForest,
    "knn": KnnRegressor,
}


class ModelFormatError(ValueError):
    """Raised when a model document cannot be understood."""


def model_to_dict(model: EmulatorModel, manifest: Optional[str] = None) -> dict:
    document = {
        "format_version": FORMAT_VERSION,
        "kind": model.kind,
        "target": model.target,
        "scaler": model.scaler.to_dict(),
        "params": model.regressor.to_dict(),
        "metadata": {
            "n_train": model.n_train,
            "seed": model.seed,
            "bounds": model.bounds.to_dict(),
            "tool_version": __version__,
        },
    }
    if manifest is not None:
        document["manifest"] = manifest
    return document


def model_from_dict(document: dict) -> EmulatorModel:
    """
    Raises:
        ModelFormatError: On a missing or unknown version, unknown kind, or malformed fields
    """
    if not isinstance(document, dict):
        raise ModelFormatError("Model document must be a JSON object")
    version = document.get("format_version")
    if version is None:
        raise ModelFormatError("Model document has no format_version")
    if version != FORMAT_VERSION:
        raise ModelFormatError(f"Unsupported model format_version {version!r} (supported: {FORMAT_VERSION})")
    kind = document.get("kind")
    if kind not in MODEL_KINDS:
        raise ModelFormatError(f"Unknown model kind {kind!r}")
    try:
        metadata = document["metadata"]
        return EmulatorModel(
            kind=kind,
            target=document["target"],
            scaler=FeatureScaler.from_dict(document["scaler"]),
            regressor=_REGRESSORS[kind].from_dict(document["params"]),
            n_train=int(metadata["n_train"]),
            seed=metadata.get("seed"),
            bounds=Bounds.from_dict(metadata["bounds"]),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise ModelFormatError(f"Malformed {kind} model document: {e}")


def save_model(model: EmulatorModel, path: str, manifest: Optional[str] = None) -> None:
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(model_to_dict(model, manifest=manifest), f, indent=2)
        f.write('\n')
    logger.info(f"Model saved to {path}")


def load_model(path: str) -> EmulatorModel:
    """
    Raises:
        FileNotFoundError: If the file does not exist
        ModelFormatError: If the file is not a readable model document
    """
    if not Path(path).exists():
        raise FileNotFoundError(f"Model file not found: {path}")
    try:
        with open(path, 'r', encoding='utf-8') as f:
            document = json.load(f)
    except json.JSONDecodeError as e:
        raise ModelFormatError(f"Model file {path} is not valid JSON: {e}")
    return model_from_dict(document)
