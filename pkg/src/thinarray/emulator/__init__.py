"""
Regression emulators of the SINR simulator.
"""

from .metrics import nrmse
from .models import EmulatorModel, EmulatorPair, ModelSpec, predict, train_knn, train_model, train_random_forest, train_ridge
from .persistence import ModelFormatError, load_model, save_model
from .validation import CvReport, cross_validate

__all__ = [
    "nrmse", "EmulatorModel", "EmulatorPair", "ModelSpec", "predict",
    "train_ridge", "train_random_forest", "train_knn", "train_model",
    "ModelFormatError", "load_model", "save_model", "CvReport", "cross_validate",
]
