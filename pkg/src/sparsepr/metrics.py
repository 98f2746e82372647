"""Distances modulo the global sign ambiguity, and the recovery test."""
from dataclasses import dataclass

import numpy as np

SUCCESS_THRESHOLD = 1e-3


@dataclass(frozen=True)
class RecoveryAssessment:
    distance: float
    relative_error: float
    success: bool
    threshold: float = SUCCESS_THRESHOLD

    def to_dict(self):
        return {
            "distance": self.distance,
            "relative_error": self.relative_error,
            "success": self.success,
            "threshold": self.threshold,
        }


def dist(x, y):
    """``min(||x - y||, ||x + y||)``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise ValueError(f"shape mismatch: {x.shape} vs {y.shape}")
    return float(min(np.linalg.norm(x - y), np.linalg.norm(x + y)))


def relative_error(xhat, xtrue):
    nrm = np.linalg.norm(xtrue)
    if nrm == 0:
        raise ValueError("relative error undefined for a zero ground truth")
    return dist(xhat, xtrue) / float(nrm)


def is_success(xhat, xtrue, threshold=SUCCESS_THRESHOLD):
    if threshold <= 0:
        raise ValueError(f"threshold must be positive, got {threshold}")
    nrm = np.linalg.norm(xtrue)
    if nrm == 0:
        raise ValueError("relative error undefined for a zero ground truth")
    return bool(dist(xhat, xtrue) <= threshold * nrm)


def assess(xhat, xtrue, threshold=SUCCESS_THRESHOLD):
    d = dist(xhat, xtrue)
    rel = relative_error(xhat, xtrue)
    return RecoveryAssessment(distance=d, relative_error=rel,
                              success=is_success(xhat, xtrue, threshold),
                              threshold=threshold)
