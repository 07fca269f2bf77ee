"""Wave argument w = v . r~ - mu t + c and its first derivatives."""

import numpy as np

from travelwave.core.exceptions import RejectedInputError
from travelwave.domain.entity.model import WaveParams


def compute_wave_argument(params: WaveParams, r_tilde, t: float) -> float:
    r = np.asarray(r_tilde, dtype=float).ravel()
    if r.shape != (len(params.v),):
        raise RejectedInputError(
            f"r_tilde has dimension {r.size}, expected {len(params.v)}",
            details={"ell": params.ell, "m": params.m},
        )
    # blocks in order s = 1..m, components i = 1..ell inside each block
    dot = 0.0
    for v_is, x_is in zip(params.v, r):
        dot += v_is * float(x_is)
    return dot - params.mu * t + params.c


def wave_argument_array(params: WaveParams, points: np.ndarray, times: np.ndarray) -> np.ndarray:
    """Vectorised w for N points of shape (N, ell*m) and N times"""
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or points.shape[1] != len(params.v):
        raise RejectedInputError(
            f"points must have shape (N, {len(params.v)}), got {points.shape}"
        )
    return points @ params.v_array - params.mu * np.asarray(times, dtype=float) + params.c


def wave_argument_gradient(params: WaveParams) -> tuple[np.ndarray, float]:
    """(dw/dr~, dw/dt) = (v, -mu), constant in (r~, t)"""
    return params.v_array.copy(), -params.mu
