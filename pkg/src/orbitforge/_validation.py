"""Small input-validation helpers shared across the package."""

from __future__ import annotations

import math

import numpy as np

from .group import HalfPlanePoint


def check_positive(name: str, value, strict: bool = True):
    if not math.isfinite(value) or (value <= 0 if strict else value < 0):
        raise ValueError(f"{name} must be {'positive' if strict else 'nonnegative'}, got {value}")
    return value


def check_int_at_least(name: str, value, floor: int) -> int:
    if int(value) != value or value < floor:
        raise ValueError(f"{name} must be an integer >= {floor}, got {value}")
    return int(value)


def as_halfplane_array(X) -> np.ndarray:
    """Validate an (n, 2) array of upper half-plane coordinates."""
    arr = np.asarray(X, dtype=float)
    if arr.ndim == 1 and arr.shape == (2,):
        arr = arr[None, :]
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"expected an (n, 2) array of (x, y) coordinates, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise ValueError("coordinates must be finite")
    if (arr[:, 1] <= 0).any():
        raise ValueError("all points must satisfy y > 0")
    return arr


def as_point(p) -> HalfPlanePoint:
    if isinstance(p, HalfPlanePoint):
        return p
    x, y = p
    return HalfPlanePoint(float(x), float(y))
