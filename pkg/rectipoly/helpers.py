import os

import numpy as np

TOLERANCE_ENV = "RECTIPOLY_TOL"

DEFAULTS = {
    "tol": 1e-9,
    "planarity_tol": 1e-9,
    "collinear_tol": 1e-7,
    "overlap_tol": 1e-9,
    "fold_tol": 1e-6,
    "bucket": 1e-6,
    "retries": 1000,
}


def default_tolerance():
    """Rectilinearity tolerance, read from RECTIPOLY_TOL when set."""

    value = os.environ.get(TOLERANCE_ENV)
    if value is None or not value.strip():
        return DEFAULTS["tol"]

    try:
        tol = float(value)
    except ValueError:
        raise ValueError(f"{TOLERANCE_ENV} must be a number, got {value!r}")

    if not tol > 0:
        raise ValueError(f"{TOLERANCE_ENV} must be positive, got {value!r}")

    return tol


def fill_kwargs(kwargs):
    """Give the kwargs dict default options."""

    defaults = dict(DEFAULTS)
    defaults["tol"] = default_tolerance()

    defaults.update({k: v for k, v in kwargs.items() if v is not None})

    return defaults


def edge_key(u, v):
    return (u, v) if u < v else (v, u)


def unit(v):
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v)


def newell_normal(points):
    """Area vector of a planar polygon: twice its area times its unit normal."""

    centered = points - points.mean(axis=0)
    return np.cross(centered, np.roll(centered, -1, axis=0)).sum(axis=0)


def bucket_values(values, width):
    """Snap values to the centers of width-sized buckets."""

    return np.round(np.asarray(values, dtype=float) / width) * width
