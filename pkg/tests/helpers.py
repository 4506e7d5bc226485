import numpy as np
import pandas as pd
import pytest


def assert_df_equal(df1, df2, sort_on=None):
    print("-" * 100)
    print("df1")
    print(df1)
    print("df2")
    print(df2)

    if sort_on:
        df1 = df1.sort_values(sort_on)
        df2 = df2.sort_values(sort_on)

    df1 = df1.reset_index(drop=True)
    df2 = df2.reset_index(drop=True)

    print("Actual dtypes")
    print(df1.dtypes)
    print("Expected dtypes")
    print(df2.dtypes)

    pd.testing.assert_frame_equal(df1, df2)


def assert_points_close(points1, points2, atol=1e-9):
    points1 = np.asarray(points1, dtype=float)
    points2 = np.asarray(points2, dtype=float)

    distances = np.linalg.norm(points1 - points2, axis=1)
    print("largest distance", distances.max(), "at", distances.argmax())

    assert distances.max() <= atol


def random_rotation(rng):
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def assert_json_close(actual, expected, rel=1e-9, path="$"):
    if isinstance(expected, dict):
        assert isinstance(actual, dict), path
        assert sorted(actual) == sorted(expected), f"{path}: keys {sorted(actual)} != {sorted(expected)}"
        for key in expected:
            assert_json_close(actual[key], expected[key], rel, f"{path}.{key}")
    elif isinstance(expected, list):
        assert isinstance(actual, list) and len(actual) == len(expected), path
        for i, (a, e) in enumerate(zip(actual, expected)):
            assert_json_close(a, e, rel, f"{path}[{i}]")
    elif isinstance(expected, float):
        assert actual == pytest.approx(expected, rel=rel), path
    else:
        assert actual == expected, f"{path}: {actual!r} != {expected!r}"


def assert_runs_end_quarter_apart(link, tol=1e-9):
    from rectipoly.spherical import rectilinear_runs

    quarter = np.pi / 2
    for i, j in rectilinear_runs(link, tol):
        d = link.separation(i, j)
        r = d % quarter
        assert min(r, quarter - r) <= 10 * tol, f"run {i} -> {j} ends {d!r} rad apart"
