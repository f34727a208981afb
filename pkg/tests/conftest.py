"""Shared synthetic cusp datasets.

All five primary datasets use unit-modulus c (the configuration of tangent
horospheres forces |c| = 1; see README).  The "half" dataset (x0 = 0,
y0 = 1/2) generates nonsimple members along the (0, q) axis and the
"alpha_swap" dataset (y0 = 0) exercises the swapped certification branch.
"""

from __future__ import annotations

import cmath
import math

import pytest

from geoknots import CuspData, nearest_lift_gap

DATASETS = {
    "square": CuspData("square", 1 + 0j, 1j, 0.5, 0.5, 1 + 0j),
    "hexlike": CuspData(
        "hexlike", 1 + 0j, cmath.exp(1j * math.pi / 3), 0.3, 0.4, cmath.exp(1j * math.pi / 7)
    ),
    "skew": CuspData("skew", 1 + 0j, 0.3 + 1.1j, 0.7, 0.25, cmath.exp(-0.3j)),
    "rational_a": CuspData("rational_a", 1 + 0j, 0.25 + 1.5j, 1 / 3, 2 / 5, 0.6 + 0.8j),
    "rational_b": CuspData("rational_b", 1.5 + 0j, -0.5 + 0.875j, 0.0, 0.75, -0.28 + 0.96j),
}

EXTRA_DATASETS = {
    "half": CuspData("half", 1 + 0j, 1j, 0.0, 0.5, 1 + 0j),
    "alpha_swap": CuspData("alpha_swap", 1 + 0j, 1j, 0.3, 0.0, 1 + 0j),
}


@pytest.fixture(scope="session")
def datasets() -> dict[str, CuspData]:
    return dict(DATASETS)


@pytest.fixture(scope="session")
def square() -> CuspData:
    return DATASETS["square"]


@pytest.fixture(scope="session")
def half() -> CuspData:
    return EXTRA_DATASETS["half"]


@pytest.fixture(scope="session")
def alpha_swap() -> CuspData:
    return EXTRA_DATASETS["alpha_swap"]


@pytest.fixture(scope="session")
def epsilons() -> dict[str, float]:
    """nearest_lift_gap at the default range, per dataset."""
    out = {}
    for name, cusp in {**DATASETS, **EXTRA_DATASETS}.items():
        out[name] = nearest_lift_gap(cusp, 4)
    return out
