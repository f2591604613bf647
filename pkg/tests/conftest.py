from __future__ import annotations

import numpy as np
import pytest


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


def _rel_inf(a: np.ndarray, b: np.ndarray) -> float:
    num = np.abs(a - b).sum(axis=-1).max()
    den = np.abs(b).sum(axis=-1).max()
    return float(num / den)


@pytest.fixture
def rel_inf():
    """Relative infinity-norm difference ||a - b|| / ||b|| (row-sum norm)."""
    return _rel_inf
