from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pytest

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def oracles() -> dict:
    return json.loads((FIXTURES / "oracles.json").read_text())


@pytest.fixture(scope="session")
def distribution_oracles() -> list[dict]:
    return json.loads((FIXTURES / "distribution_oracles.json").read_text())["cases"]


def load_regression_fixture(name: str) -> tuple[np.ndarray, np.ndarray]:
    """``(y, X)`` with the constant appended as the last column."""
    d = np.loadtxt(FIXTURES / f"{name}.csv", delimiter=",", skiprows=1)
    y = d[:, 0]
    X = np.column_stack([d[:, 1:], np.ones(len(d))])
    return y, X


def load_unitroot_fixture(name: str) -> np.ndarray:
    return np.loadtxt(FIXTURES / f"{name}.csv", skiprows=1)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)
