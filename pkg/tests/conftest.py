import math

import pytest

from dipoledyn.dynamics import IntegratorOptions, Method


@pytest.fixture
def opts():
    return IntegratorOptions()


@pytest.fixture
def tight_opts():
    return IntegratorOptions(Method.ADAPTIVE_RK45, rel_tol=1e-11, abs_tol=1e-13, max_dt=2.0 * math.pi / 50.0)


@pytest.fixture(autouse=True)
def _threads(monkeypatch):
    monkeypatch.setenv("DIPOLEDYN_THREADS", "2")
