"""Shared fixtures: the six Z_12 worlds, their successor tables, and the
naive oracle runs (built once per session; several acceptance criteria
time them)."""

from __future__ import annotations

import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from contrapunctus import (
    BUILTIN_REPRESENTATIVES,
    builtin_world,
    successor_table,
)

from oracles import SuccessorOracle

LABELS = tuple(sorted(BUILTIN_REPRESENTATIVES))


@pytest.fixture(scope="session")
def six_worlds():
    return {label: builtin_world(label) for label in LABELS}


@pytest.fixture(scope="session")
def six_tables(six_worlds):
    """label -> (SuccessorTable, build seconds)."""
    out = {}
    for label, sd in six_worlds.items():
        t0 = time.perf_counter()
        table = successor_table(sd)
        out[label] = (table, time.perf_counter() - t0)
    return out


@pytest.fixture(scope="session")
def six_oracles(six_worlds):
    """label -> (SuccessorOracle, {(x, k): successor set}, seconds)."""
    out = {}
    for label, sd in six_worlds.items():
        t0 = time.perf_counter()
        oracle = SuccessorOracle(
            sd.modulus,
            sd.x_part,
            sd.polarity.translation,
            sd.polarity.multiplier,
        )
        results = {
            (x, k): oracle.successors(x, k)
            for x in range(sd.modulus)
            for k in sorted(sd.x_part)
        }
        out[label] = (oracle, results, time.perf_counter() - t0)
    return out


@pytest.fixture(scope="session")
def z6_world():
    from contrapunctus import strong_dichotomy

    return strong_dichotomy(6, (0, 2, 3))
