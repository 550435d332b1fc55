"""Shared fixtures.

The variety solver is the one expensive piece of the suite, so solve
reports for the shipped knot table are cached once per session and the
elapsed wall time of the original run is kept alongside each report for
the budget checks in the acceptance tests.
"""
from __future__ import annotations

import time

import pytest

from repvar.braid import knot_by_name
from repvar.solver import solve


@pytest.fixture(scope="session")
def solve_table():
    cache: dict[str, tuple] = {}

    def run(name: str):
        if name not in cache:
            entry = knot_by_name(name)
            t0 = time.monotonic()
            report = solve(entry.word)
            cache[name] = (report, time.monotonic() - t0)
        return cache[name]

    return run
