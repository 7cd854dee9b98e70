from __future__ import annotations

import sys
import time
from dataclasses import dataclass

import pytest

from cayley_incidence.enumeration import EnumerationReport, enumerate_group
from cayley_incidence.groups import catalog


@dataclass
class CatalogRun:
    reports: dict[str, EnumerationReport]
    seconds: float

    @property
    def records(self):
        return [rec for r in self.reports.values() for rec in r.records]


def make_catalog_run() -> CatalogRun:
    """Full single-core enumeration of every catalog group."""
    t0 = time.perf_counter()
    reports = {G.name: enumerate_group(G, budget_seconds=None) for G in catalog()}
    return CatalogRun(reports, time.perf_counter() - t0)


@pytest.fixture(scope="session")
def catalog_run() -> CatalogRun:
    return make_catalog_run()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "SUMMARY", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
