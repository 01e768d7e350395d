from __future__ import annotations

from math import gcd

import pytest

from zsindex.harness import verify_modulus

SWEEP_LO, SWEEP_HI = 5, 150

FIXTURES = {
    1235: (13, 285, 975, 1197),
    2635: (17, 510, 2170, 2573),
    1001: (11, 182, 847, 962),
}


@pytest.fixture(scope="session")
def sweep_run():
    """Reports and per-representative records for the desk-scale sweep range."""
    reports, records = [], []
    for n in range(SWEEP_LO, SWEEP_HI + 1):
        if gcd(n, 6) == 1:
            reports.append(verify_modulus(n, records=records))
    return reports, records
