import csv
import os

import pytest

from semdisc import experiment_table, load_bundled

HERE = os.path.dirname(__file__)


@pytest.fixture(scope="session")
def table():
    return load_bundled()


@pytest.fixture(scope="session")
def exp1(table):
    return experiment_table(1, table)


@pytest.fixture(scope="session")
def exp2(table):
    return experiment_table(2, table)


@pytest.fixture(scope="session")
def reference_rows():
    """Published coordinate table for all 58 colors: id -> dict of
    x, y, Y, L, a, b, C, h floats."""
    out = {}
    with open(os.path.join(HERE, "data", "uw58_reference.csv"), encoding="utf-8") as f:
        for row in csv.DictReader(f):
            out[int(row["color_id"])] = {k: float(v) for k, v in row.items() if k != "color_id"}
    return out
