import collections
from importlib import resources

import numpy as np
import pytest
import scipy.stats

from randideal import load_field, load_function_field

FIELD_FILES = {
    "rationals": "rationals.json",
    "gaussian": "gaussian.json",
    "sqrt_minus5": "sqrt_minus5.json",
    "pure_cubic": "pure_cubic.json",
    "pure_quartic": "pure_quartic.json",
    "quintic": "trinomial_quintic.json",
    "sqrt_minus3": "sqrt_minus3.json",
    "cyclotomic8": "cyclotomic8.json",
}
# one field of each degree 1..5, plus a second quadratic
CORE_FIELDS = ["rationals", "gaussian", "sqrt_minus5", "pure_cubic", "pure_quartic", "quintic"]
ALL_FIELDS = list(FIELD_FILES)


def field_path(name):
    return str(resources.files("randideal") / "fields" / name)


@pytest.fixture(scope="session")
def fields():
    return {name: load_field(field_path(fname)) for name, fname in FIELD_FILES.items()}


@pytest.fixture(scope="session")
def gaussian(fields):
    return fields["gaussian"]


@pytest.fixture(scope="session")
def sqrt_m5(fields):
    return fields["sqrt_minus5"]


@pytest.fixture(scope="session")
def ff_sqrt_t():
    return load_function_field(field_path("ff_sqrt_t_f3.json"))


def chisquare_counts(observed_keys, expected: dict):
    """Chi-square p-value of observed keys against expected probabilities (any scale)."""
    counts = collections.Counter(observed_keys)
    unknown = set(counts) - set(expected)
    assert not unknown, f"outcomes outside the support: {list(unknown)[:5]}"
    keys = sorted(expected, key=repr)
    total = sum(counts.values())
    w = np.array([float(expected[k]) for k in keys])
    f_exp = w / w.sum() * total
    f_obs = np.array([counts.get(k, 0) for k in keys], dtype=float)
    return scipy.stats.chisquare(f_obs, f_exp).pvalue


# -- acceptance report -------------------------------------------------------

_REPORT = []


@pytest.fixture
def report():
    def add(criterion, ok, detail=""):
        _REPORT.append((criterion, bool(ok), detail))
        return ok

    return add


def pytest_terminal_summary(terminalreporter):
    if not _REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, ok, detail in _REPORT:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {criterion}  {detail}")
