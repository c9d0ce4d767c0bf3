"""Acceptance criteria, each at its stated tolerance.

One PASS/FAIL line per criterion is printed in the terminal summary.  Checks
whose published target disagrees with every independent computation stay red:
they are collected separately as strict xfails, so the rest of the criterion
still guards against regressions.
"""

import pytest

from conftest import ACCEPTANCE_LINES
from spsubgraphs.verify import CRITERIA, KNOWN_DISCREPANCIES

TITLES = {
    "1": "exact D expansion through x^3",
    "2": "oracle equivalence n <= 6",
    "3": "girth consistency",
    "4": "2-connected triangle moments and R(1)",
    "5": "connected triangle moments, both routes",
    "6": "2-connected 4-cycle moments",
    "7": "triangle-free singular data",
    "8": "enumeration constants",
    "9": "direct-coefficient corroboration",
    "10": "property suites",
    "clt": "oracle mean of triangle copies at n=6",
}

_results: dict = {}


def results(ctx, key):
    if key not in _results:
        checks = CRITERIA[key](ctx)
        _results[key] = checks
        bad = [c for c in checks if not c.passed]
        status = "PASS" if not bad else "FAIL"
        ACCEPTANCE_LINES.append(
            f"{status} criterion {key}: {TITLES[key]} ({len(checks) - len(bad)}/{len(checks)} checks pass)"
        )
        for c in bad:
            ACCEPTANCE_LINES.append(f"    {c.line()}")
        for c in checks:
            print(c.line())
    return _results[key]


def by_name(ctx, name):
    owner = "clt" if name.startswith("clt") else "6" if name == "sigma2_c4_2" else "8"
    (check,) = [c for c in results(ctx, owner) if c.name == name]
    return check


@pytest.mark.parametrize("key", list(CRITERIA))
def test_criterion(ctx, key):
    checks = results(ctx, key)
    assert checks
    bad = [c.line() for c in checks if not c.passed and c.name not in KNOWN_DISCREPANCIES]
    assert not bad, "\n".join(bad)


@pytest.mark.xfail(
    strict=True, raises=AssertionError,
    reason="published value disagrees with independent computations; see decisions ledger",
)
@pytest.mark.parametrize("name", sorted(KNOWN_DISCREPANCIES))
def test_published_discrepancy(ctx, name):
    check = by_name(ctx, name)
    print(check.line())
    assert check.passed, check.line()
