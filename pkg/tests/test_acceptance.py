"""One test per acceptance criterion; each prints its [PASS]/[FAIL] line.

Tolerances and runtime budgets are pinned in coulomb_sphere.acceptance;
the pinned values are restated here so a change there fails loudly.
"""

import inspect

import pytest

from coulomb_sphere import acceptance

PINNED = {
    1: ["1e-10", "10.0"],
    2: ["1e-8", "30.0"],
    3: ["1e-12"],
    4: ["0.35", "0.65", "10.0", "5.0"],
    5: ["1e-4", "1e-3", "1e-2", "120.0"],
    6: ["0.02", "1.7", "3.0"],
    7: ["1e-11"],
    8: ["1e-9"],
    9: [],
}


@pytest.mark.parametrize("number", sorted(acceptance.CRITERIA))
def test_criterion(number, capsys):
    src = inspect.getsource(acceptance.CRITERIA[number])
    for tol in PINNED[number]:
        assert tol in src, f"criterion {number}: pinned value {tol} missing"
    result = acceptance.CRITERIA[number]()
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail
