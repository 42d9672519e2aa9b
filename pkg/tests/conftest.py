import mpmath
import numpy as np
import pytest


def laguerre_series(n, alpha, x, dps=60):
    """Exact finite series sum_k (-1)^k C(n+alpha, n-k) x^k / k! in high precision."""
    with mpmath.workdps(dps):
        a, xv = mpmath.mpf(alpha), mpmath.mpf(x)
        s = mpmath.mpf(0)
        for k in range(n + 1):
            s += (-1) ** k * mpmath.binomial(n + a, n - k) * xv**k / mpmath.factorial(k)
        return float(s)


def sign_changes(values, floor=1e-8):
    v = np.asarray(values)
    v = v[np.abs(v) > floor * np.abs(v).max()]
    return int(np.count_nonzero(np.diff(np.sign(v)) != 0))


@pytest.fixture
def kratzer_unit():
    from pctpdm.reference import KratzerParams

    return KratzerParams(De=1.0, ye=1.0)


@pytest.fixture
def morse_unit():
    from pctpdm.reference import MorseParams

    return MorseParams(D=8.0, a=1.0)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
