from fractions import Fraction

import pytest


def sylvester_resultant(f, g):
    """Res(f, g) as the determinant of the Sylvester matrix (Fraction elimination).

    f, g are coefficient lists, lowest degree first.  Independent of the
    library's subresultant code.
    """
    m, n = len(f) - 1, len(g) - 1
    fh, gh = list(reversed(f)), list(reversed(g))
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + fh + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gh + [0] * (size - n - 1 - i))
    a = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for col in range(size):
        piv = next((r for r in range(col, size) if a[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, size):
            if a[r][col]:
                k = a[r][col] / a[col][col]
                a[r] = [x - k * y for x, y in zip(a[r], a[col])]
    assert det.denominator == 1
    return int(det)


@pytest.fixture
def sylvester():
    return sylvester_resultant


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
