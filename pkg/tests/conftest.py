import sys
from fractions import Fraction
from pathlib import Path

from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from cdhopf.core import Element  # noqa: E402

small_fraction = st.fractions(min_value=-4, max_value=4, max_denominator=6)


def elements(n, pure=False, doubly=False):
    d = 1 << n
    h = d // 2

    def build(cs):
        cs = list(cs)
        if pure or doubly:
            cs[0] = Fraction(0)
        if doubly and n >= 1:
            cs[h] = Fraction(0)
        return Element(n, cs)

    return st.lists(small_fraction, min_size=d, max_size=d).map(build)


# acceptance verdicts, printed once at the end of the run
ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        verdict, text = ACCEPTANCE[k]
        terminalreporter.write_line(f"{verdict}  criterion {k:2d}: {text}")
