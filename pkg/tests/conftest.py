import hypothesis.strategies as st
from hypothesis import settings

from singsurf.exact import Q
from singsurf.jets import Jet1, Jet2

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

rationals = st.builds(Q, st.integers(-9, 9), st.integers(1, 6))


@st.composite
def jets(draw, order=4, min_degree=0):
    keys = [(i, d - i) for d in range(min_degree, order + 1) for i in range(d + 1)]
    picked = draw(st.lists(st.sampled_from(keys), max_size=8, unique=True))
    return Jet2(order, {k: draw(rationals) for k in picked})


@st.composite
def curves(draw, order=6):
    c = draw(st.dictionaries(st.integers(1, order), rationals, max_size=order))
    return Jet1(order, c)


# acceptance criteria report: one PASS/FAIL line each, printed after the run
ACCEPTANCE = {}


def record(number: int, name: str, ok: bool, detail: str = "") -> None:
    ACCEPTANCE[number] = f"{'PASS' if ok else 'FAIL'} {number:>2} {name}" + (f": {detail}" if detail else "")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
