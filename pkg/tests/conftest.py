from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from tropicon import MAX_PLUS, MIN_PLUS, Vector, bottom, finite, top

settings.register_profile("tropicon", deadline=None, max_examples=150,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("tropicon")

KINDS = [MAX_PLUS, MIN_PLUS]


def fractions(lo=-40, hi=40, max_den=8):
    return st.builds(lambda num, den: Fraction(num, den),
                     st.integers(lo * max_den, hi * max_den), st.integers(1, max_den))


def scalars(kind=MAX_PLUS, allow_bottom=True, allow_top=True):
    options = [fractions().map(lambda q: finite(q, kind))]
    if allow_bottom:
        options.append(st.just(bottom(kind)))
    if allow_top:
        options.append(st.just(top(kind)))
    return st.one_of(*options)


def k_scalars(kind=MAX_PLUS):
    return scalars(kind, allow_top=False)


def vectors(n, kind=MAX_PLUS, allow_bottom=True, allow_top=False):
    return st.lists(scalars(kind, allow_bottom, allow_top), min_size=n, max_size=n).map(
        lambda xs: Vector(xs, kind))


def generator_lists(n, kind=MAX_PLUS, max_size=4):
    return st.lists(vectors(n, kind), min_size=1, max_size=max_size)


# -- acceptance summary --------------------------------------------------------

_ACCEPTANCE: dict[str, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    name = item.name
    if not name.startswith("test_criterion_"):
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        number = name.split("_")[2]
        doc = (item.function.__doc__ or name).strip().splitlines()[0]
        _ACCEPTANCE[number] = ("PASS" if rep.passed else "FAIL", doc)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE, key=int):
        status, doc = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {doc}")
