import pytest

from arrtop.aitest import run_test
from arrtop.alexander import alexander_invariant
from arrtop.combinatorics import builtin_g91
from arrtop.resonance import triangle_table
from arrtop.wiring import builtin_wiring


@pytest.fixture(scope="session")
def g91():
    return builtin_g91()


@pytest.fixture(scope="session")
def g91_table(g91):
    return triangle_table(g91)


@pytest.fixture(scope="session")
def alex():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = alexander_invariant(builtin_wiring(name))
        return cache[name]

    return get


@pytest.fixture(scope="session")
def ai_report(alex):
    cache = {}

    def get(source, target):
        if (source, target) not in cache:
            cache[source, target] = run_test(alex(source), alex(target))
        return cache[source, target]

    return get
