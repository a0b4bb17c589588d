import pytest

from lattice_ci import GroundSet, SeriesSpec, lattice_from_generators, tdag_of_lattice, timeseries_lattice
from lattice_ci.lattice import parse_family


@pytest.fixture
def fig1():
    fam = parse_family("123,234,345")
    return lattice_from_generators(GroundSet.from_sets(fam), fam)


@pytest.fixture
def fig2(fig1):
    return tdag_of_lattice(fig1)


@pytest.fixture(scope="session")
def ts332():
    return timeseries_lattice(SeriesSpec(3, 3, 2))


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
