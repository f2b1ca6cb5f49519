import pytest

import multiholo as mh


def pytest_addoption(parser):
    parser.addoption(
        "--runslow",
        action="store_true",
        default=False,
        help="run long-running checks (order-8 oracle, order-63 quotients, order-605 screen)",
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


class Pipeline:
    """Memoizes the expensive per-group artifacts across test modules."""

    def __init__(self):
        self._groups = {}
        self._auts = {}
        self._hols = {}
        self._triplets = {}
        self._entries = {}
        self._tgroups = {}

    def group(self, name):
        if name not in self._groups:
            self._groups[name] = mh.build_catalog_group(name)
        return self._groups[name]

    def aut(self, name):
        if name not in self._auts:
            self._auts[name] = mh.automorphism_group(self.group(name))
        return self._auts[name]

    def hol(self, name):
        if name not in self._hols:
            self._hols[name] = mh.build_holomorph(self.group(name), self.aut(name))
        return self._hols[name]

    def triplets(self, name):
        if name not in self._triplets:
            self._triplets[name] = mh.enumerate_regular_triplets(
                self.group(name), self.aut(name)
            )
        return self._triplets[name]

    def entries(self, name):
        if name not in self._entries:
            self._entries[name] = mh.normal_regular_subgroups(
                self.group(name), self.aut(name), self.hol(name), self.triplets(name)
            )
        return self._entries[name]

    def tgroup(self, name):
        if name not in self._tgroups:
            self._tgroups[name] = mh.t_group(
                self.group(name), self.aut(name), self.hol(name), self.entries(name)
            )
        return self._tgroups[name]


@pytest.fixture(scope="session")
def pipeline():
    return Pipeline()
