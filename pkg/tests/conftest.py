import pathlib

import pytest
from hypothesis import settings

from ttlam import Graph, GraphSelfMap, parse_map_path

settings.register_profile("suite", deadline=None, max_examples=60)
settings.load_profile("suite")

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def rose2():
    return Graph.build(["v"], [("a", "v", "v"), ("b", "v", "v")])


@pytest.fixture(scope="session")
def rose3():
    return Graph.build(["v"], [("a", "v", "v"), ("b", "v", "v"), ("c", "v", "v")])


@pytest.fixture(scope="session")
def fib(rose2):
    return GraphSelfMap.build(rose2, {"a": "a b", "b": "a"})


@pytest.fixture(scope="session")
def trib(rose3):
    return GraphSelfMap.build(rose3, {"a": "b", "b": "c", "c": "a b"})


@pytest.fixture(scope="session")
def trib_inv(rose3):
    return GraphSelfMap.build(rose3, {"a": "c a~", "b": "a", "c": "b"})


@pytest.fixture(scope="session")
def reducible(rose3):
    return GraphSelfMap.build(rose3, {"a": "a b", "b": "a", "c": "c a b"})


@pytest.fixture(scope="session")
def theta():
    # two vertices, no loops: exercises nontrivial vertex images
    g = Graph.build(["u", "w"], [("p", "u", "w"), ("q", "u", "w"), ("r", "u", "w")])
    return g


@pytest.fixture(scope="session")
def fixture_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def all_maps(fib, trib, trib_inv, reducible):
    return {"fib": fib, "trib": trib, "trib_inv": trib_inv, "reducible": reducible}


@pytest.fixture(scope="session")
def map_files(fixture_dir):
    return {
        name: parse_map_path(fixture_dir / f"{name}.tt")
        for name in ("tribonacci", "tribonacci-inv", "fibonacci", "reducible")
    }
