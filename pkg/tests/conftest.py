import pathlib

import pytest

from runningexample import running_example

GOLDEN = pathlib.Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def example_log():
    return running_example()


@pytest.fixture(scope="session")
def golden_json() -> bytes:
    return (GOLDEN / "running-example.jsonocel").read_bytes()


@pytest.fixture(scope="session")
def golden_xml() -> bytes:
    return (GOLDEN / "running-example.xmlocel").read_bytes()


@pytest.fixture(scope="session")
def golden_json_path() -> str:
    return str(GOLDEN / "running-example.jsonocel")
