import json
from importlib import resources

import pytest

from phasemols import build_field

from oracles import PolyField


def _fixture(name):
    return json.loads(resources.files("phasemols").joinpath("fixtures", f"{name}.json").read_text())


@pytest.fixture(scope="session")
def gf4():
    return build_field(2, 2)


@pytest.fixture(scope="session")
def gf8():
    return build_field(2, 3)


@pytest.fixture(scope="session")
def gf9():
    return build_field(3, 2)


@pytest.fixture(scope="session")
def qubits3():
    return _fixture("three_qubits")


@pytest.fixture(scope="session")
def qutrits2():
    return _fixture("two_qutrits")


@pytest.fixture(scope="session")
def hall_fx():
    return _fixture("hall")


@pytest.fixture(scope="session")
def qubits2():
    return _fixture("two_qubits")


def poly_field(F):
    return PolyField(F.p, F.n, F.spec.poly)


# -- acceptance summary ----------------------------------------------------

_criteria = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when != "call" and not report.failed:
        return
    name = report.nodeid.split("::test_criterion_")[1]
    number = int(name.split("_")[0])
    entry = _criteria.setdefault(number, {"passed": True, "failed": []})
    if report.failed:
        entry["passed"] = False
        entry["failed"].append(name)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        status = "PASS" if entry["passed"] else "FAIL"
        detail = "" if entry["passed"] else "  (" + ", ".join(entry["failed"]) + ")"
        terminalreporter.write_line(f"criterion {number}: {status}{detail}")
