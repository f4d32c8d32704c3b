import sys
from pathlib import Path

import pytest

from ptower.io import load_tower

DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture
def fig7():
    return load_tower(DATA / "fig7.tower")


@pytest.fixture
def fig10():
    return load_tower(DATA / "fig10.tower")


@pytest.fixture
def data_dir():
    return DATA


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.SUMMARY:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(mod.SUMMARY, key=lambda k: int(k[2:])):
        terminalreporter.write_line(mod.SUMMARY[name])
