import csv
import io
import logging

import pytest


@pytest.fixture
def read_csv():
    """Parses csv text into a list of dict rows."""
    def parse(text):
        return list(csv.DictReader(io.StringIO(text)))
    return parse


@pytest.fixture(autouse=True)
def restore_logging():
    """main() reconfigures the root logger; put it back after each test."""
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)
