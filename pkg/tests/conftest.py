from __future__ import annotations

import pytest

from metarepair.verify import available


def pytest_collection_modifyitems(config, items):
    if available():
        return
    skip = pytest.mark.skip(reason="no Java toolchain (javac on PATH, or jdk4py with Janino)")
    for item in items:
        if "java" in item.keywords:
            item.add_marker(skip)
