import os

import pytest


def pytest_collection_modifyitems(config, items):
    if os.environ.get("TIEDMONOIDS_SLOW") == "1":
        return
    skip = pytest.mark.skip(reason="set TIEDMONOIDS_SLOW=1 to run the slow checks")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)
