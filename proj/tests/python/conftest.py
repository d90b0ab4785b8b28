# SPDX-License-Identifier: Apache-2.0
import os
import shutil
from pathlib import Path

import pytest


@pytest.fixture(scope="session")
def cli():
    """Path to the fsorf executable, from $FSORF_CLI or the PATH."""
    path = os.environ.get("FSORF_CLI") or shutil.which("fsorf")
    if not path or not Path(path).exists():
        pytest.skip("fsorf executable not available (set FSORF_CLI)")
    return path
