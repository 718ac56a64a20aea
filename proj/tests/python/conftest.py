import os
import shutil
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[2]


@pytest.fixture(scope="session")
def cli():
    path = os.environ.get("DCOV_CLI") or shutil.which("dcov")
    if not path:
        candidate = ROOT / "build" / "tools" / "dcov"
        path = str(candidate) if candidate.exists() else None
    if not path:
        pytest.skip("dcov executable not found; set DCOV_CLI")
    return path


@pytest.fixture(scope="session")
def schema_dir():
    return Path(os.environ.get("DCOV_SCHEMAS", ROOT / "schemas"))
