import json
import os
import pathlib
import subprocess

import pytest


@pytest.fixture
def cli():
    exe = os.environ.get("ORFD_CLI")
    if not exe:
        pytest.skip("ORFD_CLI is not set")

    def run(*args):
        return subprocess.run([exe, *map(str, args)], capture_output=True, text=True)

    return run


@pytest.fixture
def schema():
    root = pathlib.Path(os.environ.get("ORFD_SCHEMA_DIR", pathlib.Path(__file__).parents[2] / "docs" / "schemas"))

    def load(command):
        return json.loads((root / f"{command}-summary.schema.json").read_text())

    return load


@pytest.fixture
def config_dir():
    return pathlib.Path(os.environ.get("ORFD_CONFIG_DIR", pathlib.Path(__file__).parents[2] / "configs"))
