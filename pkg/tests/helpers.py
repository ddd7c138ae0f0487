# Copyright 2024 Canonical Ltd.
# See LICENSE file for licensing details.
import json
import tempfile
from os.path import exists
from typing import Any, Dict, Optional, Tuple

from cli import main

RESOURCES = "tests/unit/resources"


def run_cli(*argv: str, timestamp: bool = False) -> Tuple[int, Optional[Dict[str, Any]]]:
    """Run the command line with the report written to a temporary file.

    Returns the exit code and the parsed report, None when no report was written.
    """
    with tempfile.TemporaryDirectory() as tmp_dir:
        out = f"{tmp_dir}/report.json"
        flags = ["--out", out] + ([] if timestamp else ["--no-timestamp"])
        code = main(flags + list(argv))
        if not exists(out):
            return code, None

        with open(out, "r") as f:
            return code, json.load(f)


def raw_report(*argv: str) -> str:
    """The report text of a run without timestamp."""
    with tempfile.TemporaryDirectory() as tmp_dir:
        out = f"{tmp_dir}/report.json"
        main(["--out", out, "--no-timestamp"] + list(argv))
        with open(out, "r") as f:
            return f.read()
