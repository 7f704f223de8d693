"""Python interface to the pcsp-topo C++ library."""

import json

from ._core import *  # noqa: F401,F403
from ._core import PcspError, run_suite_json

__all__ = [name for name in dir() if not name.startswith("_")]


def run_suite(name="all", jobs=1, y2_fault=False):
    """Run a verification suite and return the report as a dict."""
    return json.loads(run_suite_json(name, jobs, y2_fault))
