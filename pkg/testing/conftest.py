# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

import os
import sys

import pytest

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if ROOT not in sys.path:
    sys.path.insert(0, ROOT)

from core.realctx import RealCtx  # noqa: E402


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: desk-scale scans, deselect with -m 'not slow'")


@pytest.fixture
def ctx():
    return RealCtx(192)


@pytest.fixture
def ctx256():
    return RealCtx(256)
