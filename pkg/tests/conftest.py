"""Shared fixtures: desk-profile families are built once per session."""

from __future__ import annotations

import pytest

from freelac import build_family


@pytest.fixture(scope="session")
def desk2_family():
    return build_family(2, (8, 16), "desk")


@pytest.fixture(scope="session")
def desk4_family():
    return build_family(4, (8, 12), "desk")
