import pytest

import support


@pytest.fixture
def workspace(tmp_path):
    from glyphscore.workspace import Workspace

    return Workspace(tmp_path / "ws").ensure()


@pytest.fixture
def seeded_workspace(tmp_path):
    return support.seed_workspace(tmp_path / "ws")
